//! Brute-force splitting: enumerate the geometric points of `M` above a
//! place, group them into Frobenius orbits and read off `D`, `I` and the
//! Frobenius coset from the action of `G` on points.
//!
//! Points are described in local coordinates on which `G` acts visibly:
//! - Kummer `y^n = u pi^v` with `d = gcd(n, v)`: `w = y^(n/d) pi^(-v/d)`
//!   satisfies `w^d = u`, and `y -> zeta_n^j y` sends `w` to `zeta_d^j w`;
//! - Artin-Schreier at a regular place: the `p` roots of `Y^p - Y = f(x0)`;
//!   at a pole the single branch point;
//! - constants: the roots of the defining irreducible, moved by powers of
//!   the `q`-Frobenius.
//!
//! Tuples of component coordinates are the points of the fibre product,
//! which is normal over `P` as long as the ramified components have
//! pairwise coprime ramification indices. Other fibres are reported as
//! singular and skipped.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::algebra::{roots, Embedding, FieldElement, FieldRef, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::function_field::{Place, RationalFunction};

use super::cover::{Component, Cover};
use super::group::{GroupElement, Subset};
use super::splitting::FrobeniusData;

/// A geometric point above `P`: the `x`-coordinate (absent at infinity)
/// and one local coordinate per component (`None` for a branch point).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Option<FieldElement>,
    pub coords: Vec<Option<FieldElement>>,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Option<FieldElement>| c.as_ref().map_or("*".to_string(), |c| c.to_string());
        let coords: Vec<String> = self.coords.iter().map(show).collect();
        let x = self.x.as_ref().map_or("inf".to_string(), |x| x.to_string());
        write!(f, "x={x}; {}", coords.join(", "))
    }
}

/// One place of `M` above `P`, found as a Frobenius orbit of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePlace {
    /// Smallest point of the orbit, used as a label.
    pub representative: String,
    /// `deg_k(Q)`: the orbit length under the `q`-Frobenius.
    pub degree: u64,
    pub decomposition: Subset,
    pub inertia: Subset,
    pub frobenius: Subset,
}

#[derive(Debug, Clone)]
pub struct OracleFiber {
    pub place: Place,
    pub places: Vec<OraclePlace>,
}

impl OracleFiber {
    /// Differences from the closed-form data; empty when they agree on
    /// `e`, `f`, the number of places, `deg_k(Q)`, `I` and the Frobenius
    /// coset (and `D`) at every place above.
    pub fn disagreements(&self, data: &FrobeniusData) -> Vec<String> {
        let mut out = Vec::new();
        if self.places.len() as u64 != data.places_above {
            out.push(format!(
                "places above: oracle {} vs formula {}",
                self.places.len(),
                data.places_above
            ));
        }
        for q in &self.places {
            let e = q.inertia.len() as u64;
            let f = q.decomposition.len() as u64 / e.max(1);
            let label = &q.representative;
            if e != data.ramification_index {
                out.push(format!(
                    "{label}: e oracle {e} vs formula {}",
                    data.ramification_index
                ));
            }
            if f != data.residue_degree {
                out.push(format!(
                    "{label}: f oracle {f} vs formula {}",
                    data.residue_degree
                ));
            }
            if q.degree != data.degree_above {
                out.push(format!(
                    "{label}: deg oracle {} vs formula {}",
                    q.degree, data.degree_above
                ));
            }
            if q.inertia != data.inertia {
                out.push(format!("{label}: inertia groups differ"));
            }
            if q.decomposition != data.decomposition {
                out.push(format!("{label}: decomposition groups differ"));
            }
            if q.frobenius != data.frobenius {
                out.push(format!("{label}: Frobenius cosets differ"));
            }
        }
        out
    }
}

/// How one group generator moves a coordinate.
enum Action {
    /// `w -> zeta^j w`.
    Scale(FieldElement),
    /// `y -> y + j`.
    Translate,
    /// `c -> c^(q^j)`.
    Frobenius,
}

/// Enumerates the places of `M` above `place`. `limit` bounds the number of
/// point/group-element pairs examined.
// Points order by coordinates only; the field handle inside is never part of the key.
#[allow(clippy::mutable_key_type)]
pub fn places_above_oracle(cover: &Cover, place: &Place, limit: u64) -> Result<OracleFiber> {
    let base = cover.base();
    let group = cover.group();
    let deg = place.degree();

    check_normal_fibre(cover, place)?;

    let residue = FiniteField::standard(base.characteristic(), base.degree() * deg)?;
    let xs: Vec<Option<FieldElement>> = match place {
        Place::Infinity => vec![None],
        Place::Finite(pi) => roots(&Embedding::new(base, &residue)?.apply_poly(pi))
            .into_iter()
            .map(Some)
            .collect(),
    };
    let q = base.order();

    // each coordinate lives in its own extension, large enough for the
    // Frobenius orbits of that component
    let charts = cover
        .components()
        .iter()
        .map(|c| Chart::new(c, base, &residue, place, deg))
        .collect::<Result<Vec<_>>>()?;

    let mut points: BTreeSet<Point> = BTreeSet::new();
    for x in &xs {
        let mut partial: Vec<Vec<Option<FieldElement>>> = vec![Vec::new()];
        for (c, chart) in cover.components().iter().zip(&charts) {
            let options = chart.coordinates(c, place, x.as_ref())?;
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        let work = (partial.len() as u128) * (xs.len() as u128) * group.order() as u128;
        if work > limit as u128 {
            return Err(Error::EnumerationTooLarge {
                requested: work.to_string(),
                limit,
            });
        }
        points.extend(partial.into_iter().map(|coords| Point {
            x: x.clone(),
            coords,
        }));
    }

    let act = |g: &GroupElement, pt: &Point| -> Point {
        let coords = pt
            .coords
            .iter()
            .zip(&charts)
            .zip(&g.0)
            .map(|((c, chart), &j)| {
                c.as_ref().map(|c| match &chart.action {
                    Action::Scale(zeta) => c * &zeta.pow(j as u128),
                    Action::Translate => c + &FieldElement::from_u64(c.field(), j),
                    Action::Frobenius => c.pow(q.pow(j as u32)),
                })
            })
            .collect();
        Point {
            x: pt.x.clone(),
            coords,
        }
    };
    let frob = |pt: &Point| Point {
        x: pt.x.as_ref().map(|x| x.pow(q)),
        coords: pt
            .coords
            .iter()
            .map(|c| c.as_ref().map(|c| c.pow(q)))
            .collect(),
    };

    let elements = group.elements();
    let mut places = Vec::new();
    let mut remaining = points;
    while let Some(start) = remaining.iter().next().cloned() {
        let mut orbit = BTreeSet::new();
        let mut cur = start.clone();
        while orbit.insert(cur.clone()) {
            cur = frob(&cur);
        }
        let mut target = start.clone();
        for _ in 0..deg {
            target = frob(&target);
        }
        let mut decomposition = Subset::new();
        let mut inertia = Subset::new();
        let mut frobenius = Subset::new();
        for g in &elements {
            let moved = act(g, &start);
            if orbit.contains(&moved) {
                decomposition.insert(g.clone());
            }
            if moved == start {
                inertia.insert(g.clone());
            }
            if moved == target {
                frobenius.insert(g.clone());
            }
        }
        for pt in &orbit {
            remaining.remove(pt);
        }
        places.push(OraclePlace {
            representative: start.to_string(),
            degree: orbit.len() as u64,
            decomposition,
            inertia,
            frobenius,
        });
    }
    Ok(OracleFiber {
        place: place.clone(),
        places,
    })
}

fn kummer_gcd(n: u64, f: &RationalFunction, place: &Place) -> u64 {
    let v = f.valuation(place).expect("nonzero");
    n.gcd(&v.unsigned_abs())
}

/// The local ramification index of each component at `place`, read off
/// the equations; more than one nontrivial index sharing a factor makes
/// the fibre product non-normal there.
fn check_normal_fibre(cover: &Cover, place: &Place) -> Result<()> {
    let indices: Vec<u64> = cover
        .components()
        .iter()
        .map(|c| match c {
            Component::Kummer { n, f, .. } => n / kummer_gcd(*n, f, place),
            Component::ArtinSchreier { f, .. } => {
                if f.valuation(place).is_some_and(|v| v < 0) {
                    f.field().characteristic()
                } else {
                    1
                }
            }
            Component::Constant { .. } => 1,
        })
        .filter(|&e| e > 1)
        .collect();
    for (i, a) in indices.iter().enumerate() {
        for b in &indices[i + 1..] {
            if a.gcd(b) != 1 {
                return Err(Error::SingularModelPoint(format!(
                    "{place}: components ramify jointly"
                )));
            }
        }
    }
    Ok(())
}

struct Chart {
    field: FieldRef,
    constants: Embedding,
    /// From the residue field of `P`; absent at infinity.
    residue: Option<Embedding>,
    action: Action,
}

impl Chart {
    fn new(
        c: &Component,
        base: &FieldRef,
        residue: &FieldRef,
        place: &Place,
        deg: usize,
    ) -> Result<Self> {
        let field = FiniteField::standard(
            base.characteristic(),
            base.degree() * deg * c.order() as usize,
        )?;
        let constants = Embedding::new(base, &field)?;
        let action = match c {
            Component::Kummer { n, f, .. } => {
                let d = kummer_gcd(*n, f, place);
                let zeta = base.root_of_unity(*n)?;
                Action::Scale(constants.apply(&zeta).pow((n / d) as u128))
            }
            Component::ArtinSchreier { .. } => Action::Translate,
            Component::Constant { .. } => Action::Frobenius,
        };
        let residue = match place {
            Place::Infinity => None,
            Place::Finite(_) => Some(Embedding::new(residue, &field)?),
        };
        Ok(Chart {
            field,
            constants,
            residue,
            action,
        })
    }

    /// Value at `x` (a root of `pi`, or infinity) of a function regular
    /// there.
    fn value_at(
        &self,
        g: &RationalFunction,
        place: &Place,
        x: Option<&FieldElement>,
    ) -> Result<FieldElement> {
        match (x, &self.residue) {
            (Some(x), Some(residue)) => {
                let x = residue.apply(x);
                let num = self.constants.apply_poly(g.num()).eval(&x);
                let den = self.constants.apply_poly(g.den()).eval(&x);
                num.try_div(&den)
            }
            _ => Ok(self.constants.apply(&g.evaluate(place)?)),
        }
    }

    fn coordinates(
        &self,
        c: &Component,
        place: &Place,
        x: Option<&FieldElement>,
    ) -> Result<Vec<Option<FieldElement>>> {
        let t = Poly::x(&self.field);
        Ok(match c {
            Component::Kummer { n, f, .. } => {
                let v = f.valuation(place).expect("nonzero");
                let d = kummer_gcd(*n, f, place);
                let uniformizer = match place {
                    Place::Finite(pi) => RationalFunction::from_poly(pi.clone()),
                    Place::Infinity => RationalFunction::x(f.field()).inv()?,
                };
                let unit = f.mul(&uniformizer.pow(-v)?);
                let u = self.value_at(&unit, place, x)?;
                let eq = &t.pow(d) - &Poly::constant(u);
                roots(&eq).into_iter().map(Some).collect()
            }
            Component::ArtinSchreier { f, .. } => {
                if f.valuation(place).is_some_and(|v| v < 0) {
                    vec![None]
                } else {
                    let p = self.field.characteristic();
                    let c = self.value_at(f, place, x)?;
                    let eq = &(&t.pow(p) - &t) - &Poly::constant(c);
                    roots(&eq).into_iter().map(Some).collect()
                }
            }
            Component::Constant { modulus, .. } => roots(&self.constants.apply_poly(modulus))
                .into_iter()
                .map(Some)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_ENUMERATION_LIMIT;
    use crate::covers::{make_cover, splitting_data, CoverDescriptor};
    use crate::function_field::places_up_to_degree;

    fn f5() -> FieldRef {
        FiniteField::prime(5).unwrap()
    }

    fn poly_fn(k: &FieldRef, c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_i64s(k, c))
    }

    fn degrees(cover: &Cover, place: &Place) -> Vec<u64> {
        places_above_oracle(cover, place, DEFAULT_ENUMERATION_LIMIT)
            .unwrap()
            .places
            .iter()
            .map(|q| q.degree)
            .collect()
    }

    #[test]
    fn quadratic_examples() {
        let k = f5();
        let cover = make_cover(
            &k,
            &CoverDescriptor::Kummer {
                n: 2,
                f: poly_fn(&k, &[0, 1]),
            },
        )
        .unwrap();
        let split = Place::finite(Poly::from_i64s(&k, &[-1, 1])).unwrap();
        assert_eq!(degrees(&cover, &split), vec![1, 1]);
        let inert = Place::finite(Poly::from_i64s(&k, &[-2, 1])).unwrap();
        assert_eq!(degrees(&cover, &inert), vec![2]);
    }

    #[test]
    fn artin_schreier_split_at_zero() {
        let k = f5();
        let cover = make_cover(
            &k,
            &CoverDescriptor::ArtinSchreier {
                f: RationalFunction::x(&k),
            },
        )
        .unwrap();
        let zero = Place::finite(Poly::x(&k)).unwrap();
        assert_eq!(degrees(&cover, &zero), vec![1; 5]);
    }

    #[test]
    fn agrees_with_closed_form() {
        let k = f5();
        let descriptors = [
            CoverDescriptor::Kummer {
                n: 2,
                f: poly_fn(&k, &[0, 1, 0, 1]),
            },
            CoverDescriptor::Kummer {
                n: 4,
                f: poly_fn(&k, &[0, 0, 1, 1]),
            },
            CoverDescriptor::ArtinSchreier {
                f: poly_fn(&k, &[0, 0, 0, 1]),
            },
            CoverDescriptor::Composite(vec![
                CoverDescriptor::Kummer {
                    n: 2,
                    f: poly_fn(&k, &[0, 1]),
                },
                CoverDescriptor::Constant { m: 2 },
            ]),
            CoverDescriptor::Composite(vec![
                CoverDescriptor::Kummer {
                    n: 4,
                    f: poly_fn(&k, &[2, 0, 1]),
                },
                CoverDescriptor::ArtinSchreier {
                    f: poly_fn(&k, &[0, 1, 1]),
                },
            ]),
        ];
        for d in &descriptors {
            let cover = make_cover(&k, d).unwrap();
            for place in places_up_to_degree(&k, 2, 1000).unwrap() {
                let data = splitting_data(&cover, &place).unwrap();
                let fiber = places_above_oracle(&cover, &place, DEFAULT_ENUMERATION_LIMIT).unwrap();
                assert_eq!(
                    fiber.disagreements(&data),
                    Vec::<String>::new(),
                    "{d} at {place}"
                );
            }
        }
    }

    #[test]
    fn joint_ramification_is_skipped() {
        let k = f5();
        let cover = make_cover(
            &k,
            &CoverDescriptor::Composite(vec![
                CoverDescriptor::Kummer {
                    n: 2,
                    f: RationalFunction::x(&k),
                },
                CoverDescriptor::Kummer {
                    n: 2,
                    f: poly_fn(&k, &[0, -1, 1]),
                },
            ]),
        )
        .unwrap();
        let zero = Place::finite(Poly::x(&k)).unwrap();
        assert!(matches!(
            places_above_oracle(&cover, &zero, DEFAULT_ENUMERATION_LIMIT),
            Err(Error::SingularModelPoint(_))
        ));
    }
}
