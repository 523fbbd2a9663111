//! Validated abelian covers `M/K` built from Kummer, Artin-Schreier and
//! constant-field pieces.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{find_irreducible, FieldElement, FieldRef, Poly};
use crate::error::{Error, Result};
use crate::function_field::{Place, RationalFunction};

use super::group::{AbelianGroup, GroupElement, Subset};

/// Unvalidated description of a cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoverDescriptor {
    /// `y^n = f`.
    Kummer { n: u64, f: RationalFunction },
    /// `y^p - y = f`.
    ArtinSchreier { f: RationalFunction },
    /// `F_{q^m}(x)`.
    Constant { m: u64 },
    /// Compositum of linearly disjoint pieces.
    Composite(Vec<CoverDescriptor>),
}

impl fmt::Display for CoverDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDescriptor::Kummer { n, f: g } => write!(f, "kummer:{n}:{g}"),
            CoverDescriptor::ArtinSchreier { f: g } => write!(f, "as:{g}"),
            CoverDescriptor::Constant { m } => write!(f, "const:{m}"),
            CoverDescriptor::Composite(parts) => {
                let inner: Vec<String> = parts.iter().map(|c| c.to_string()).collect();
                write!(f, "compose:[{}]", inner.join(","))
            }
        }
    }
}

/// One validated piece of a cover. Its automorphism group is cyclic:
/// `Z/n` acting by `y -> zeta_n^a y`, `Z/p` acting by `y -> y + a`, or
/// `Z/m` acting by the `a`-th power of the `q`-Frobenius on `F_{q^m}`.
#[derive(Clone, Debug)]
pub enum Component {
    Kummer {
        n: u64,
        f: RationalFunction,
        /// Places where `v_P(f) != 0`.
        support: Vec<(Place, i64)>,
    },
    ArtinSchreier {
        /// Standard form: every pole has order prime to `p`.
        f: RationalFunction,
        original: RationalFunction,
        poles: Vec<(Place, i64)>,
    },
    Constant {
        m: u64,
        /// An irreducible of degree `m` over `F_q`; its roots generate the
        /// constant field.
        modulus: Poly,
    },
}

impl Component {
    pub fn order(&self) -> u64 {
        match self {
            Component::Kummer { n, .. } => *n,
            Component::ArtinSchreier { f, .. } => f.field().characteristic(),
            Component::Constant { m, .. } => *m,
        }
    }

    pub fn is_geometric(&self) -> bool {
        !matches!(self, Component::Constant { .. })
    }
}

/// A finite abelian extension `M` of `K = F_q(x)` with automorphism group
/// `G = prod Z/n_i` (one factor per component), geometric part `N` and
/// constant field `F_{q^h}`.
#[derive(Clone, Debug)]
pub struct Cover {
    base: FieldRef,
    descriptor: CoverDescriptor,
    components: Vec<Component>,
    group: AbelianGroup,
    h: u64,
    /// Every nonzero `F_p`-combination of the Artin-Schreier components,
    /// in standard form.
    as_characters: Vec<(Vec<u64>, RationalFunction)>,
}

impl Cover {
    pub fn base(&self) -> &FieldRef {
        &self.base
    }

    /// Cardinality of the constant field `k`.
    pub fn q(&self) -> u64 {
        self.base.order() as u64
    }

    pub fn descriptor(&self) -> &CoverDescriptor {
        &self.descriptor
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `[M : K] = #G`.
    pub fn degree(&self) -> u64 {
        self.group.order()
    }

    /// `h = [k' : k]`.
    pub fn constant_degree(&self) -> u64 {
        self.h
    }

    /// `#N = #G / h`.
    pub fn geometric_order(&self) -> u64 {
        self.group.order() / self.h
    }

    pub(crate) fn as_characters(&self) -> &[(Vec<u64>, RationalFunction)] {
        &self.as_characters
    }

    /// `N`: the elements acting trivially on constants.
    pub fn geometric_subgroup(&self) -> Subset {
        self.group
            .elements()
            .into_iter()
            .filter(|g| self.quotient_image(g) == 0)
            .collect()
    }

    /// A lift of the Frobenius generator of `G/N = Gal(k'/k)`.
    pub fn frobenius_lift(&self) -> GroupElement {
        GroupElement(
            self.components
                .iter()
                .map(|c| u64::from(!c.is_geometric() && c.order() > 1))
                .collect(),
        )
    }

    /// The image of `g` in `G/N = Z/h`, with the Frobenius mapping to 1.
    pub fn quotient_image(&self, g: &GroupElement) -> u64 {
        // the constant components have pairwise coprime orders; combine by CRT
        let mut residue = 0u64;
        let mut modulus = 1u64;
        for (c, &a) in self.components.iter().zip(&g.0) {
            if let Component::Constant { m, .. } = c {
                let m = *m;
                let mut r = residue;
                while r % m != a % m {
                    r += modulus;
                }
                residue = r;
                modulus *= m;
            }
        }
        residue % self.h
    }

    /// The coset `F N` of elements whose restriction to `k'` is Frobenius.
    pub fn frobenius_coset(&self) -> Subset {
        let n = self.geometric_subgroup();
        self.group.coset(&self.frobenius_lift(), &n)
    }

    pub fn in_frobenius_coset(&self, g: &GroupElement) -> bool {
        self.group.contains(g) && self.quotient_image(g) == 1 % self.h
    }

    /// Fixed primitive `n`-th root of unity in `F_q` used to label the
    /// Kummer automorphisms.
    pub fn zeta(&self, n: u64) -> FieldElement {
        self.base
            .root_of_unity(n)
            .expect("validated: n divides q - 1")
    }
}

/// Validates a descriptor over `F_q` and populates `G`, `N`, `k'` and the
/// Frobenius coset.
pub fn make_cover(base: &FieldRef, descriptor: &CoverDescriptor) -> Result<Cover> {
    let mut flat = Vec::new();
    flatten(descriptor, &mut flat);
    if flat.is_empty() {
        return Err(Error::Config("composite cover without components".into()));
    }
    let components = flat
        .iter()
        .map(|d| make_component(base, d))
        .collect::<Result<Vec<_>>>()?;

    check_constants_disjoint(&components)?;
    check_kummer_disjoint(&components)?;
    let as_characters = artin_schreier_characters(base, &components)?;

    let group = AbelianGroup::new(components.iter().map(Component::order).collect());
    let h = components
        .iter()
        .filter(|c| !c.is_geometric())
        .map(Component::order)
        .product();
    Ok(Cover {
        base: base.clone(),
        descriptor: descriptor.clone(),
        components,
        group,
        h,
        as_characters,
    })
}

fn flatten(d: &CoverDescriptor, out: &mut Vec<CoverDescriptor>) {
    match d {
        CoverDescriptor::Composite(parts) => parts.iter().for_each(|p| flatten(p, out)),
        other => out.push(other.clone()),
    }
}

fn make_component(base: &FieldRef, d: &CoverDescriptor) -> Result<Component> {
    let q = base.order() as u64;
    let p = base.characteristic();
    match d {
        CoverDescriptor::Kummer { n, f } => {
            let n = *n;
            if n < 2 || n % p == 0 || !(q - 1).is_multiple_of(n) {
                return Err(Error::WildKummer { n, q });
            }
            if f.is_zero() {
                return Err(Error::NotGeometric("f = 0".into()));
            }
            let support = f.support()?;
            let g = support
                .iter()
                .fold(n, |acc, (_, v)| acc.gcd(&(v.unsigned_abs())));
            if g != 1 {
                return Err(Error::NotGeometric(format!(
                    "gcd of n = {n} and the valuations of {f} is {g}, so f is a power over the algebraic closure"
                )));
            }
            Ok(Component::Kummer {
                n,
                f: f.clone(),
                support,
            })
        }
        CoverDescriptor::ArtinSchreier { f } => {
            let reduced = reduce_artin_schreier(f)?;
            let poles = poles(&reduced)?;
            if poles.is_empty() {
                return Err(Error::NotReduced(format!(
                    "{f} is congruent to the constant {reduced} modulo y^p - y"
                )));
            }
            Ok(Component::ArtinSchreier {
                f: reduced,
                original: f.clone(),
                poles,
            })
        }
        CoverDescriptor::Constant { m } => {
            if *m == 0 {
                return Err(Error::Config(
                    "constant extension degree must be positive".into(),
                ));
            }
            Ok(Component::Constant {
                m: *m,
                modulus: find_irreducible(base, *m as usize, 0xc0ffee ^ *m),
            })
        }
        CoverDescriptor::Composite(_) => unreachable!("flattened"),
    }
}

fn poles(f: &RationalFunction) -> Result<Vec<(Place, i64)>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    Ok(f.support()?.into_iter().filter(|(_, v)| *v < 0).collect())
}

/// Brings `f` to standard form modulo `{w^p - w}`: afterwards no pole has
/// order divisible by `p`. Each step lowers a pole order, so this stops.
pub fn reduce_artin_schreier(f: &RationalFunction) -> Result<RationalFunction> {
    let field = f.field().clone();
    let p = field.characteristic() as i64;
    let mut f = f.clone();
    loop {
        let Some((place, v)) = poles(&f)?.into_iter().find(|(_, v)| v % p == 0) else {
            return Ok(f);
        };
        let j = (-v / p) as usize;
        let w = match &place {
            Place::Infinity => {
                let c = f.num().leading().expect("nonzero").clone();
                RationalFunction::from_poly(Poly::monomial(&field, j).scale(&c.pth_root()))
            }
            Place::Finite(pi) => {
                // leading coefficient of the principal part, as a class mod pi
                let pi_power = pi.pow((-v) as u64);
                let rest = f.den().div_exact(&pi_power);
                let order = field.order().pow(pi.degree().expect("nonzero") as u32);
                let rest_inv = rest.pow_mod(order - 2, pi);
                let unit = f.num().mul_mod(&rest_inv, pi);
                let root = unit.pow_mod(order / p as u128, pi);
                RationalFunction::new(root, pi.pow(j as u64))?
            }
        };
        let wp = w.pow(p)?;
        f = f.sub(&wp.sub(&w));
    }
}

fn check_constants_disjoint(components: &[Component]) -> Result<()> {
    let ms: Vec<u64> = components
        .iter()
        .filter(|c| !c.is_geometric())
        .map(Component::order)
        .collect();
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if a.gcd(b) != 1 {
                return Err(Error::NotDisjoint(format!(
                    "constant extensions of degrees {a} and {b} share a subfield"
                )));
            }
        }
    }
    Ok(())
}

/// Kummer pieces are geometrically disjoint iff no nontrivial combination
/// `prod f_i^(a_i L/n_i)` has all valuations divisible by `L = lcm n_i`.
fn check_kummer_disjoint(components: &[Component]) -> Result<()> {
    let kummer: Vec<(u64, &[(Place, i64)])> = components
        .iter()
        .filter_map(|c| match c {
            Component::Kummer { n, support, .. } => Some((*n, support.as_slice())),
            _ => None,
        })
        .collect();
    if kummer.len() < 2 {
        return Ok(());
    }
    let lcm = kummer.iter().fold(1u64, |acc, (n, _)| acc.lcm(n));
    let mut places: Vec<&Place> = kummer
        .iter()
        .flat_map(|(_, s)| s.iter().map(|(p, _)| p))
        .collect();
    places.sort();
    places.dedup();
    let valuation = |support: &[(Place, i64)], place: &Place| {
        support
            .iter()
            .find(|(p, _)| p == place)
            .map_or(0, |(_, v)| *v)
    };
    let group = AbelianGroup::new(kummer.iter().map(|(n, _)| *n).collect());
    for a in group.elements().into_iter().skip(1) {
        let collapses = places.iter().all(|place| {
            let total: i64 = kummer
                .iter()
                .zip(&a.0)
                .map(|((n, s), &ai)| ai as i64 * (lcm / n) as i64 * valuation(s, place))
                .sum();
            total.rem_euclid(lcm as i64) == 0
        });
        if collapses {
            return Err(Error::NotDisjoint(format!(
                "Kummer combination {a} is a perfect power"
            )));
        }
    }
    Ok(())
}

fn artin_schreier_characters(
    base: &FieldRef,
    components: &[Component],
) -> Result<Vec<(Vec<u64>, RationalFunction)>> {
    let fs: Vec<&RationalFunction> = components
        .iter()
        .filter_map(|c| match c {
            Component::ArtinSchreier { f, .. } => Some(f),
            _ => None,
        })
        .collect();
    let p = base.characteristic();
    let group = AbelianGroup::new(vec![p; fs.len()]);
    let mut out = Vec::new();
    for c in group.elements().into_iter().skip(1) {
        let combo = fs
            .iter()
            .zip(&c.0)
            .fold(RationalFunction::zero(base), |acc, (f, &ci)| {
                acc.add(&f.scale(&FieldElement::from_u64(base, ci)))
            });
        let reduced = reduce_artin_schreier(&combo)?;
        if poles(&reduced)?.is_empty() {
            return Err(Error::NotDisjoint(format!(
                "Artin-Schreier combination {c} is unramified everywhere"
            )));
        }
        out.push((c.0, reduced));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    fn f5() -> FieldRef {
        FiniteField::prime(5).unwrap()
    }

    fn poly_fn(field: &FieldRef, c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_i64s(field, c))
    }

    #[test]
    fn quadratic_kummer() {
        let k = f5();
        let cover = make_cover(
            &k,
            &CoverDescriptor::Kummer {
                n: 2,
                f: poly_fn(&k, &[0, 1]),
            },
        )
        .unwrap();
        assert_eq!(cover.degree(), 2);
        assert_eq!(cover.constant_degree(), 1);
        assert_eq!(cover.geometric_subgroup().len(), 2);
        assert_eq!(cover.frobenius_coset().len(), 2);
    }

    #[test]
    fn constant_cubic() {
        let k = f5();
        let cover = make_cover(&k, &CoverDescriptor::Constant { m: 3 }).unwrap();
        assert_eq!(cover.constant_degree(), 3);
        assert_eq!(cover.geometric_subgroup().len(), 1);
        let coset: Vec<_> = cover.frobenius_coset().into_iter().collect();
        assert_eq!(coset, vec![GroupElement(vec![1])]);
    }

    #[test]
    fn rejections() {
        let k = f5();
        let square = CoverDescriptor::Kummer {
            n: 2,
            f: poly_fn(&k, &[0, 0, 1]),
        };
        assert!(matches!(
            make_cover(&k, &square),
            Err(Error::NotGeometric(_))
        ));
        let wild = CoverDescriptor::Kummer {
            n: 5,
            f: poly_fn(&k, &[0, 1]),
        };
        assert!(matches!(
            make_cover(&k, &wild),
            Err(Error::WildKummer { .. })
        ));
        let not_dividing = CoverDescriptor::Kummer {
            n: 3,
            f: poly_fn(&k, &[0, 1]),
        };
        assert!(matches!(
            make_cover(&k, &not_dividing),
            Err(Error::WildKummer { .. })
        ));
        // x^5 - x is in the image of w -> w^5 - w
        let trivial = CoverDescriptor::ArtinSchreier {
            f: poly_fn(&k, &[0, -1, 0, 0, 0, 1]),
        };
        assert!(matches!(
            make_cover(&k, &trivial),
            Err(Error::NotReduced(_))
        ));
        let twice = CoverDescriptor::Composite(vec![
            CoverDescriptor::Constant { m: 2 },
            CoverDescriptor::Constant { m: 4 },
        ]);
        assert!(matches!(make_cover(&k, &twice), Err(Error::NotDisjoint(_))));
        let same = CoverDescriptor::Composite(vec![
            CoverDescriptor::Kummer {
                n: 2,
                f: poly_fn(&k, &[0, 1]),
            },
            CoverDescriptor::Kummer {
                n: 2,
                f: poly_fn(&k, &[0, 0, 0, 1]),
            },
        ]);
        assert!(matches!(make_cover(&k, &same), Err(Error::NotDisjoint(_))));
    }

    #[test]
    fn artin_schreier_reduction() {
        let k = f5();
        // x^5 + x^2 ~ x + x^2 (pole order 2 at infinity)
        let f = poly_fn(&k, &[0, 0, 1, 0, 0, 1]);
        let reduced = reduce_artin_schreier(&f).unwrap();
        assert_eq!(reduced, poly_fn(&k, &[0, 1, 1]));
        // 1/x^5 ~ 1/x at the finite pole
        let g =
            RationalFunction::new(Poly::one(&k), Poly::from_i64s(&k, &[0, 0, 0, 0, 0, 1])).unwrap();
        let reduced = reduce_artin_schreier(&g).unwrap();
        assert_eq!(reduced.valuation(&Place::Finite(Poly::x(&k))), Some(-1));
        // the difference is w^p - w for some w, so it keeps the cover
        let f3 = FiniteField::standard(3, 2).unwrap();
        let cube = RationalFunction::from_poly(Poly::monomial(&f3, 3));
        assert_eq!(
            reduce_artin_schreier(&cube).unwrap(),
            RationalFunction::x(&f3)
        );
    }

    #[test]
    fn composite_quotient_map() {
        let k = f5();
        let cover = make_cover(
            &k,
            &CoverDescriptor::Composite(vec![
                CoverDescriptor::Kummer {
                    n: 2,
                    f: poly_fn(&k, &[0, 1]),
                },
                CoverDescriptor::Constant { m: 2 },
                CoverDescriptor::Constant { m: 3 },
            ]),
        )
        .unwrap();
        assert_eq!(cover.constant_degree(), 6);
        assert_eq!(cover.geometric_order(), 2);
        assert_eq!(cover.quotient_image(&cover.frobenius_lift()), 1);
        assert_eq!(cover.quotient_image(&GroupElement(vec![1, 1, 2])), 5);
        assert_eq!(cover.frobenius_coset().len(), 2);
    }
}
