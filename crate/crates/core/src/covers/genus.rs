//! Riemann-Hurwitz genus of a cover over its constant field.

use num_integer::Integer;

use crate::error::{Error, Result};

use crate::function_field::Place;

use super::cover::{Component, Cover};

/// Kummer character counts above this are refused.
const MAX_KUMMER_CHARACTERS: u64 = 1 << 20;

/// `g_{k'}(M)` by the conductor-discriminant formula: with `N` the
/// geometric group, `2g - 2 = -2 #N + sum over characters chi of N of
/// deg f(chi)`. Constant components do not change the genus.
///
/// Characters of `N` are pairs `(a, c)` of a Kummer character and an
/// Artin-Schreier combination. At a place where the Artin-Schreier part
/// has a pole of order `m` in standard form the conductor exponent is
/// `m + 1` whatever `a` is; elsewhere it is 1 if the Kummer part ramifies
/// and 0 otherwise.
pub fn genus(cover: &Cover) -> Result<u64> {
    let kummer: Vec<(u64, &[(Place, i64)])> = cover
        .components()
        .iter()
        .filter_map(|c| match c {
            Component::Kummer { n, support, .. } => Some((*n, support.as_slice())),
            _ => None,
        })
        .collect();
    let kummer_chars = kummer
        .iter()
        .try_fold(1u64, |acc, (n, _)| acc.checked_mul(*n));
    let kummer_chars = match kummer_chars {
        Some(c) if c <= MAX_KUMMER_CHARACTERS => c,
        _ => {
            return Err(Error::UnsupportedGenus(format!(
                "{} has too many Kummer characters",
                cover.descriptor()
            )))
        }
    };
    let as_poles: Vec<Vec<(Place, i64)>> = cover
        .as_characters()
        .iter()
        .map(|(_, g)| Ok(g.support()?.into_iter().filter(|(_, v)| *v < 0).collect()))
        .collect::<Result<_>>()?;

    let mut places: Vec<&Place> = kummer
        .iter()
        .flat_map(|(_, s)| s.iter().map(|(p, _)| p))
        .chain(as_poles.iter().flatten().map(|(p, _)| p))
        .collect();
    places.sort_by_key(|p| p.to_string());
    places.dedup();

    let mut different: u64 = 0;
    for place in places {
        let valuations: Vec<i64> = kummer
            .iter()
            .map(|(_, s)| s.iter().find(|(q, _)| q == place).map_or(0, |(_, v)| *v))
            .collect();
        let ramified = kummer_chars - unramified_kummer_characters(&kummer, &valuations);
        let mut exponent = ramified;
        for poles in &as_poles {
            exponent += match poles.iter().find(|(q, _)| q == place) {
                Some((_, v)) => kummer_chars * (v.unsigned_abs() + 1),
                None => ramified,
            };
        }
        different += exponent * place.degree() as u64;
    }
    let order = kummer_chars * (cover.as_characters().len() as u64 + 1);
    let twice = different as i64 - 2 * order as i64 + 2;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as u64)
}

/// Characters `a` of `prod Z/n_i` with `sum a_i v_i / n_i` integral.
fn unramified_kummer_characters(kummer: &[(u64, &[(Place, i64)])], valuations: &[i64]) -> u64 {
    let l = kummer.iter().fold(1u64, |acc, (n, _)| acc.lcm(n)) as i64;
    let mut count = 0;
    let mut a = vec![0u64; kummer.len()];
    loop {
        let total: i64 = a
            .iter()
            .zip(kummer)
            .zip(valuations)
            .map(|((ai, (n, _)), v)| (*ai as i64 * v * (l / *n as i64)).rem_euclid(l))
            .sum();
        if total % l == 0 {
            count += 1;
        }
        // next vector in mixed radix
        let mut i = 0;
        loop {
            if i == a.len() {
                return count;
            }
            a[i] += 1;
            if a[i] < kummer[i].0 {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Poly};
    use crate::covers::{make_cover, CoverDescriptor};
    use crate::function_field::RationalFunction;

    #[test]
    fn examples() {
        let k = FiniteField::prime(5).unwrap();
        let poly = |c: &[i64]| RationalFunction::from_poly(Poly::from_i64s(&k, c));
        let g = |d: CoverDescriptor| genus(&make_cover(&k, &d).unwrap());
        assert_eq!(
            g(CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1])
            })
            .unwrap(),
            0
        );
        assert_eq!(
            g(CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1, 0, 1])
            })
            .unwrap(),
            1
        );
        assert_eq!(
            g(CoverDescriptor::ArtinSchreier {
                f: poly(&[0, 0, 0, 1])
            })
            .unwrap(),
            4
        );
        assert_eq!(g(CoverDescriptor::Constant { m: 3 }).unwrap(), 0);
        assert_eq!(
            g(CoverDescriptor::Kummer {
                n: 4,
                f: poly(&[0, 1])
            })
            .unwrap(),
            0
        );
        let two = CoverDescriptor::Composite(vec![
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1]),
            },
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[1, 1]),
            },
        ]);
        // Klein four: the genus is the sum over the three quadratic subfields
        assert_eq!(g(two).unwrap(), 0);
        let elliptic_pair = CoverDescriptor::Composite(vec![
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1, 0, 1]),
            },
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[2, 1]),
            },
        ]);
        // y^2 = x^3 + x, z^2 = x + 2 and (yz)^2 ~ x (x + 3): 1 + 0 + 0
        assert_eq!(g(elliptic_pair).unwrap(), 1);
        // Riemann-Hurwitz up the tower K < L = AS(x^3) < L(sqrt x): g(L) = 4,
        // and sqrt(x) ramifies at the 5 places of L over 0 and the one over inf
        let mixed = CoverDescriptor::Composite(vec![
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1]),
            },
            CoverDescriptor::ArtinSchreier {
                f: poly(&[0, 0, 0, 1]),
            },
        ]);
        assert_eq!(g(mixed).unwrap(), 10);
        let with_constant = CoverDescriptor::Composite(vec![
            CoverDescriptor::Kummer {
                n: 2,
                f: poly(&[0, 1, 0, 1]),
            },
            CoverDescriptor::Constant { m: 2 },
        ]);
        assert_eq!(g(with_constant).unwrap(), 1);
    }
}
