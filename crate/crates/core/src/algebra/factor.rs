//! Factorization over finite fields: squarefree split, distinct-degree
//! split, then randomized equal-degree splitting (Cantor-Zassenhaus).

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::field::{FieldElement, FieldRef};
use super::poly::Poly;

/// Seed used when the caller does not pick one. The factorization itself is
/// canonical; the seed only affects which random splittings are tried.
pub const DEFAULT_SEED: u64 = 0x5eed;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Sets the seed used by [`poly_factor`] and [`roots`] in this process.
/// Results do not change, only the random splittings tried on the way.
pub fn set_default_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn default_seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Default cap on the number of candidates an enumeration may visit.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies everything back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m as u64)
            })
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    poly_factor_seeded(f, default_seed())
}

pub fn poly_factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    let unit = f.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` of
/// pairwise coprime squarefree `g` with `f = prod g^i`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root_poly(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// For `f(x) = g(x^p)`, returns `h` with `h^p = f`.
fn pth_root_poly(f: &Poly) -> Poly {
    let p = f.field().characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(FieldElement::pth_root)
        .collect();
    Poly::new(f.field(), coeffs)
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree: pairs `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(&field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, deg));
    }
    out
}

fn random_poly(field: &FieldRef, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let order = field.order();
    let coeffs = (0..below)
        .map(|_| FieldElement::from_index(field, rng.gen_range(0..order)))
        .collect();
    Poly::new(field, coeffs)
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = BigUint::from(field.order());
    let p = field.characteristic();
    let exponent = (q.pow(d as u32) - BigUint::one()) >> 1;
    let one = Poly::one(&field);
    loop {
        let a = random_poly(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace of F_{2^(kd)} applied to a
            let mut acc = a.rem(f).expect("nonzero");
            let mut term = acc.clone();
            for _ in 1..field.degree() * d {
                term = term.mul_mod(&term, f);
                acc = &acc + &term;
            }
            acc
        } else {
            &a.pow_mod_big(&exponent, f) - &one
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g);
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Distinct roots in the coefficient field, in index order.
pub fn roots(f: &Poly) -> Vec<FieldElement> {
    roots_seeded(f, default_seed())
}

pub fn roots_seeded(f: &Poly, seed: u64) -> Vec<FieldElement> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field().clone();
    let f = f.monic();
    let x = Poly::x(&field);
    let split = f.gcd(&(&x.pow_mod(field.order(), &f) - &x));
    if split.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FieldElement> = equal_degree(&split, 1, &mut rng)
        .into_iter()
        .map(|l| -&l.coeff(0))
        .collect();
    out.sort();
    out
}

/// The number `q^d` of monic polynomials of degree `d`, if within `limit`.
fn monic_count(field: &FieldRef, d: usize, limit: u64) -> Result<u128> {
    let q = BigUint::from(field.order());
    let total = q.pow(d as u32);
    if total > BigUint::from(limit) {
        return Err(Error::EnumerationTooLarge {
            requested: total.to_string(),
            limit,
        });
    }
    Ok(u128::try_from(total).expect("bounded by limit"))
}

/// All monic irreducible polynomials of degree `d`, in canonical order.
pub fn irreducibles_of_degree(field: &FieldRef, d: usize, limit: u64) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::Config("degree must be positive".into()));
    }
    let total = monic_count(field, d, limit)?;
    let mut out: Vec<Poly> = if d == 1 {
        field.elements().map(|a| Poly::linear(&a)).collect()
    } else {
        let q = field.order();
        (0..total)
            .map(|mut i| {
                let mut coeffs: Vec<FieldElement> = (0..d)
                    .map(|_| {
                        let c = FieldElement::from_index(field, i % q);
                        i /= q;
                        c
                    })
                    .collect();
                coeffs.push(FieldElement::one(field));
                Poly::new(field, coeffs)
            })
            .filter(|g| !g.coeff(0).is_zero() && g.is_irreducible())
            .collect()
    };
    out.sort();
    Ok(out)
}

/// A monic irreducible of degree `d` found by seeded random search.
pub fn find_irreducible(field: &FieldRef, d: usize, seed: u64) -> Poly {
    if d == 1 {
        return Poly::x(field);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = &random_poly(field, d, &mut rng) + &Poly::monomial(field, d);
        if candidate.is_irreducible() {
            return candidate;
        }
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `d` over `F_q`:
/// `(1/d) sum_{e | d} mu(e) q^(d/e)`.
pub fn irreducible_count(q: u64, d: u64) -> BigUint {
    assert!(d > 0);
    let q = BigUint::from(q);
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let term = q.pow((d / e) as u32);
        match mobius(e) {
            1 => plus += term,
            -1 => minus += term,
            _ => {}
        }
    }
    (plus - minus) / BigUint::from(d)
}
