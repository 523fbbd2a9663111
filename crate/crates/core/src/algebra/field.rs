//! Prime and extension fields `F_{p^k} = F_p[t]/(modulus)` with elements in
//! the polynomial basis `1, t, ..., t^{k-1}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::Poly;

/// Fields with more elements than this are rejected; exponents are `u128`.
const MAX_ORDER_BITS: u32 = 120;

pub type FieldRef = Arc<FiniteField>;

/// A finite field `F_p[t]/(modulus)`.
///
/// The modulus is monic irreducible over `F_p` of degree `k`. For prime
/// fields it is `t`.
#[derive(Debug)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
    order: u128,
    primitive: OnceLock<Vec<u64>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

/// Serialized form of a field: characteristic, degree and modulus
/// coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, degree: usize) -> Result<u128> {
    let bits = 64 - p.leading_zeros();
    if degree == 0 || (bits as usize).saturating_mul(degree) > MAX_ORDER_BITS as usize {
        return Err(Error::FieldTooLarge { p, degree });
    }
    Ok((p as u128).pow(degree as u32))
}

fn standard_cache() -> &'static Mutex<HashMap<(u64, usize), FieldRef>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FieldRef>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldRef> {
        Self::standard(p, 1)
    }

    /// `F_{p^k}` with the modulus chosen by a seeded random search. The same
    /// `(p, k)` always returns the same (shared) field.
    pub fn standard(p: u64, k: usize) -> Result<FieldRef> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        checked_order(p, k)?;
        if let Some(f) = standard_cache().lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let field = if k == 1 {
            Arc::new(Self::raw(p, vec![0, 1]))
        } else {
            let prime = Self::prime(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(0x9e37_79b9) ^ (k as u64));
            loop {
                let mut coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(1);
                let candidate = Poly::from_u64s(&prime, &coeffs);
                if candidate.is_irreducible() {
                    break Arc::new(Self::raw(p, coeffs));
                }
            }
        };
        let mut cache = standard_cache().lock().unwrap();
        Ok(cache.entry((p, k)).or_insert(field).clone())
    }

    /// The standard field with `q` elements.
    pub fn of_order(q: u64) -> Result<FieldRef> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or(Error::NotPrime(q))?;
        let (mut rest, mut k) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::Config(format!("{q} is not a prime power")));
        }
        Self::standard(p, k)
    }

    /// `F_p[t]/(modulus)` for an explicit monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldRef> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::ReducibleModulus);
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::BadCoefficient(c.to_string()));
        }
        let k = modulus.len() - 1;
        checked_order(p, k)?;
        if k == 1 {
            return Self::prime(p);
        }
        let standard = Self::standard(p, k)?;
        if standard.modulus == modulus {
            return Ok(standard);
        }
        let prime = Self::prime(p)?;
        if !Poly::from_u64s(&prime, modulus).is_irreducible() {
            return Err(Error::ReducibleModulus);
        }
        Ok(Arc::new(Self::raw(p, modulus.to_vec())))
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<FieldRef> {
        let field = Self::with_modulus(d.p, &d.modulus)?;
        if field.degree != d.k {
            return Err(Error::ReducibleModulus);
        }
        Ok(field)
    }

    fn raw(p: u64, modulus: Vec<u64>) -> Self {
        let degree = modulus.len() - 1;
        FiniteField {
            p,
            degree,
            order: (p as u128).pow(degree as u32),
            modulus,
            primitive: OnceLock::new(),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            k: self.degree,
            modulus: self.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    /// All elements in index order. Intended for small fields.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| FieldElement::from_index(self, i))
    }

    /// The smallest (in index order) generator of the multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FieldElement {
        let coeffs = self.primitive.get_or_init(|| {
            let n = self.order - 1;
            let factors = prime_factors(n);
            (1..self.order)
                .map(|i| FieldElement::from_index(self, i))
                .find(|a| factors.iter().all(|&l| !a.pow(n / l).is_one()))
                .expect("multiplicative group of a finite field is cyclic")
                .coeffs
        });
        FieldElement {
            field: self.clone(),
            coeffs: coeffs.clone(),
        }
    }

    /// A fixed primitive `n`-th root of unity, `g^((q-1)/n)` for the
    /// primitive element `g`. Compatible: `zeta(n)^(n/d) == zeta(d)`.
    pub fn root_of_unity(self: &Arc<Self>, n: u64) -> Result<FieldElement> {
        let group = self.order - 1;
        if n == 0 || !group.is_multiple_of(n as u128) {
            return Err(Error::BadResidueDegree {
                n,
                group_order: group.to_string(),
            });
        }
        Ok(self.primitive_element().pow(group / n as u128))
    }

    fn reduce(&self, mut wide: Vec<u64>) -> Vec<u64> {
        let k = self.degree;
        let p = self.p;
        if wide.len() > k {
            for i in (k..wide.len()).rev() {
                let c = wide[i] % p;
                if c == 0 {
                    continue;
                }
                wide[i] = 0;
                for j in 0..k {
                    let m = self.modulus[j];
                    if m != 0 {
                        let idx = i - k + j;
                        wide[idx] = (wide[idx] + (p - c) * m) % p;
                    }
                }
            }
            wide.truncate(k);
        }
        wide.resize(k, 0);
        for c in wide.iter_mut() {
            *c %= p;
        }
        wide
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.degree)
        }
    }
}

/// An element of a [`FiniteField`], stored as its fully reduced coefficient
/// vector (length `k`, lowest power of `t` first).
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    coeffs: Vec<u64>,
}

/// The operations exposed by [`field_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u128),
    Frobenius,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(n) => Ok(a.pow(n)),
        FieldOp::Frobenius => Ok(a.frobenius()),
    }
}

impl FieldElement {
    pub fn zero(field: &FieldRef) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![0; field.degree],
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_u64(field, 1)
    }

    /// The image of an integer under `Z -> F_p -> field`.
    pub fn from_u64(field: &FieldRef, n: u64) -> Self {
        let mut coeffs = vec![0; field.degree];
        coeffs[0] = n % field.p;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64(field: &FieldRef, n: i64) -> Self {
        let p = field.p as i64;
        Self::from_u64(field, n.rem_euclid(p) as u64)
    }

    /// The class of `t`.
    pub fn generator(field: &FieldRef) -> Self {
        let mut coeffs = vec![0; field.degree + 1];
        coeffs[1] = 1;
        FieldElement {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// Builds an element from coefficients in `[0, p)`; shorter vectors are
    /// zero padded, longer ones reduced modulo the field modulus.
    pub fn from_coeffs(field: &FieldRef, coeffs: &[u64]) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|&&c| c >= field.p) {
            return Err(Error::BadCoefficient(c.to_string()));
        }
        Ok(FieldElement {
            field: field.clone(),
            coeffs: field.reduce(coeffs.to_vec()),
        })
    }

    /// Inverse of [`FieldElement::index`].
    pub fn from_index(field: &FieldRef, mut index: u128) -> Self {
        let p = field.p as u128;
        let coeffs = (0..field.degree)
            .map(|_| {
                let c = (index % p) as u64;
                index /= p;
                c
            })
            .collect();
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    /// `sum c_i p^i`; the serialization order used for deterministic choices.
    pub fn index(&self) -> u128 {
        let p = self.field.p as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The value as an element of `F_p`, if it lies there.
    pub fn as_prime(&self) -> Option<u64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn neg_ref(&self) -> Self {
        let p = self.field.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.field.p;
        let k = self.field.degree;
        if k == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0] * other.coeffs[0] % p],
            };
        }
        let mut wide = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                wide[i + j] = (wide[i + j] + a * b) % p;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(wide),
        }
    }

    pub fn scale(&self, n: u64) -> Self {
        let p = self.field.p;
        let n = n % p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * n % p).collect(),
        }
    }

    pub fn pow(&self, mut n: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, n: &BigUint) -> Self {
        let mut acc = Self::one(&self.field);
        for i in (0..n.bits()).rev() {
            acc = acc.mul_unchecked(&acc);
            if n.bit(i) {
                acc = acc.mul_unchecked(self);
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order - 2))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u128)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut term = self.clone();
        for _ in 1..self.field.degree {
            term = term.frobenius();
            acc = acc.add_unchecked(&term);
        }
        acc.as_prime().expect("trace lands in the prime field")
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u128> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.field.order - 1;
        for l in prime_factors(n) {
            while n.is_multiple_of(l) && self.pow(n / l).is_one() {
                n /= l;
            }
        }
        Some(n)
    }

    /// A `p`-th root (unique in a perfect field).
    pub fn pth_root(&self) -> Self {
        self.pow(self.field.order / self.field.p as u128)
    }
}

/// The `n`-th power residue character `a^((q-1)/n)`.
///
/// The result is an `n`-th root of unity, equal to one exactly when `a` is an
/// `n`-th power.
pub fn power_residue_symbol(a: &FieldElement, n: u64) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let group = a.field.order - 1;
    if n == 0 || !group.is_multiple_of(n as u128) {
        return Err(Error::BadResidueDegree {
            n,
            group_order: group.to_string(),
        });
    }
    Ok(a.pow(group / n as u128))
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .p
            .cmp(&other.field.p)
            .then_with(|| self.field.modulus.cmp(&other.field.modulus))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                assert!(self.same_field(rhs), "field mismatch in arithmetic");
                $body(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a
    .add_unchecked(b));
forward_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a
    .add_unchecked(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a
    .mul_unchecked(b));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldRef {
        FiniteField::with_modulus(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_field_product() {
        let f5 = FiniteField::prime(5).unwrap();
        let a = FieldElement::from_u64(&f5, 2);
        let b = FieldElement::from_u64(&f5, 3);
        assert!(field_arithmetic(&a, &b, FieldOp::Mul).unwrap().is_one());
    }

    #[test]
    fn f4_square_and_frobenius() {
        let f = f4();
        let t = FieldElement::generator(&f);
        let t_plus_1 = FieldElement::from_coeffs(&f, &[1, 1]).unwrap();
        assert_eq!(&t * &t, t_plus_1);
        assert_eq!(t.frobenius(), t_plus_1);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(FieldElement::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = FieldElement::one(&FiniteField::prime(5).unwrap());
        let b = FieldElement::one(&FiniteField::prime(7).unwrap());
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert_eq!(
            FiniteField::with_modulus(2, &[1, 0, 1]).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(FiniteField::prime(6).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn power_residue_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        let e = |n| FieldElement::from_u64(&f5, n);
        assert!(power_residue_symbol(&e(4), 2).unwrap().is_one());
        assert_eq!(power_residue_symbol(&e(2), 2).unwrap(), e(4));
        assert!(power_residue_symbol(&e(1), 4).unwrap().is_one());
        assert_eq!(power_residue_symbol(&e(0), 2), Err(Error::ZeroArgument));
        assert!(matches!(
            power_residue_symbol(&e(2), 3),
            Err(Error::BadResidueDegree { .. })
        ));
    }

    #[test]
    fn group_order_and_frobenius_cycle() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (2, 4), (7, 1)] {
            let f = FiniteField::standard(p, k).unwrap();
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert!(a.pow(f.order() - 1).is_one());
                let mut b = a.clone();
                for _ in 0..k {
                    b = b.frobenius();
                }
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn roots_of_unity_are_compatible() {
        let f = FiniteField::standard(3, 2).unwrap();
        let z8 = f.root_of_unity(8).unwrap();
        assert_eq!(z8.multiplicative_order(), Some(8));
        assert_eq!(z8.pow(2), f.root_of_unity(4).unwrap());
        assert_eq!(z8.pow(4), f.root_of_unity(2).unwrap());
    }

    #[test]
    fn standard_fields_are_shared() {
        let a = FiniteField::standard(3, 3).unwrap();
        let b = FiniteField::standard(3, 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = FiniteField::from_descriptor(&a.descriptor()).unwrap();
        assert!(Arc::ptr_eq(&a, &c));
    }

    #[test]
    fn fields_by_order() {
        assert_eq!(FiniteField::of_order(9).unwrap().degree(), 2);
        assert_eq!(FiniteField::of_order(8).unwrap().characteristic(), 2);
        assert!(Arc::ptr_eq(
            &FiniteField::of_order(25).unwrap(),
            &FiniteField::standard(5, 2).unwrap()
        ));
        assert!(FiniteField::of_order(12).is_err());
        assert!(FiniteField::of_order(1).is_err());
    }
}
