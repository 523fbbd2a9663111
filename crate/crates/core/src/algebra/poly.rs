//! Dense univariate polynomials over a [`FiniteField`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};

use super::field::{prime_factors, FieldElement, FieldRef};

/// A polynomial with coefficients lowest degree first; the zero polynomial
/// has no coefficients and the leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldRef, coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// Coefficients given as integers, read in `F_p` and mapped into `field`.
    pub fn from_u64s(field: &FieldRef, coeffs: &[u64]) -> Self {
        Self::new(
            field,
            coeffs
                .iter()
                .map(|&c| FieldElement::from_u64(field, c))
                .collect(),
        )
    }

    pub fn from_i64s(field: &FieldRef, coeffs: &[i64]) -> Self {
        Self::new(
            field,
            coeffs
                .iter()
                .map(|&c| FieldElement::from_i64(field, c))
                .collect(),
        )
    }

    pub fn zero(field: &FieldRef) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// `x^n`.
    pub fn monomial(field: &FieldRef, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(field); n + 1];
        coeffs[n] = FieldElement::one(field);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::monomial(field, 1)
    }

    /// `x - a`.
    pub fn linear(a: &FieldElement) -> Self {
        let field = a.field().clone();
        Self::new(&field, vec![-a, FieldElement::one(&field)])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::zero(&self.field); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// `x^n f(1/x)` for `n >= deg f`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut coeffs: Vec<_> = (0..=n).map(|i| self.coeff(i)).collect();
        coeffs.reverse();
        Self::new(&self.field, coeffs)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(i as u64))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(x.field()), |acc, c| &(&acc * x) + c)
    }

    /// Applies `map` to every coefficient, landing in `target`.
    pub fn map_coeffs(
        &self,
        target: &FieldRef,
        map: impl Fn(&FieldElement) -> FieldElement,
    ) -> Self {
        Self::new(target, self.coeffs.iter().map(map).collect())
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if *self.field != *divisor.field {
            return Err(Error::FieldMismatch);
        }
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((self.clone(), self.clone()));
        };
        if nd < dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(&self.field); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut n: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Self::one(&self.field)
            .rem(modulus)
            .expect("nonzero modulus");
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn pow_mod_big(&self, n: &BigUint, modulus: &Poly) -> Poly {
        let base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Self::one(&self.field)
            .rem(modulus)
            .expect("nonzero modulus");
        for i in (0..n.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if n.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let q = self.field.order();
        // x^(Q^i) for i = 0..=n, computed once.
        let mut powers = vec![x.rem(&f).expect("nonzero")];
        for i in 0..n {
            let next = powers[i].pow_mod(q, &f);
            powers.push(next);
        }
        if !(&powers[n] - &x).rem(&f).expect("nonzero").is_zero() {
            return false;
        }
        prime_factors(n as u128).into_iter().all(|l| {
            let h = &powers[n / l as usize] - &x;
            h.gcd(&f).is_one()
        })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top by element index.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime = self.field.is_prime_field();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c.is_one() && i > 0 {
                String::new()
            } else if prime || c.as_prime().is_some() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect(),
        )
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out =
            vec![FieldElement::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::FiniteField;
    use super::*;

    #[test]
    fn division_with_remainder() {
        let f5 = FiniteField::prime(5).unwrap();
        let a = Poly::from_u64s(&f5, &[1, 0, 1]); // x^2 + 1
        let b = Poly::from_u64s(&f5, &[3, 1]); // x - 2
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Poly::from_u64s(&f5, &[2, 1]));
        assert!(r.is_zero());
        assert_eq!(
            a.div_rem(&Poly::zero(&f5)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn gcd_is_monic() {
        let f7 = FiniteField::prime(7).unwrap();
        let a = Poly::from_u64s(&f7, &[6, 0, 2]); // 2(x - 2)(x + 2)
        let b = Poly::from_u64s(&f7, &[6, 3]); // 3(x + 2)
        let g = a.gcd(&b);
        assert!(g.is_monic());
        assert_eq!(g, Poly::from_u64s(&f7, &[2, 1]));
    }

    #[test]
    fn irreducibility_small_cases() {
        let f2 = FiniteField::prime(2).unwrap();
        assert!(Poly::from_u64s(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!Poly::from_u64s(&f2, &[1, 0, 1]).is_irreducible());
        let f5 = FiniteField::prime(5).unwrap();
        assert!(!Poly::from_u64s(&f5, &[1, 0, 1]).is_irreducible());
        assert!(Poly::from_u64s(&f5, &[2, 0, 1]).is_irreducible());
        // degree 4 with no roots but reducible: (x^2+2)(x^2+3) = x^4 + 1 over F_5
        assert!(!Poly::from_u64s(&f5, &[1, 0, 0, 0, 1]).is_irreducible());
    }

    #[test]
    fn product_degree_is_additive() {
        let f = FiniteField::standard(3, 2).unwrap();
        let t = FieldElement::generator(&f);
        let a = Poly::new(&f, vec![t.clone(), FieldElement::one(&f), t.clone()]);
        let b = Poly::linear(&t);
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn reversal() {
        let f5 = FiniteField::prime(5).unwrap();
        let a = Poly::from_u64s(&f5, &[0, 1, 0, 1]); // x^3 + x
        assert_eq!(a.reversed(3), Poly::from_u64s(&f5, &[1, 0, 1]));
    }
}
