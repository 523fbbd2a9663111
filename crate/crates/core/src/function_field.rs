//! The rational function field `K = F_q(x)`: places, residue fields,
//! valuations and evaluation.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    irreducibles_of_degree, poly_factor, roots, CoeffRepr, Embedding, FieldElement, FieldRef,
    FiniteField, Poly,
};
use crate::error::{Error, Result};

/// A place of `F_q(x)`: a monic irreducible polynomial or the place at
/// infinity (the pole of `x`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

/// JSON form: `{"type":"finite","pi":[...]}` or `{"type":"infinity"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PlaceRepr {
    Finite { pi: Vec<CoeffRepr> },
    Infinity,
}

impl Place {
    /// Validates that `pi` is monic irreducible.
    pub fn finite(pi: Poly) -> Result<Self> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::Config(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// `deg_k(P)`; the place at infinity has degree one.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree().expect("irreducible is nonzero"),
            Place::Infinity => 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn to_repr(&self) -> PlaceRepr {
        match self {
            Place::Finite(pi) => PlaceRepr::Finite { pi: pi.to_repr() },
            Place::Infinity => PlaceRepr::Infinity,
        }
    }

    pub fn from_repr(field: &FieldRef, repr: &PlaceRepr) -> Result<Self> {
        match repr {
            PlaceRepr::Finite { pi } => Place::finite(Poly::from_repr(field, pi)?),
            PlaceRepr::Infinity => Ok(Place::Infinity),
        }
    }

    /// The residue field `k_P = F_{q^deg P}` together with `F_q -> k_P` and
    /// the image of `x` (absent at infinity).
    pub fn residue_field(&self, base: &FieldRef) -> Result<ResidueField> {
        match self {
            Place::Infinity => ResidueField::trivial(base, None),
            Place::Finite(pi) if pi.degree() == Some(1) => {
                ResidueField::trivial(base, Some(-&pi.coeff(0)))
            }
            Place::Finite(pi) => {
                let d = pi.degree().expect("nonzero");
                let target = FiniteField::standard(base.characteristic(), base.degree() * d)?;
                let embedding = Embedding::new(base, &target)?;
                let root = roots(&embedding.apply_poly(pi))
                    .into_iter()
                    .next()
                    .expect("an irreducible of degree d splits over the degree-d extension");
                Ok(ResidueField {
                    embedding,
                    x_image: Some(root),
                })
            }
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first; among rational places the finite ones precede infinity.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| match (self, other) {
                (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
                (Place::Finite(_), Place::Infinity) => Ordering::Less,
                (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
                (Place::Infinity, Place::Infinity) => Ordering::Equal,
            })
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "({pi})"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Residue field of a place together with the embedding of the constants.
#[derive(Debug, Clone)]
pub struct ResidueField {
    embedding: Embedding,
    x_image: Option<FieldElement>,
}

impl ResidueField {
    fn trivial(base: &FieldRef, x_image: Option<FieldElement>) -> Result<Self> {
        Ok(ResidueField {
            embedding: Embedding::new(base, base)?,
            x_image,
        })
    }

    pub fn field(&self) -> &FieldRef {
        self.embedding.target()
    }

    pub fn order(&self) -> u128 {
        self.field().order()
    }

    /// Image of a constant.
    pub fn embed(&self, c: &FieldElement) -> FieldElement {
        self.embedding.apply(c)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// The chosen root of `pi`, i.e. the image of `x`.
    pub fn x_image(&self) -> Option<&FieldElement> {
        self.x_image.as_ref()
    }
}

/// An element `num/den` of `F_q(x)`, kept coprime with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if **num.field() != **den.field() {
            return Err(Error::FieldMismatch);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lc_inv = den.leading().expect("nonzero").inv()?;
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.field());
        RationalFunction { num, den }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &FieldRef {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `g(1/x)`.
    pub fn invert_variable(&self) -> Self {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        Self::new(self.num.reversed(n), self.den.reversed(n)).expect("nonzero denominator")
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    /// `v_P(g)`, with `None` standing for `+infinity` (only for `g = 0`).
    pub fn valuation(&self, place: &Place) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match place {
            Place::Infinity => self.den.deg_i64() - self.num.deg_i64(),
            Place::Finite(pi) => multiplicity(&self.num, pi) - multiplicity(&self.den, pi),
        })
    }

    /// The image of `g` in the residue field; requires `v_P(g) >= 0`.
    pub fn evaluate(&self, place: &Place) -> Result<FieldElement> {
        let residue = place.residue_field(self.field())?;
        self.evaluate_in(place, &residue)
    }

    pub fn evaluate_in(&self, place: &Place, residue: &ResidueField) -> Result<FieldElement> {
        let field = residue.field();
        match self.valuation(place) {
            None => return Ok(FieldElement::zero(field)),
            Some(v) if v < 0 => {
                return Err(Error::PoleAtPlace {
                    place: place.to_string(),
                })
            }
            Some(v) if v > 0 => return Ok(FieldElement::zero(field)),
            Some(_) => {}
        }
        match residue.x_image() {
            None => {
                // equal degrees at infinity: ratio of leading coefficients
                let lc = self.num.leading().expect("nonzero");
                Ok(residue.embed(lc))
            }
            Some(alpha) => {
                let num = residue.embedding().apply_poly(&self.num).eval(alpha);
                let den = residue.embedding().apply_poly(&self.den).eval(alpha);
                num.try_div(&den)
            }
        }
    }

    /// Residue of the unit part `g * pi^{-v_P(g)}` (with `1/x` as the
    /// uniformizer at infinity).
    pub fn unit_value(&self, place: &Place, residue: &ResidueField) -> Result<FieldElement> {
        let v = self.valuation(place).ok_or(Error::ZeroArgument)?;
        let uniformizer = match place {
            Place::Finite(pi) => RationalFunction::from_poly(pi.clone()),
            Place::Infinity => RationalFunction::x(self.field()).inv()?,
        };
        self.mul(&uniformizer.pow(-v)?).evaluate_in(place, residue)
    }

    /// Places where the valuation is nonzero, with the valuation, in place
    /// order.
    pub fn support(&self) -> Result<Vec<(Place, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let mut out = Vec::new();
        for part in [&self.num, &self.den] {
            if part.degree().unwrap_or(0) > 0 {
                for (pi, _) in poly_factor(part)?.factors {
                    let place = Place::Finite(pi);
                    let v = self.valuation(&place).expect("nonzero");
                    out.push((place, v));
                }
            }
        }
        let v_inf = self.valuation(&Place::Infinity).expect("nonzero");
        if v_inf != 0 {
            out.push((Place::Infinity, v_inf));
        }
        out.sort();
        Ok(out)
    }
}

fn multiplicity(f: &Poly, pi: &Poly) -> i64 {
    let mut n = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.div_rem(pi).expect("nonzero divisor");
        if !r.is_zero() || rest.is_zero() {
            return n;
        }
        rest = q;
        n += 1;
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON form of a rational function: numerator and denominator coefficient
/// lists, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: Vec<CoeffRepr>,
    #[serde(default = "one_repr")]
    pub den: Vec<CoeffRepr>,
}

fn one_repr() -> Vec<CoeffRepr> {
    vec![CoeffRepr::Int(1)]
}

impl RationalFunction {
    pub fn to_repr(&self) -> RationalRepr {
        RationalRepr {
            num: self.num.to_repr(),
            den: self.den.to_repr(),
        }
    }

    pub fn from_repr(field: &FieldRef, repr: &RationalRepr) -> Result<Self> {
        Self::new(
            Poly::from_repr(field, &repr.num)?,
            Poly::from_repr(field, &repr.den)?,
        )
    }
}

/// All finite places of degree at most `max_degree` plus infinity, in
/// place order.
pub fn places_up_to_degree(field: &FieldRef, max_degree: usize, limit: u64) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(
            irreducibles_of_degree(field, d, limit)?
                .into_iter()
                .map(Place::Finite),
        );
        if d == 1 {
            out.push(Place::Infinity);
        }
    }
    Ok(out)
}

/// The `q + 1` rational places.
pub fn rational_places(field: &FieldRef) -> Vec<Place> {
    places_up_to_degree(field, 1, u64::MAX).expect("degree-one enumeration is small")
}
