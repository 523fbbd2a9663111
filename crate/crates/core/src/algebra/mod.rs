//! Exact arithmetic in finite fields and their polynomial rings.

mod embedding;
mod factor;
mod field;
mod poly;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use embedding::Embedding;
pub use factor::{
    default_seed, distinct_degree, equal_degree, find_irreducible, irreducible_count,
    irreducibles_of_degree, poly_factor, poly_factor_seeded, roots, roots_seeded, set_default_seed,
    squarefree, Factorization, DEFAULT_ENUMERATION_LIMIT, DEFAULT_SEED,
};
pub use field::{
    field_arithmetic, power_residue_symbol, FieldDescriptor, FieldElement, FieldOp, FieldRef,
    FiniteField,
};
pub use poly::Poly;

/// JSON form of a coefficient: an integer in `[0, p)` for prime fields, or
/// the little-endian coordinate vector in the basis `1, t, ..., t^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Int(u64),
    Vector(Vec<u64>),
}

impl FieldElement {
    pub fn to_repr(&self) -> CoeffRepr {
        match self.as_prime() {
            Some(c) if self.field().is_prime_field() => CoeffRepr::Int(c),
            _ => CoeffRepr::Vector(self.coeffs().to_vec()),
        }
    }

    pub fn from_repr(field: &FieldRef, repr: &CoeffRepr) -> Result<Self> {
        match repr {
            CoeffRepr::Int(c) => FieldElement::from_coeffs(field, &[*c]),
            CoeffRepr::Vector(v) => {
                if v.len() > field.degree() {
                    return Err(Error::BadCoefficient(format!("{v:?}")));
                }
                FieldElement::from_coeffs(field, v)
            }
        }
    }
}

impl Poly {
    /// Little-endian coefficient list.
    pub fn to_repr(&self) -> Vec<CoeffRepr> {
        self.coeffs().iter().map(FieldElement::to_repr).collect()
    }

    pub fn from_repr(field: &FieldRef, coeffs: &[CoeffRepr]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|c| FieldElement::from_repr(field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }
}
