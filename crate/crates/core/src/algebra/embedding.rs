//! Compatible embeddings `F_{p^a} -> F_{p^b}` for `a | b`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

use super::factor::roots;
use super::field::{FieldElement, FieldRef};
use super::poly::Poly;

/// A field homomorphism determined by the image of the source generator.
///
/// The image is a root of the source modulus in the target; among the
/// `a` possible roots (all Frobenius conjugate) the one with the smallest
/// index is used, so every run picks the same embedding.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: FieldRef,
    target: FieldRef,
    image: FieldElement,
}

type EmbeddingKey = (u64, Vec<u64>, Vec<u64>);

fn cache() -> &'static Mutex<HashMap<EmbeddingKey, FieldElement>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbeddingKey, FieldElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(source: &FieldRef, target: &FieldRef) -> Result<Self> {
        if source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return Err(Error::FieldMismatch);
        }
        let key = (
            source.characteristic(),
            source.modulus().to_vec(),
            target.modulus().to_vec(),
        );
        if let Some(image) = cache().lock().unwrap().get(&key) {
            return Ok(Embedding {
                source: source.clone(),
                target: target.clone(),
                image: FieldElement::from_coeffs(target, image.coeffs())?,
            });
        }
        let image = if source.is_prime_field() {
            FieldElement::zero(target)
        } else if Arc::ptr_eq(source, target) || **source == **target {
            FieldElement::generator(target)
        } else {
            let modulus = Poly::from_u64s(target, source.modulus());
            roots(&modulus)
                .into_iter()
                .next()
                .expect("the source modulus splits in the target")
        };
        cache().lock().unwrap().insert(key, image.clone());
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image,
        })
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn target(&self) -> &FieldRef {
        &self.target
    }

    /// Image of the source generator `t`.
    pub fn generator_image(&self) -> &FieldElement {
        &self.image
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(a.field() == &self.source);
        if self.source.is_prime_field() {
            return FieldElement::from_u64(&self.target, a.coeffs()[0]);
        }
        let mut acc = FieldElement::zero(&self.target);
        for &c in a.coeffs().iter().rev() {
            acc = &(&acc * &self.image) + &FieldElement::from_u64(&self.target, c);
        }
        acc
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.target, |c| self.apply(c))
    }
}
