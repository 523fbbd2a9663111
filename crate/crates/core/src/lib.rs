//! Frobenius data at every place of explicit abelian covers of the
//! projective line over a finite field, the ramification-aware Chebotarev
//! measure `(P, M)(gamma)`, and exact checks of the twisted fiber-count
//! identity and its Hasse-Weil consequence.

pub mod abstract_model;
pub mod algebra;
pub mod covers;
pub mod descriptor;
pub mod error;
pub mod function_field;
pub mod theorem;

pub use error::{Error, Result};
