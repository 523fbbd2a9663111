//! The measure `(P, M)(gamma)` and fiber counts for arbitrary finite
//! groups, through abstract models of normal extensions.

mod group;
mod model;

pub use group::{Elem, ElemSet, FiniteGroup, LIBRARY};
pub use model::{
    measure_of, random_abstract_model, AbstractModel, AbstractPlace, Measure, OrbitPlace, PsiCount,
};
