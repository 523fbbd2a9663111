//! Abelian covers of the rational function field and their splitting.

mod cover;
mod genus;
mod group;
mod oracle;
mod splitting;

pub use cover::{make_cover, reduce_artin_schreier, Component, Cover, CoverDescriptor};
pub use genus::genus;
pub use group::{AbelianGroup, GroupElement, Subset};
pub use oracle::{places_above_oracle, OracleFiber, OraclePlace, Point};
pub use splitting::{splitting_data, FrobeniusData, FrobeniusDataRepr};
