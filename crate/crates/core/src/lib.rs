//! Exact second cohomology and one-dimensional extensions of Lie algebras over ℚ.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod liecore;
pub mod orbits;
pub mod ratlin;

pub use catalog::{make_catalog, CatalogId, Family};
pub use cohomology::{Cocycle, WeightAction};
pub use error::{Error, Result};
pub use liecore::LieAlgebra;
pub use ratlin::{Matrix, Scalar, Subspace};
