//! Named algebras: Jordan superalgebras and Lie superalgebras with their parameter ranges.

mod format;
mod jordan;
mod lie;
mod source;

pub use format::{load, save, AlgebraSpec, Product, SCHEMA_VERSION};
pub use jordan::{jordan_catalog, JordanName};
pub use lie::{expected_dim, lie_catalog, LieName, MAX_LIE_DIM};
pub use source::{resolve, Source};
