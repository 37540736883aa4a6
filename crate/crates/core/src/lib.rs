pub mod catalog;
pub mod error;
pub mod exact;
pub mod jordan;
pub mod pair;
pub mod structure;
pub mod superspace;
pub mod tkk;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
