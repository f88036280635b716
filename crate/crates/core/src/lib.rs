pub mod arith;
pub mod bounds;
pub mod counting;
pub mod error;
pub mod factorization;
pub mod graph;
mod numtheory;
pub mod report;
pub mod semiring;
pub mod wright;

pub use error::{Error, Result};
pub use graph::{CanonicalKey, Graph};
