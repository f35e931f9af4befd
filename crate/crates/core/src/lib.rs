pub mod bigreal;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod moments;
pub mod real;
pub mod refine;
pub mod rule;
pub mod rulefile;
pub mod search;
pub mod symmetry;

pub use bigreal::{BigReal, Precision};
pub use error::{CubatureError, Result};
pub use moments::{MultiIndex, Region};
pub use real::Real;
