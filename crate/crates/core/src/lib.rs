pub mod affine;
pub mod arith;
pub mod basis;
pub mod casimir;
pub mod cli;
pub mod cocycles;
pub mod error;
pub mod linalg;
pub mod sample;
pub mod structure;
pub mod sugawara;
pub mod wedge;

pub use error::{Error, Result};
