pub mod arith;
pub mod bounds;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod fourier;
pub mod plane;
pub mod search;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
