pub mod annulus;
pub mod channels;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod extensions;
pub mod linalg;
pub mod specfun;

mod quadrature;

pub use error::{Error, Result};
