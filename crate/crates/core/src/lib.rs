pub mod bounds;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod model;
pub mod perturb;
pub mod quadrature;
pub mod reference;
pub mod series;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
