//! Cross-ratio surfaces of the five-point function: exact symmetry groups,
//! the pentagonal tessellation and its double cover, Pochhammer phase
//! surfaces, Beta-function numerics and mesh export.

pub mod betafun;
pub mod cli;
pub mod contour;
pub mod crossratio;
pub mod error;
pub mod exactlin;
pub mod meshout;
pub mod poly;
pub mod quadrature;
pub mod tessellation;

pub use error::{Error, Result};
