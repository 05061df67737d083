pub mod analysis;
pub mod bubble;
pub mod cli;
pub mod error;
pub mod fit;
pub mod heatkernel;
pub mod modulation;
pub mod pde;
pub mod quadrature;

pub use error::{FujdError, Result};
