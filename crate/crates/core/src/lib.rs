//! Finite-dimensional Hopf C*-algebra coactions, crossed products and their freeness,
//! outerness and saturation properties.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod checks;
pub mod coaction;
pub mod crossed;
pub mod cstar;
pub mod error;
pub mod hopf;
pub mod linalg;

pub use error::{Error, Result};
pub use linalg::{c64, Matrix, Subspace, ToleranceConfig, C64};
