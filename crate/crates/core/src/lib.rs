//! Fractional Floquet theory: Mittag-Leffler synthesis of solutions to
//! fractional time Schrödinger equations with time-periodic Hamiltonians.

pub mod error;
pub mod fde;
pub mod cli;
pub mod ffloquet;
pub mod floquet;
pub mod fraccalc;
pub mod grid;
pub mod linalg;
pub mod models;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
