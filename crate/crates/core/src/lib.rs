//! Cl₃(ℝ) geometric algebra with γ-deformed generators, and numerical
//! verification of T-pseudo-Hermitian Rashba Hamiltonians: spectra,
//! bi-orthogonal eigenspinors, time reversal, ideal spinors and the
//! SUSY / pseudo-SUSY structure.

pub mod biortho;
pub mod block;
pub mod clifford;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod matrix;
pub mod momenta;
pub mod spectrum;
pub mod susy;
pub mod timereversal;

pub use error::{Error, Result};
