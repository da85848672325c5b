//! Quantum and semiclassical analysis of `N` interacting bosons in a tilted
//! triple-well potential.
//!
//! The quantum side works in the Fock basis `|n1, n2, n3>` at fixed total
//! particle number and diagonalizes
//!
//! ```text
//! H = (U/N)(N1 - N2 + N3)^2 + eps (N3 - N1)
//!   + (J/sqrt 2)(a1+ a2 + a2+ a1) + (J/sqrt 2)(a2+ a3 + a3+ a2)
//! ```
//!
//! densely. The semiclassical side looks for the stationary points of the
//! coherent-state energy per particle on the sphere `r1^2 + r2^2 + r3^2 = 1`,
//! either from closed forms in the three integrable limits (`U = 0`, `J = 0`,
//! `eps = 0`) or from the roots of a degree-7 polynomial in `r2^2` otherwise.
//! [`scan`] ties the two together over parameter sweeps.

pub mod error;
pub mod fock;
pub mod params;
pub mod quantum;
pub mod scan;
pub mod semiclassical;

pub use error::{Error, Result};
pub use fock::{dimension, enumerate_basis, Basis, FockState};
pub use params::{EnergyUnit, ModelParams};
