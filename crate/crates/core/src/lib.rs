//! Renormalized vacuum stress-energy and bulk Casimir energy of a massless
//! scalar field in an isotropic harmonic potential, via local zeta
//! regularization of the heat kernel.

pub mod asymptotics;
pub mod continuation;
pub mod energy;
pub mod error;
pub mod jets;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod selftest;
pub mod stress;

pub use error::{Error, Result};
pub use kernels::{critical_coupling, ComponentTag, HarmonicConfig};
