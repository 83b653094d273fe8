//! Numerical laboratory for the minimum spectral gap of adiabatic
//! optimization over symmetric n-qubit barrier cost functions.
//!
//! Three routes to the same physics, cross-validated against each other:
//!
//! 1. exact diagonalization of the (n+1)-dimensional symmetric-subspace
//!    tridiagonal Hamiltonian ([`hamiltonian`], [`eig`], [`gapscan`]);
//! 2. the continuum quadratic-well model with a step barrier, solved by
//!    matching parabolic cylinder functions across the step ([`specfun`],
//!    [`model`]);
//! 3. closed-form asymptotic scaling laws and the region diagram in the
//!    barrier exponents ([`model`], [`scaling`]).
//!
//! [`villain`] verifies the discrete spin-operator identities behind the
//! continuum reduction, and [`exec`] provides the data-parallel driver
//! used by scans and studies (rayon by default, sequential with
//! `--no-default-features`).

pub mod barrier;
pub mod eig;
pub mod error;
pub mod exec;
pub mod gapscan;
pub mod hamiltonian;
pub mod model;
pub mod roots;
pub mod scaling;
pub mod specfun;
pub mod villain;

pub use barrier::{barrier_value, continuum_barrier, BarrierSpec, Shape};
pub use error::{Error, Result};
pub use gapscan::critical_s;
