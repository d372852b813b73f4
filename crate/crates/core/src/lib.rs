//! Spin-metrology toolkit for Cartesian reference-frame alignment.
//!
//! The crate works with pure states of `N` qubits restricted to the fully
//! symmetric subspace, i.e. a single spin `J = N/2`. It provides:
//!
//! - dense spin-J linear algebra: angular momentum operators, expectation
//!   values, and SU(2) rotations ([`spin`]);
//! - quantum Fisher matrices, the alignment cost `Tr F^-1`, the harmonic-mean
//!   lower bound `9/(N(N+2))`, and anti-coherence verification ([`metrology`]);
//! - bidirectional conversion between states and their Majorana point sets on
//!   the Bloch sphere ([`majorana`]);
//! - generators for the Platonic-solid vertex sets and the derived optimal
//!   state families, with exact-rational verification of the printed
//!   coefficients ([`catalog`]);
//! - direct numerical minimization of the alignment cost with multi-start
//!   descent and a brute-force grid oracle ([`optimizer`]);
//! - seeded Monte Carlo simulation of the estimation protocol with
//!   maximum-likelihood estimators and Cramér–Rao comparisons ([`sim`]).
//!
//! Heavy inner loops (optimizer restarts, simulation trials, grid sweeps) run
//! on rayon when the default `parallel` feature is enabled and fall back to
//! sequential iteration without it. Results are identical either way: all
//! randomness is derived from `(seed, task index)` and reductions are
//! performed in fixed index order.

pub mod catalog;
mod exec;
mod linalg;
pub mod majorana;
pub mod metrology;
pub mod optimizer;
pub mod sim;
pub mod spin;

pub use spin::{AngularMomentum, RotationVector, SpinState};
