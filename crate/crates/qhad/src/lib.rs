//! Quaternionic Hadamard matrices.
//!
//! A quaternionic Hadamard matrix of order `n` is an `n × n` matrix `H` with
//! unit-norm quaternion entries satisfying `H H* = n I`, where `H*` is the
//! conjugate transpose. This crate provides:
//!
//! - [`quat`]: quaternion arithmetic, group conjugation, and the rotation
//!   lemmas used to put entries into standard position,
//! - [`qmat`]: matrices over the quaternions, Hadamard verification,
//!   equivalence moves (permutations, unit diagonals, global conjugation,
//!   dephasing), and the complex/real adjoint constructions with their
//!   Hadamard-lifting inverses,
//! - [`families`]: parametric families of quaternionic Hadamard matrices at
//!   orders 2–8 (Fourier-type and circulant-core constructions),
//! - [`butson`]: root-of-unity entry analysis (Butson-type classification)
//!   and the exhaustive emptiness check for complex order-5 matrices over
//!   fourth roots of unity,
//! - [`search`]: a damped least-squares solver that recovers circulant-core
//!   matrices of orders 3–5 from random starts and classifies the solutions
//!   against the known families,
//! - [`io`]: JSON documents for matrices and reports with stable, diffable
//!   serialization.

pub mod butson;
mod error;
pub mod families;
pub mod io;
pub mod qmat;
pub mod quat;
pub mod search;

pub use error::Error;
pub use qmat::{QMatrix, VerificationReport};
pub use quat::Quaternion;

/// Default comparison tolerance for verification-style checks.
pub const DEFAULT_TOL: f64 = 1e-9;
