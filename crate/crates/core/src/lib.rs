//! Clifford-algebra kernels for factorized Fueter–Sce maps.
//!
//! The crate evaluates closed-form kernels obtained by applying
//! `D^β Δ^m` and `D̄^β Δ^m` to the left slice hyperholomorphic Cauchy kernel,
//! and checks them against an independent oracle: the same kernel code run
//! over truncated Taylor jets, from which the derivatives are read off.

pub mod clifford;
pub mod coeffring;
pub mod coeffs;
pub mod diffop;
pub mod error;
pub mod kernels;
pub mod parallel;
pub mod quadrature;
pub mod verify;

pub use clifford::{Multivector, Paravector};
pub use coeffring::{Jet, JetScalar, QJet, Rational, Ring};
pub use diffop::DiffOperator;
pub use error::{Error, Result};
