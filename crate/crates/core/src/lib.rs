//! Exact binomial-transform calculus.
//!
//! The signed binomial transform
//!
//! ```text
//! b_n = sum_{k=0}^{n} C(n,k) (-1)^(k-1) a_k
//! ```
//!
//! is an involution, and it turns multiplication of `a_k` by `k` into the
//! operator `n∇` acting on `b_n` (`∇b_n = b_n - b_{n-1}`). Division of `a_k`
//! by `k + λ` turns into a weighted partial sum of `b`. This crate implements
//! those operators over exact rationals, generators for the sequence families
//! the identities are stated in (harmonic, Stirling, Fibonacci/Lucas,
//! Laguerre, ...), and a registry of identities that can be checked exactly
//! over a range of `n`.
//!
//! Nothing in here uses floating point. Every comparison is exact equality of
//! reduced rationals.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod cli;
pub mod error;
pub mod families;
pub mod rational;
pub mod sequence;
pub mod suite;
pub mod transform;

pub use error::{Error, Result};
pub use rational::ExactRational;
pub use sequence::{OperatorPolynomial, Sequence};
pub use suite::{
    register_builtin_identities, verify_all, IdentitySpec, ParamSet, Registry, Status,
    VerificationReport,
};
