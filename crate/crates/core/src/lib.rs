//! Exact construction and spectral analysis of symmetric diagram matrices
//! `A^{s+r,s}` and of the Gram matrices of partition-type diagram algebras.
//!
//! The crate has two independent computation paths:
//!
//! * closed forms: [`spectrum`], [`gram_partition`], [`gram_signed_z2`]
//!   evaluate eigenvalue families and block eigenpolynomials directly;
//! * brute force: [`oracle`] computes characteristic polynomials and
//!   polynomial determinants from explicit matrices.
//!
//! Every closed form is checked against the oracle in the test suites.
//! All arithmetic is exact (arbitrary-precision integers).

pub mod combinat;
pub mod error;
pub mod gram_partition;
pub mod gram_signed_z2;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod sdm;
pub mod spectrum;

mod dsu;

pub use error::{Error, Result};
pub use par::Exec;
pub use poly::Polynomial;
