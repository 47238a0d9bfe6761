//! Zeros of random harmonic polynomials `F(z) = p(z) + conj(q(z))`.
//!
//! The crate computes the expected number of zeros of `F` under the truncated
//! Gaussian model through the Kac-Rice formula, compares it with the
//! `c_alpha n^{3/2}` asymptotic law, locates the zeros of sampled polynomials
//! for Monte Carlo cross-checks, and inspects the orientation-reversing set
//! `{|p'| < |q'|}`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod binomial;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod kac_rice;
pub mod lemniscate;
pub mod oracle;
pub mod polynomial;
pub mod quadrature;
pub mod zeros;

pub use error::{Error, Result};
pub use polynomial::{sample, EnsembleSpec, HarmonicPolynomial, Model};
