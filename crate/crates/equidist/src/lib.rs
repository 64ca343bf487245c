//! Prime-modulus polynomial sequences on the unit interval, and the
//! analytics that certify how uniformly they fill it.
//!
//! The pipeline: take a polynomial with decimal coefficients in [0, 1),
//! reduce it at a prime q to integer residues t_l = ⌊q·a_l⌋, and walk the
//! orbit s_i = p_q(i)/q for i = 1..=q. Equidistribution of the orbit is then
//! measured three ways, which the test suites play against each other:
//!
//! * complete exponential sums S(k) = Σ e^{2πik·p_q(j)/q} and their
//!   square-root cancellation ([`expsum`]),
//! * exact star and two-sided discrepancy, with the Erdős–Turán bound
//!   transferring sum decay to discrepancy decay ([`discrepancy`]),
//! * quasi-Monte-Carlo integration of functions with known integrals,
//!   where Koksma's inequality |error| ≤ V(f)·D* closes the loop
//!   ([`qmcint`]).
//!
//! Everything that can be decided in integer or rational arithmetic is:
//! coefficient reduction, grid interval counts, and grid discrepancies are
//! exact, and floating point enters only at the final division or at
//! transcendental evaluations.

pub mod decimal;
pub mod discrepancy;
pub mod error;
pub mod expsum;
pub mod kahan;
pub mod output;
pub mod polyseq;
pub mod primes;
pub mod qmcint;

pub use error::{Error, Result};
