//! Star-product calculus built from coherent states.
//!
//! The crate covers the normal-ordered (Voros) star product on the
//! Weyl-Heisenberg algebra, its extension to coherent states displaced from an
//! arbitrary number state, the star-conjugation calculus for unitary flows and
//! Bogoliubov transformations, and the su(1,1) star product built from
//! Barut-Girardello states, with its application to the singular harmonic
//! oscillator.
//!
//! Every closed-form relation is paired with a brute-force oracle living in
//! [`fock`]: truncated number-basis matrices and state vectors. The `check`
//! functions in each module evaluate both sides and return a
//! [`report::VerificationReport`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` is the NaN-rejecting form used throughout for domain checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod calogero;
pub mod covariance;
pub mod error;
pub mod fock;
pub mod heisenberg;
pub mod landau;
pub mod linalg;
pub mod report;
pub mod specfun;
pub mod su11;
pub mod symbol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
