//! Exact envelopes of string-art line families.
//!
//! The crate builds line families, eliminates their parameter with
//! Sylvester resultants to get the envelope as an implicit curve, classifies
//! conics exactly, and checks tangency statements as zero-polynomial
//! identities. The [`cli`] module is the command-line front end.

pub mod algebra;
pub mod cli;
pub mod conic;
pub mod envelope;
pub mod family;
pub mod parse;
pub mod proofs;
pub mod render;

pub use algebra::{Polynomial, Rational, Var};
