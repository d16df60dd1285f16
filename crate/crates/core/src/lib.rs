//! Multiplicative separability of multivariate functions.
//!
//! Given `F(x_1, ..., x_n)`, decide whether `F` factors into a product of
//! functions of disjoint blocks of variables, find the finest such
//! partition, and produce the factors.
//!
//! * [`poly`] holds exact sparse polynomials over the rationals.
//! * [`expr`] parses expression strings, lowers them to polynomials and
//!   evaluates them in floating point.
//! * [`exact`] decides separability of polynomials exactly, by the
//!   `F·F,ij − F,i·F,j ≡ 0` test and by the rank-one coefficient tensor
//!   criterion, and extracts monic factors from margins.
//! * [`numeric`] tests black-box expressions on sample grids using the
//!   margin identity `F(a)·F(x) = F(x_I, a_J)·F(a_I, x_J)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod exact;
pub mod expr;
pub mod numeric;
pub mod partition;
pub mod poly;
pub mod rational;

pub use exact::{SepError, SeparationResult};
pub use expr::{ExprError, ExprNode};
pub use numeric::{NumericError, NumericVerdict, SampleGrid};
pub use partition::Partition;
pub use poly::{ExponentVector, PolyError, Polynomial};
pub use rational::Rational;
