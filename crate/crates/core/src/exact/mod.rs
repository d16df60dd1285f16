//! Exact separability of polynomials with rational coefficients.
//!
//! Two independent routes decide total separability:
//!
//! * the differential route: `M_ij = F·F,ij − F,i·F,j` must vanish
//!   identically for every `i ≠ j` ([`finest_partition`] builds the graph of
//!   non-vanishing pairs and takes connected components);
//! * the coefficient route: the dense coefficient tensor must be a rank-one
//!   outer product of its slices through the leading product monomial
//!   ([`coeff_criterion_total`]).
//!
//! Factors come either from coefficient slices ([`separate_total`]) or from
//! margins at an anchor point where `F` does not vanish
//! ([`separate_by_partition`]). Every factorization is re-multiplied and
//! compared with the input before it is returned.

use alloc::vec::Vec;

use crate::partition::{Partition, PartitionError};
use crate::poly::{PolyError, Polynomial};
use crate::rational::Rational;

mod coefficients;
mod margins;
mod matrix;

pub use coefficients::{anomalous_precheck, coeff_criterion_total, separate_total, CriterionVerdict};
pub use margins::{anchor_search, separate, separate_by_partition};
pub use matrix::{finest_partition, sep_matrix_diagonal, sep_matrix_entry, SepMatrixReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SepError {
    #[error("the zero polynomial is degenerate input")]
    ZeroPolynomial,
    #[error("diagonal entry M_{0}{0} is not a separability condition")]
    DiagonalEntry(usize),
    #[error("polynomial is not totally separable: {0}")]
    NotSeparable(CriterionVerdict),
    #[error("partition is not a coarsening of the finest separating partition")]
    NotCoarsening,
    #[error("partition covers {found} variables, polynomial has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("no anchor point with nonzero value found")]
    AnchorExhausted,
    #[error("internal inconsistency: factorization does not reproduce the input")]
    VerificationFailed,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    NotSeparable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub block: Vec<usize>,
    /// Monic, over the full registry, depending only on `block`.
    pub factor: Polynomial,
}

/// `F = constant · ∏ factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationResult {
    pub constant: Rational,
    pub factors: Vec<Factor>,
    pub verified: bool,
}

impl SeparationResult {
    pub fn product(&self, like: &Polynomial) -> Polynomial {
        self.factors
            .iter()
            .fold(like.constant_like(self.constant.clone()), |acc, f| &acc * &f.factor)
    }

    pub fn partition(&self, n: usize) -> Partition {
        Partition::new(n, self.factors.iter().map(|f| f.block.clone()).collect())
            .expect("factor blocks form a partition")
    }

    /// Re-multiplies and sets `verified`, or fails.
    fn verify(mut self, input: &Polynomial) -> Result<Self, SepError> {
        if self.product(input) != *input {
            return Err(SepError::VerificationFailed);
        }
        self.verified = true;
        Ok(self)
    }
}

fn nonzero(f: &Polynomial) -> Result<(), SepError> {
    if f.is_zero() {
        Err(SepError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Applies the differential-route refutation to a mixed partial derivative:
/// a derivative that is not totally separable proves `F` is not.
///
/// A separable (or vanishing) derivative proves nothing.
pub fn refute_by_derivative(f: &Polynomial, orders: &[u32]) -> Result<Verdict, SepError> {
    nonzero(f)?;
    let d = f.derivative(orders)?;
    if d.is_zero() {
        return Ok(Verdict::Inconclusive);
    }
    let report = finest_partition(&d)?;
    Ok(if report.partition.is_singletons() {
        Verdict::Inconclusive
    } else {
        Verdict::NotSeparable
    })
}

/// `F = g_1(x_1) + … + g_n(x_n)` exactly when no monomial mixes two variables.
pub fn additive_separability(f: &Polynomial) -> Verdict {
    let mixed = f
        .terms()
        .any(|(e, _)| e.as_slice().iter().filter(|&&k| k > 0).count() > 1);
    if mixed {
        Verdict::NotSeparable
    } else {
        Verdict::Separable
    }
}
