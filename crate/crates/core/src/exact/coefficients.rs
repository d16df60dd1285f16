use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{nonzero, Factor, SepError, SeparationResult, Verdict};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriterionVerdict {
    Separable,
    /// First index tuple, in lexicographic order over the dense box, where
    /// `L^{n−1}·c ≠ ∏ slices`.
    Violation { index: Vec<u32> },
    /// The leading product monomial is absent and no coefficient violates
    /// the homogenized condition.
    LeadingProductAbsent,
}

impl CriterionVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, CriterionVerdict::Separable)
    }
}

impl fmt::Display for CriterionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionVerdict::Separable => f.write_str("coefficient tensor is rank one"),
            CriterionVerdict::Violation { index } => write!(f, "coefficient condition fails at {index:?}"),
            CriterionVerdict::LeadingProductAbsent => f.write_str("leading product monomial is absent"),
        }
    }
}

/// A totally separable polynomial contains `x_1^{N_1}…x_n^{N_n}` where `N_i`
/// are the per-variable degrees. Its absence refutes separability; its
/// presence proves nothing.
pub fn anomalous_precheck(f: &Polynomial) -> Result<Verdict, SepError> {
    let degrees = f.degree_vector().map_err(|_| SepError::ZeroPolynomial)?;
    Ok(if f.coefficient(&degrees).is_zero() {
        Verdict::NotSeparable
    } else {
        Verdict::Inconclusive
    })
}

/// Slices of the coefficient tensor through the leading product index:
/// `slices[r][k] = c_{N_1…k…N_n}` with `k` in position `r`.
fn slices(f: &Polynomial, degrees: &[u32]) -> Vec<Vec<Rational>> {
    (0..degrees.len())
        .map(|r| {
            let mut idx = degrees.to_vec();
            (0..=degrees[r])
                .map(|k| {
                    idx[r] = k;
                    f.coefficient(&idx)
                })
                .collect()
        })
        .collect()
}

/// Rank-one test on the dense coefficient tensor:
/// `L^{n−1}·c_{i_1…i_n} = ∏_r c_{N_1…i_r…N_n}` for every index in the box
/// `∏ {0…N_r}`, with `L = c_{N_1…N_n}`. Absent coefficients count as zero.
pub fn coeff_criterion_total(f: &Polynomial) -> Result<CriterionVerdict, SepError> {
    let degrees = f.degree_vector().map_err(|_| SepError::ZeroPolynomial)?;
    let n = degrees.len();
    if n == 0 {
        return Ok(CriterionVerdict::Separable);
    }
    let lead = f.coefficient(&degrees);
    let scale = num_traits::pow(lead.clone(), n - 1);
    let slices = slices(f, &degrees);
    let mut index = vec![0u32; n];
    loop {
        let rhs = index
            .iter()
            .zip(&slices)
            .fold(Rational::one(), |acc, (&k, s)| acc * &s[k as usize]);
        if &scale * f.coefficient(&index) != rhs {
            return Ok(CriterionVerdict::Violation { index });
        }
        if !advance(&mut index, &degrees) {
            break;
        }
    }
    Ok(if lead.is_zero() {
        CriterionVerdict::LeadingProductAbsent
    } else {
        CriterionVerdict::Separable
    })
}

/// Odometer step, last position fastest. False once the box is exhausted.
pub(super) fn advance(index: &mut [u32], bounds: &[u32]) -> bool {
    for r in (0..index.len()).rev() {
        if index[r] < bounds[r] {
            index[r] += 1;
            return true;
        }
        index[r] = 0;
    }
    false
}

/// Total separation from coefficient slices. The factor in `x_r` is the
/// slice through the leading product index divided by `L`; the constant
/// is `L`.
pub fn separate_total(f: &Polynomial) -> Result<SeparationResult, SepError> {
    nonzero(f)?;
    let verdict = coeff_criterion_total(f)?;
    if !verdict.is_separable() {
        return Err(SepError::NotSeparable(verdict));
    }
    let degrees = f.degree_vector()?;
    let n = degrees.len();
    let lead = f.coefficient(&degrees);
    let inv = lead.recip();
    let factors = slices(f, &degrees)
        .into_iter()
        .enumerate()
        .map(|(r, slice)| {
            let terms = slice.into_iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[r] = k as u32;
                (e, c * &inv)
            });
            let factor = Polynomial::from_terms(f.vars().iter().cloned(), terms)?;
            Ok(Factor { block: vec![r], factor })
        })
        .collect::<Result<Vec<_>, SepError>>()?;
    SeparationResult { constant: lead, factors, verified: false }.verify(f)
}
