use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::coefficients::advance;
use super::{coeff_criterion_total, finest_partition, nonzero, separate_total, Factor, SepError, SeparationResult};
use crate::partition::Partition;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// First point of the integer grid `∏ {0…N_i}`, in lexicographic order,
/// where `F` does not vanish. A nonzero polynomial cannot vanish on the
/// whole grid.
pub fn anchor_search(f: &Polynomial) -> Result<Vec<Rational>, SepError> {
    let degrees = f.degree_vector().map_err(|_| SepError::ZeroPolynomial)?;
    let mut index = vec![0u32; degrees.len()];
    loop {
        let point: Vec<Rational> = index.iter().map(|&k| Rational::from_integer(k.into())).collect();
        if !f.evaluate(&point)?.is_zero() {
            return Ok(point);
        }
        if !advance(&mut index, &degrees) {
            return Err(SepError::AnchorExhausted);
        }
    }
}

/// Factors `F` according to `partition` from margins at one anchor `a`:
/// `F(a)^{r−1}·F = ∏_s F(x_{I_s}, a_rest)`.
///
/// `partition` must coarsen [`finest_partition`]; each margin is made monic
/// and the scalars collect in the constant.
pub fn separate_by_partition(f: &Polynomial, partition: &Partition) -> Result<SeparationResult, SepError> {
    nonzero(f)?;
    let n = f.nvars();
    if partition.num_vars() != n {
        return Err(SepError::PartitionSize { expected: n, found: partition.num_vars() });
    }
    let finest = finest_partition(f)?.partition;
    if !partition.is_coarsening_of(&finest) {
        return Err(SepError::NotCoarsening);
    }
    let anchor = anchor_search(f)?;
    let value = f.evaluate(&anchor)?;
    let blocks = partition.blocks();
    let mut constant = num_traits::Pow::pow(&value, 1 - blocks.len() as i32);
    let mut factors = Vec::with_capacity(blocks.len());
    for block in blocks {
        let fixed: Vec<(usize, Rational)> = (0..n)
            .filter(|i| !block.contains(i))
            .map(|i| (i, anchor[i].clone()))
            .collect();
        let margin = f.specialize(&fixed)?;
        let (lc, monic) = margin.monic()?;
        constant *= lc;
        factors.push(Factor { block: block.clone(), factor: monic });
    }
    SeparationResult { constant, factors, verified: false }.verify(f)
}

/// Factors `F` by its finest partition. Totally separable inputs go through
/// the coefficient slices, which yield the same monic factors without
/// forming the `M_ij`.
pub fn separate(f: &Polynomial) -> Result<SeparationResult, SepError> {
    nonzero(f)?;
    if coeff_criterion_total(f)?.is_separable() {
        return separate_total(f);
    }
    let finest = finest_partition(f)?.partition;
    separate_by_partition(f, &finest)
}
