use alloc::vec;
use alloc::vec::Vec;

use super::{nonzero, SepError};
use crate::partition::Partition;
use crate::poly::Polynomial;

/// `F·F,ij − F,i·F,j` for `i ≠ j`. Vanishes identically iff `F` separates
/// `x_i` from `x_j` (given the other variables).
pub fn sep_matrix_entry(f: &Polynomial, i: usize, j: usize) -> Result<Polynomial, SepError> {
    nonzero(f)?;
    if i == j {
        return Err(SepError::DiagonalEntry(i));
    }
    let fi = f.partial_derivative(i)?;
    let fj = f.partial_derivative(j)?;
    let fij = fi.partial_derivative(j)?;
    Ok(&(f * &fij) - &(&fi * &fj))
}

/// `F·F,ii − F,i²`. Its vanishing is the exponential condition for
/// separability to survive affine changes of variables; it plays no part in
/// partition detection.
pub fn sep_matrix_diagonal(f: &Polynomial, i: usize) -> Result<Polynomial, SepError> {
    nonzero(f)?;
    let fi = f.partial_derivative(i)?;
    let fii = fi.partial_derivative(i)?;
    Ok(&(f * &fii) - &(&fi * &fi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepMatrixReport {
    /// `vanishes[i][j]` is true when `M_ij ≡ 0`. Symmetric.
    pub vanishes: Vec<Vec<bool>>,
    pub partition: Partition,
}

/// Finest partition according to which `F` separates: the connected
/// components of the graph joining `i` and `j` whenever `M_ij ≢ 0`.
///
/// `F` separates according to `Q` exactly when `Q` coarsens the result.
pub fn finest_partition(f: &Polynomial) -> Result<SepMatrixReport, SepError> {
    nonzero(f)?;
    let n = f.nvars();
    let derivs: Vec<Polynomial> = (0..n)
        .map(|i| f.partial_derivative(i))
        .collect::<Result<_, _>>()?;
    let mut vanishes = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        vanishes[i][i] = sep_matrix_diagonal(f, i)?.is_zero();
        for j in (i + 1)..n {
            let fij = derivs[i].partial_derivative(j)?;
            let m = &(f * &fij) - &(&derivs[i] * &derivs[j]);
            let zero = m.is_zero();
            vanishes[i][j] = zero;
            vanishes[j][i] = zero;
            if !zero {
                edges.push((i, j));
            }
        }
    }
    Ok(SepMatrixReport { vanishes, partition: Partition::from_edges(n, edges) })
}
