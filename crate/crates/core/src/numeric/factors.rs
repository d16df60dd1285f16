use alloc::string::String;
use alloc::vec::Vec;

use super::{cartesian, NumericError, NumericVerdict, SampleGrid, ANCHOR_CANDIDATES, DEGENERACY_FLOOR, NOISE_FLOOR};
use crate::expr::{ExprError, ExprNode, FloatEvaluator};
use crate::partition::Partition;

/// Sampled values of one block factor over the block's sub-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorTable {
    pub block: Vec<usize>,
    /// Grid index per block variable, row-major with the last fastest.
    pub indices: Vec<Vec<usize>>,
    pub coords: Vec<Vec<f64>>,
    /// `None` where the function hit a domain error.
    pub values: Vec<Option<f64>>,
    sizes: Vec<usize>,
}

impl FactorTable {
    /// Value at the given grid indices of the block variables.
    pub fn value_at(&self, block_indices: &[usize]) -> Option<f64> {
        let mut flat = 0;
        for (&k, &s) in block_indices.iter().zip(&self.sizes) {
            flat = flat * s + k;
        }
        self.values.get(flat).copied().flatten()
    }
}

/// Per-block factor tables compatible with `verdict`: `partition` must
/// coarsen the detected partition. Uses the verdict's anchor.
pub fn numeric_factor_samples(
    f: &ExprNode,
    vars: &[String],
    grid: &SampleGrid,
    partition: &Partition,
    verdict: &NumericVerdict,
) -> Result<Vec<FactorTable>, NumericError> {
    if partition.num_vars() != vars.len() {
        return Err(NumericError::PartitionSize { expected: vars.len(), found: partition.num_vars() });
    }
    if !verdict.admits(partition) {
        return Err(NumericError::IncompatiblePartition);
    }
    factor_tables_at(f, vars, grid, partition, &verdict.anchor)
}

/// Margin tables at `anchor`. With blocks `I_1 … I_r`, table `s` holds
/// `F(x_{I_s}, a_rest) / F(a)` for `s < r` and `F(x_{I_r}, a_rest)` for the
/// last block, so the product of the tables is `F` when `F` separates.
pub fn factor_tables_at(
    f: &ExprNode,
    vars: &[String],
    grid: &SampleGrid,
    partition: &Partition,
    anchor: &[f64],
) -> Result<Vec<FactorTable>, NumericError> {
    let n = vars.len();
    if partition.num_vars() != n {
        return Err(NumericError::PartitionSize { expected: n, found: partition.num_vars() });
    }
    if anchor.len() != n || grid.num_vars() != n {
        return Err(NumericError::InvalidGrid(alloc::format!("anchor and grid must have {n} coordinates")));
    }
    let eval = FloatEvaluator::new(f, vars)?;
    let fa = eval.eval(anchor)?;
    if fa.abs() <= DEGENERACY_FLOOR {
        return Err(NumericError::DegenerateAnchor(fa));
    }
    let last = partition.len().saturating_sub(1);
    partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(s, block)| {
            let sizes: Vec<usize> = block.iter().map(|&v| grid.coords()[v].len()).collect();
            let indices = cartesian(&sizes);
            let mut coords = Vec::with_capacity(indices.len());
            let mut values = Vec::with_capacity(indices.len());
            for idx in &indices {
                let mut point = anchor.to_vec();
                let c: Vec<f64> = block.iter().zip(idx).map(|(&v, &k)| grid.coords()[v][k]).collect();
                for (&v, &x) in block.iter().zip(&c) {
                    point[v] = x;
                }
                let value = match eval.eval(&point) {
                    Ok(y) if s < last => Some(y / fa),
                    Ok(y) => Some(y),
                    Err(ExprError::Domain { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                coords.push(c);
                values.push(value);
            }
            Ok(FactorTable { block: block.clone(), indices, coords, values, sizes })
        })
        .collect()
}

/// Largest relative mismatch between `F` and the product of `tables` over
/// the grid (or a seeded sample of it). Points where anything is undefined
/// are skipped.
pub fn reconstruction_error(
    f: &ExprNode,
    vars: &[String],
    grid: &SampleGrid,
    tables: &[FactorTable],
    anchor: &[f64],
) -> Result<f64, NumericError> {
    let eval = FloatEvaluator::new(f, vars)?;
    let scale = eval.eval(anchor)?.abs() * NOISE_FLOOR;
    let all: Vec<usize> = (0..vars.len()).collect();
    let mut worst: f64 = 0.0;
    for idx in grid.candidate_indices(&all, ANCHOR_CANDIDATES, 0) {
        let point: Vec<f64> = idx.iter().enumerate().map(|(v, &k)| grid.coords()[v][k]).collect();
        let fx = match eval.eval(&point) {
            Ok(y) => y,
            Err(ExprError::Domain { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        let product = tables.iter().try_fold(1.0, |acc, t| {
            let sub: Vec<usize> = t.block.iter().map(|&v| idx[v]).collect();
            t.value_at(&sub).map(|y| acc * y)
        });
        let Some(product) = product else { continue };
        let err = (fx - product).abs() / fx.abs().max(product.abs()).max(scale).max(DEGENERACY_FLOOR);
        worst = worst.max(err);
    }
    Ok(worst)
}
