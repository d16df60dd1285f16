//! Tolerance-based separability for black-box expressions.
//!
//! Uses the margin identity `F(a)·F(x) = F(x_I, a_J)·F(a_I, x_J)`, which
//! needs no derivatives. Each unordered pair of variables is tested in the
//! plane through the anchor `a`, and the pairs whose relative residual
//! exceeds the tolerance are joined into blocks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{ExprError, ExprNode, FloatEvaluator};
use crate::partition::Partition;

mod factors;

pub use factors::{numeric_factor_samples, reconstruction_error, factor_tables_at, FactorTable};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEGENERACY_FLOOR: f64 = 1e-300;
/// Products below `NOISE_FLOOR · F(a)²` are treated as rounding noise when
/// normalizing residuals inside the pair scan.
pub const NOISE_FLOOR: f64 = 1e-6;
/// Anchor candidates examined before switching to a seeded random subset.
pub const ANCHOR_CANDIDATES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("anchor value {0:e} is too close to zero")]
    DegenerateAnchor(f64),
    #[error("function vanishes (or is undefined) on every sampled point")]
    NoUsableAnchor,
    #[error("{skipped} of {total} evaluations hit domain errors")]
    TooManyDomainErrors { skipped: usize, total: usize },
    #[error("partition is not a coarsening of the detected partition")]
    IncompatiblePartition,
    #[error("partition covers {found} variables, expression has {expected}")]
    PartitionSize { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every coordinate pair of the two grids.
    Cartesian,
    /// `budget` points in total, split evenly across pairs and drawn from
    /// the grid with a seeded generator.
    RandomPairs { seed: u64, budget: usize },
}

/// Per-variable sample coordinates and how to walk them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    coords: Vec<Vec<f64>>,
    strategy: Strategy,
}

impl SampleGrid {
    pub fn new(coords: Vec<Vec<f64>>, strategy: Strategy) -> Result<Self, NumericError> {
        for (i, c) in coords.iter().enumerate() {
            if c.iter().any(|v| !v.is_finite()) {
                return Err(NumericError::InvalidGrid(alloc::format!("variable {i} has a non-finite coordinate")));
            }
            let distinct = c.iter().any(|v| *v != c[0]);
            if c.len() < 2 || !distinct {
                return Err(NumericError::InvalidGrid(alloc::format!(
                    "variable {i} needs at least 2 distinct coordinates"
                )));
            }
        }
        let n = coords.len();
        if let Strategy::RandomPairs { budget, .. } = strategy {
            let pairs = n * n.saturating_sub(1) / 2;
            if budget < pairs {
                return Err(NumericError::InvalidGrid(alloc::format!(
                    "budget {budget} is below the {pairs} tested pairs"
                )));
            }
        }
        Ok(SampleGrid { coords, strategy })
    }

    /// `count` evenly spaced points on `[start, stop]` for each of `n`
    /// variables.
    pub fn uniform(n: usize, start: f64, stop: f64, count: usize) -> Result<Self, NumericError> {
        SampleGrid::new(vec![linspace(start, stop, count); n], Strategy::Cartesian)
    }

    /// Nine points on `[−1.2, 1.2]` per variable.
    pub fn default_for(n: usize) -> Self {
        SampleGrid::uniform(n, -1.2, 1.2, 9).expect("valid default grid")
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Result<Self, NumericError> {
        self.strategy = strategy;
        SampleGrid::new(self.coords, self.strategy)
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn num_vars(&self) -> usize {
        self.coords.len()
    }

    /// Grid index tuples in row-major order (last variable fastest), or a
    /// seeded sample of `limit` of them when the full product is larger.
    fn candidate_indices(&self, vars: &[usize], limit: usize, seed: u64) -> Vec<Vec<usize>> {
        let sizes: Vec<usize> = vars.iter().map(|&v| self.coords[v].len()).collect();
        let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        match total {
            Some(t) if t <= limit => cartesian(&sizes),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..limit)
                    .map(|_| sizes.iter().map(|&s| rng.gen_range(0..s)).collect())
                    .collect()
            }
        }
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|k| {
                    if k == count - 1 {
                        stop
                    } else {
                        start + (stop - start) * (k as f64 / last)
                    }
                })
                .collect()
        }
    }
}

pub(crate) fn cartesian(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if sizes.contains(&0) {
        return out;
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        out.push(idx.clone());
        let mut r = sizes.len();
        loop {
            if r == 0 {
                return out;
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < sizes[r] {
                break;
            }
            idx[r] = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// Every variable is its own block.
    Separable,
    /// Several blocks, not all singletons.
    Partition,
    /// One block holding two or more variables.
    NotSeparable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericVerdict {
    /// Maximum relative residual per unordered pair; symmetric, zero
    /// diagonal.
    pub residuals: Vec<Vec<f64>>,
    pub anchor: Vec<f64>,
    pub anchor_value: f64,
    pub tolerance: f64,
    pub kind: VerdictKind,
    pub partition: Partition,
    pub evaluations: usize,
    pub skipped: usize,
}

impl NumericVerdict {
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .flatten()
            .fold(0.0, |m: f64, &r| m.max(r))
    }

    /// True when `partition` coarsens the detected one.
    pub fn admits(&self, partition: &Partition) -> bool {
        partition.is_coarsening_of(&self.partition)
    }
}

/// Relative residual of the margin identity for block `block` at anchor
/// `anchor` and test point `point`:
///
/// `|F(a)F(x) − F(x_I,a_J)F(a_I,x_J)| / max(|F(a)F(x)|, |F(x_I,a_J)F(a_I,x_J)|, floor)`.
pub fn margin_residual(
    f: &ExprNode,
    vars: &[String],
    block: &[usize],
    anchor: &[f64],
    point: &[f64],
) -> Result<f64, NumericError> {
    let eval = FloatEvaluator::new(f, vars)?;
    let n = vars.len();
    if anchor.len() != n || point.len() != n {
        return Err(NumericError::InvalidGrid(alloc::format!("points must have {n} coordinates")));
    }
    let fa = eval.eval(anchor)?;
    if fa.abs() <= DEGENERACY_FLOOR {
        return Err(NumericError::DegenerateAnchor(fa));
    }
    let mixed = |inside: &[f64], outside: &[f64]| -> Vec<f64> {
        (0..n).map(|k| if block.contains(&k) { inside[k] } else { outside[k] }).collect()
    };
    let fx = eval.eval(point)?;
    let f_xi_aj = eval.eval(&mixed(point, anchor))?;
    let f_ai_xj = eval.eval(&mixed(anchor, point))?;
    Ok(relative_residual(fa * fx, f_xi_aj * f_ai_xj, DEGENERACY_FLOOR))
}

fn relative_residual(lhs: f64, rhs: f64, floor: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(floor)
}

/// Counts evaluations and domain-error skips.
struct Sampler<'a> {
    eval: FloatEvaluator<'a>,
    evaluations: usize,
    skipped: usize,
}

impl Sampler<'_> {
    fn at(&mut self, point: &[f64]) -> Result<Option<f64>, NumericError> {
        self.evaluations += 1;
        match self.eval.eval(point) {
            Ok(v) => Ok(Some(v)),
            Err(ExprError::Domain { .. }) => {
                self.skipped += 1;
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Detects the finest partition of `f` over `vars` from pairwise margin
/// residuals on `grid`.
///
/// The anchor is the sampled point with the largest `|f|`. For each pair
/// `(i, j)` only coordinates `i` and `j` move; the rest stay at the anchor.
/// Domain errors are skipped, up to half of all evaluations.
pub fn numeric_finest_partition(
    f: &ExprNode,
    vars: &[String],
    grid: &SampleGrid,
    tol: f64,
) -> Result<NumericVerdict, NumericError> {
    let n = vars.len();
    if grid.num_vars() != n {
        return Err(NumericError::InvalidGrid(alloc::format!(
            "grid has {} variables, expression has {n}",
            grid.num_vars()
        )));
    }
    let mut sampler = Sampler { eval: FloatEvaluator::new(f, vars)?, evaluations: 0, skipped: 0 };
    let seed = match grid.strategy {
        Strategy::RandomPairs { seed, .. } => seed,
        Strategy::Cartesian => 0,
    };

    let all: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for idx in grid.candidate_indices(&all, ANCHOR_CANDIDATES, seed) {
        let point: Vec<f64> = idx.iter().enumerate().map(|(v, &k)| grid.coords[v][k]).collect();
        if let Some(value) = sampler.at(&point)? {
            if best.as_ref().is_none_or(|(b, _)| value.abs() > b.abs()) {
                best = Some((value, point));
            }
        }
    }
    let (fa, anchor) = best.ok_or(NumericError::NoUsableAnchor)?;
    if fa.abs() <= DEGENERACY_FLOOR {
        return Err(NumericError::NoUsableAnchor);
    }
    let floor = (fa * fa * NOISE_FLOOR).max(DEGENERACY_FLOOR);

    let mut residuals = vec![vec![0.0; n]; n];
    let mut edges = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let npairs = n * n.saturating_sub(1) / 2;
    for i in 0..n {
        for j in (i + 1)..n {
            let along = |sampler: &mut Sampler<'_>, v: usize| -> Result<Vec<Option<f64>>, NumericError> {
                grid.coords[v]
                    .iter()
                    .map(|&c| {
                        let mut p = anchor.clone();
                        p[v] = c;
                        sampler.at(&p)
                    })
                    .collect()
            };
            let fi = along(&mut sampler, i)?;
            let fj = along(&mut sampler, j)?;
            let pairs: Vec<(usize, usize)> = match grid.strategy {
                Strategy::Cartesian => cartesian(&[fi.len(), fj.len()]).into_iter().map(|p| (p[0], p[1])).collect(),
                Strategy::RandomPairs { budget, .. } => (0..(budget / npairs).max(1))
                    .map(|_| (rng.gen_range(0..fi.len()), rng.gen_range(0..fj.len())))
                    .collect(),
            };
            let mut worst: f64 = 0.0;
            for (u, v) in pairs {
                let (Some(a), Some(b)) = (fi[u], fj[v]) else { continue };
                let mut p = anchor.clone();
                p[i] = grid.coords[i][u];
                p[j] = grid.coords[j][v];
                let Some(fx) = sampler.at(&p)? else { continue };
                worst = worst.max(relative_residual(fa * fx, a * b, floor));
            }
            residuals[i][j] = worst;
            residuals[j][i] = worst;
            if worst > tol {
                edges.push((i, j));
            }
        }
    }
    if 2 * sampler.skipped > sampler.evaluations {
        return Err(NumericError::TooManyDomainErrors { skipped: sampler.skipped, total: sampler.evaluations });
    }

    let partition = Partition::from_edges(n, edges);
    let kind = if partition.is_singletons() {
        VerdictKind::Separable
    } else if partition.len() == 1 {
        VerdictKind::NotSeparable
    } else {
        VerdictKind::Partition
    };
    Ok(NumericVerdict {
        residuals,
        anchor,
        anchor_value: fa,
        tolerance: tol,
        kind,
        partition,
        evaluations: sampler.evaluations,
        skipped: sampler.skipped,
    })
}
