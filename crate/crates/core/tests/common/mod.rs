#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use varsep_core::expr::{BinOp, ExprNode};
use varsep_core::rational::{int, ratio};
use varsep_core::{Partition, Polynomial, Rational};

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

pub fn poly_from(n: usize, terms: Vec<(Vec<u32>, i64)>) -> Polynomial {
    Polynomial::from_terms(names(n), terms.into_iter().map(|(e, c)| (e, int(c)))).unwrap()
}

/// Random polynomial over `n` variables with per-variable degree `<= deg`.
pub fn arb_poly(n: usize, deg: u32, max_terms: usize, coef: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -coef..=coef), 0..=max_terms)
        .prop_map(move |terms| poly_from(n, terms))
}

pub fn arb_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

/// Nonzero polynomial in the variables of `block`, over the full registry.
pub fn arb_block_factor(n: usize, block: Vec<usize>, deg: u32) -> impl Strategy<Value = Polynomial> {
    let k = block.len();
    prop::collection::vec((prop::collection::vec(0..=deg, k), -3i64..=3), 1..=4)
        .prop_map(move |terms| {
            let full = terms
                .into_iter()
                .map(|(e, c)| {
                    let mut exps = vec![0; n];
                    for (&v, d) in block.iter().zip(e) {
                        exps[v] = d;
                    }
                    (exps, c)
                })
                .collect();
            poly_from(n, full)
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Exact evaluation of an expression tree, `None` on division by zero or a
/// non-integer power.
pub fn eval_exact(e: &ExprNode, point: &BTreeMap<String, Rational>) -> Option<Rational> {
    Some(match e {
        ExprNode::Const(c) => c.clone(),
        ExprNode::Var(v) => point.get(v)?.clone(),
        ExprNode::Neg(a) => -eval_exact(a, point)?,
        ExprNode::Call(..) => return None,
        ExprNode::Binary(op, a, b) => {
            let a = eval_exact(a, point)?;
            let b = eval_exact(b, point)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b.is_zero() {
                        return None;
                    }
                    a / b
                }
                BinOp::Pow => {
                    if !b.is_integer() || b.is_negative() {
                        return None;
                    }
                    let k = b.to_integer().to_u32()?;
                    (0..k).fold(Rational::one(), |acc, _| acc * &a)
                }
            }
        }
    })
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let k = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *a -= &k * b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `f` splits as `g(x_I)·h(x_J)` for the split `I | J`, decided by
/// the rank of the coefficient matrix with rows indexed by `I`-monomials and
/// columns by `J`-monomials.
pub fn splits_along(f: &Polynomial, in_i: &[bool]) -> bool {
    let mut rows: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (e, c) in f.terms() {
        let (ri, cj): (Vec<u32>, Vec<u32>) = {
            let mut ri = Vec::new();
            let mut cj = Vec::new();
            for (v, &d) in e.as_slice().iter().enumerate() {
                if in_i[v] {
                    ri.push(d);
                } else {
                    cj.push(d);
                }
            }
            (ri, cj)
        };
        let nr = rows.len();
        let r = *rows.entry(ri).or_insert(nr);
        let nc = cols.len();
        let col = *cols.entry(cj).or_insert(nc);
        entries.push((r, col, c.clone()));
    }
    let mut m = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for (r, c, v) in entries {
        m[r][c] = v;
    }
    rank(m) <= 1
}

/// Finest partition by brute force over all `2^(n−1) − 1` two-block splits:
/// two variables share a block iff no valid split separates them.
pub fn brute_force_partition(f: &Polynomial) -> Partition {
    let n = f.nvars();
    let mut together = vec![vec![true; n]; n];
    if n >= 2 {
        for mask in 1u32..(1 << (n - 1)) {
            let in_i: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if splits_along(f, &in_i) {
                for a in 0..n {
                    for b in 0..n {
                        if in_i[a] != in_i[b] {
                            together[a][b] = false;
                        }
                    }
                }
            }
        }
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| together[a][b]);
    Partition::from_edges(n, edges.collect::<Vec<_>>())
}

/// All set partitions of `{0, …, n−1}`.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(k: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
        if k == n {
            out.push(Partition::new(n, blocks.clone()).unwrap());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(k);
            go(k + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![k]);
        go(k + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Whether `f` factors along every block of `p` (each block vs. the rest).
pub fn separates_along(f: &Polynomial, p: &Partition) -> bool {
    p.blocks().iter().all(|block| {
        let in_i: Vec<bool> = (0..f.nvars()).map(|v| block.contains(&v)).collect();
        splits_along(f, &in_i)
    })
}
