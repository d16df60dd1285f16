//! Partitions of variable indices into disjoint blocks.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("variable index {index} out of range for {len} variables")]
    OutOfRange { index: usize, len: usize },
    #[error("variable index {0} appears in more than one block")]
    Overlap(usize),
    #[error("variable index {0} is not covered by any block")]
    Uncovered(usize),
}

/// Disjoint, exhaustive blocks over `{0, …, n−1}`.
///
/// Members are sorted within each block and blocks are sorted by their
/// smallest member, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock(b));
            }
            for &i in block.iter() {
                if i >= n {
                    return Err(PartitionError::OutOfRange { index: i, len: n });
                }
                if seen[i] {
                    return Err(PartitionError::Overlap(i));
                }
                seen[i] = true;
            }
            block.sort_unstable();
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Uncovered(i));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition { n, blocks: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        let blocks = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
        Partition { n, blocks }
    }

    /// Connected components of the graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut dsu = DisjointSets::new(n);
        for (a, b) in edges {
            dsu.union(a, b);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = dsu.find(i);
            by_root[r].push(i);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Index of the block holding variable `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&i))
    }

    /// True when every block of `self` lies inside one block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.n == coarser.n
            && self.blocks.iter().all(|b| {
                let target = coarser.block_of(b[0]);
                b.iter().all(|&i| coarser.block_of(i) == target)
            })
    }

    pub fn is_coarsening_of(&self, finer: &Partition) -> bool {
        finer.refines(self)
    }
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}
