use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `n` streamed without an explicit override; `B(14)` is about 1.9e8.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

/// A partition of `{1..n}`; blocks are sorted internally and ordered by
/// their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, checking they cover `{1..n}`
    /// disjointly, and puts it in canonical order.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("partition of the empty set".into()));
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidArgument(format!("element {e} out of range or repeated")));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidArgument("blocks do not cover 1..n".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// From a restricted growth string (`rgs[i]` is the 0-based block of element `i+1`).
    fn from_rgs(rgs: &[usize], block_count: usize) -> Self {
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n: rgs.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// 0-based block index of each element `1..=n`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e - 1] = b;
            }
        }
        out
    }
}

/// Streams every partition of `{1..n}` in restricted-growth-string order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        SetPartitions { rgs: vec![0; n], prefix_max: vec![0; n], done: false }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        // rightmost position that can still grow: rgs[i] <= max(rgs[0..i])
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let blocks = self.prefix_max.last().map_or(0, |m| m + 1);
        let item = SetPartition::from_rgs(&self.rgs, blocks);
        self.advance();
        Some(item)
    }
}

pub fn enumerate_partitions(n: usize) -> Result<SetPartitions> {
    enumerate_partitions_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_partitions_with_limit(n: usize, limit: usize) -> Result<SetPartitions> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    Ok(SetPartitions::new(n))
}
