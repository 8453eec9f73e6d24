use std::fmt::Write;

use super::SetPartition;

/// White dots `1..n`, one black dot per block, one edge from each white dot
/// to the black dot of its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellGraph {
    partition: SetPartition,
}

impl BellGraph {
    pub fn new(partition: SetPartition) -> Self {
        BellGraph { partition }
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn white_dots(&self) -> usize {
        self.partition.n()
    }

    pub fn black_dots(&self) -> usize {
        self.partition.block_count()
    }

    /// `(white, black)` pairs, both 1-based, ordered by white dot.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.partition.block_of().iter().enumerate().map(|(i, &b)| (i + 1, b + 1)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.black_dots() == 1
    }
}

impl From<SetPartition> for BellGraph {
    fn from(p: SetPartition) -> Self {
        BellGraph::new(p)
    }
}

/// DOT text with white nodes `w1..wn` (circles), black nodes `b1..bk`
/// (points) and one undirected edge `wi -- bj` per white dot.
pub fn graph_to_dot(g: &BellGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for i in 1..=g.white_dots() {
        writeln!(out, "  w{i} [shape=circle, label=\"{i}\"];").unwrap();
    }
    for j in 1..=g.black_dots() {
        writeln!(out, "  b{j} [shape=point];").unwrap();
    }
    for (w, b) in g.edges() {
        writeln!(out, "  w{w} -- b{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(dot: &str, needle: &str) -> usize {
        dot.lines().filter(|l| l.contains(needle)).count()
    }

    #[test]
    fn two_blocks_of_three() {
        let g = BellGraph::new(SetPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap());
        let dot = graph_to_dot(&g, "g");
        assert_eq!(count(&dot, "shape=circle"), 3);
        assert_eq!(count(&dot, "shape=point"), 2);
        assert_eq!(count(&dot, " -- "), 3);
        assert!(dot.contains("w3 -- b2;"));
        assert_eq!(dot, graph_to_dot(&g, "g"));
    }

    #[test]
    fn single_dot() {
        let g = BellGraph::new(SetPartition::new(1, vec![vec![1]]).unwrap());
        let dot = graph_to_dot(&g, "g");
        assert_eq!(dot, "graph g {\n  w1 [shape=circle, label=\"1\"];\n  b1 [shape=point];\n  w1 -- b1;\n}\n");
    }

    #[test]
    fn single_block_is_connected() {
        for n in 1..=6 {
            let g = BellGraph::new(SetPartition::new(n, vec![(1..=n).collect()]).unwrap());
            assert!(g.is_connected());
            assert_eq!(count(&graph_to_dot(&g, "g"), "shape=point"), 1);
        }
    }
}
