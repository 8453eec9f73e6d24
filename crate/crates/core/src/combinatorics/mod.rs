//! Stirling numbers of the second kind, Bell numbers and polynomials, set
//! partitions of `{1..n}` and their white-dot/black-dot graphs.

mod graph;
mod partitions;
mod stirling;

pub use graph::{graph_to_dot, BellGraph};
pub use partitions::{
    enumerate_partitions, enumerate_partitions_with_limit, SetPartition, SetPartitions,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use stirling::{bell, bell_polynomial, connected_count, stirling2, StirlingTable};
