//! Exact combinatorics of boson normal ordering and the partition-function
//! integrands built from it.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: arbitrary-precision scalars and the [`exact::Coefficient`] ring trait
//! - [`combinatorics`]: Stirling and Bell numbers, Bell polynomials, set partitions and Bell graphs
//! - [`egf`]: truncated exponential generating functions with exact exp/log/reciprocal/sqrt
//! - [`boson`]: expression parser, normal ordering, coherent-state expectations
//! - [`fock`]: truncated Fock-space matrices used as an independent numerical oracle
//! - [`pf`]: free-gas and su(1,1) superfluid partition functions and their integrands
//! - [`verify`]: named cross-oracle checks, grouped into suites

pub mod boson;
pub mod combinatorics;
pub mod egf;
pub mod error;
pub mod exact;
pub mod fock;
pub mod numfmt;
pub mod pf;
pub mod poly;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
