//! Truncated Fock-space numerics: an oracle independent of the symbolic code paths.
//!
//! Operators act on `span{|0>, ..., |N-1>}`. Every value that depends on the
//! truncation is produced through [`converge`], which doubles `N` until two
//! successive dimensions agree.

mod coherent;
mod expm;
mod matrix;
mod truncation;

pub use coherent::{expectation, CoherentVector};
pub use expm::matrix_exponential;
pub use matrix::{build_annihilation, build_creation, build_number, FockMatrix};
pub use truncation::{converge, trace_thermal, Converged, ThermalTrace, Truncation};
