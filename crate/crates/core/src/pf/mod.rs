//! Partition functions `Z = Tr exp(-beta H)` and partition-function
//! integrands `F(x, z) = <z| exp(x w) |z>` with `x = -beta eps`.
//!
//! Two models are covered: the free gas `H = eps a†a` and the single-mode
//! superfluid `H = eps (c1/2 a^2 + conj(c1)/2 a†^2 + c2 (a†a + 1/2))`, whose
//! exponential is disentangled through su(1,1). The free gas carries no
//! zero-point term while the superfluid keeps its `+1/2`, so at `c1 = 0,
//! c2 = 1` the two differ by the factor `exp(y2/2)`.

mod free_gas;
mod general;
mod methods;
mod su11;

pub use free_gas::{
    free_gas_pfi, free_gas_pfi_fock, free_gas_z_closed, free_gas_z_fock, free_gas_z_quadrature,
    free_gas_z_termwise, FreeGasParams,
};
pub use general::{
    general_pfi_series, general_pfi_series_with_cap, su11_expression, GeneralPfiSeries,
    DEFAULT_SERIES_CAP,
};
pub use methods::{Model, ZEstimate, ZMethod, ZMethodRegistry};
pub use su11::{
    su11_disentangle, su11_hamiltonian_matrix, su11_pfi, su11_pfi_fock, su11_pfi_real, su11_pfi_series,
    su11_vn_series, su11_z_fock, su11_z_quadrature, PfiVnSeries, Su11Disentanglement, Su11Params,
};
