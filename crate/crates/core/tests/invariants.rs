use std::time::{Duration, Instant};

use bellpfi::combinatorics::{bell, connected_count};
use bellpfi::fock::Truncation;
use bellpfi::pf::{
    free_gas_pfi, free_gas_z_closed, free_gas_z_quadrature, free_gas_z_termwise, su11_pfi, su11_pfi_fock,
    su11_vn_series, su11_z_fock, su11_z_quadrature, FreeGasParams, Su11Params, ZMethodRegistry,
};
use bellpfi::exact::integer;
use bellpfi::verify::{run_suite, CheckRegistry, Suite};
use bellpfi::Error;
use num_complex::Complex64;
use num_traits::One;

#[test]
fn fast_suite_passes_within_budget() {
    let start = Instant::now();
    let records = run_suite(Suite::Fast);
    let elapsed = start.elapsed();
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(elapsed < Duration::from_secs(60), "{elapsed:?}");
}

#[test]
fn suite_output_is_deterministic() {
    let registry = CheckRegistry::with_defaults();
    let pick = |records: Vec<bellpfi::verify::CheckRecord>| serde_json::to_string(&records).unwrap();
    assert_eq!(pick(registry.run_suite(Suite::Fast)), pick(registry.run_suite(Suite::Fast)));
}

#[test]
fn superfluid_trace_small_beta() {
    let p = Su11Params::real(2.0, 4.0, -0.05);
    let fock = su11_z_fock(p, Truncation::default()).unwrap();
    let quad = su11_z_quadrature(p, 1e-10).unwrap();
    assert!((fock.value - quad.value).abs() < 1e-6, "{} vs {}", fock.value, quad.value);
    assert!(fock.dim >= 400);
    assert!(fock.imag_residue.abs() < 1e-9);
}

#[test]
fn superfluid_trace_matches_oscillator_spectrum() {
    // H/eps has spectrum w (n + 1/2) with w = sqrt(c2^2 - c1^2)
    for (c1, c2, beta_eps) in [(2.0f64, 4.0f64, 0.5f64), (1.0, 3.0, 0.2), (0.0, 1.0, 1.0)] {
        let w = (c2 * c2 - c1 * c1).sqrt();
        let want = (-0.5 * beta_eps * w).exp() / -(-beta_eps * w).exp_m1();
        let p = Su11Params::real(c1, c2, -beta_eps);
        let quad = su11_z_quadrature(p, 1e-10).unwrap().value;
        assert!((quad - want).abs() < 1e-7 * want, "quadrature {quad} vs {want}");
        let fock = su11_z_fock(p, Truncation::default()).unwrap().value;
        assert!((fock - want).abs() < 1e-7 * want, "fock {fock} vs {want}");
    }
}

#[test]
fn superfluid_pfi_off_axis() {
    let p = Su11Params::real(2.0, 4.0, -0.05);
    let z = Complex64::new(0.7, 0.0);
    let fock = su11_pfi_fock(p, z, Truncation::default()).unwrap();
    assert!((fock - su11_pfi(p, z).unwrap()).norm() < 1e-6);

    let p = Su11Params::new(Complex64::new(1.0, -1.5), 3.0, -0.1);
    let z = Complex64::new(0.4, 0.8);
    let fock = su11_pfi_fock(p, z, Truncation::default()).unwrap();
    assert!((fock - su11_pfi(p, z).unwrap()).norm() < 1e-6);
}

#[test]
fn zero_point_factor_separates_models() {
    for x in [-0.2, -0.5, -1.0] {
        for z in [0.0, 0.5, 1.2] {
            let z = Complex64::new(z, 0.0);
            let superfluid = su11_pfi(Su11Params::real(0.0, 1.0, x), z).unwrap();
            let free = free_gas_pfi(x, z);
            assert!((superfluid - free * (0.5 * x).exp()).norm() < 1e-14);
        }
    }
}

#[test]
fn x_zero_limit() {
    for z in [0.0, 0.3, 1.7] {
        let z = Complex64::new(z, -0.2);
        assert_eq!(free_gas_pfi(0.0, z), 1.0);
        assert!((su11_pfi(Su11Params::real(2.0, 4.0, 0.0), z).unwrap() - 1.0).norm() < 1e-15);
    }
    assert!(FreeGasParams::new(0.0).is_err());
    assert!(matches!(free_gas_z_quadrature(0.0, 1e-8), Err(Error::DivergentIntegrand(_))));
    assert!(matches!(su11_z_quadrature(Su11Params::real(2.0, 4.0, 0.0), 1e-8), Err(Error::DivergentIntegrand(_))));
}

#[test]
fn termwise_integration_rejected() {
    let p = FreeGasParams::new(1.0).unwrap();
    assert!(matches!(free_gas_z_termwise(p, 4), Err(Error::TermwiseDivergence)));
    assert!((free_gas_z_closed(p) - 1.5819767068693265).abs() < 1e-15);
}

#[test]
fn integer_sequences_for_even_parameters() {
    for (c1, c2) in [(2, 4), (0, 2), (4, 6), (2, 8)] {
        let s = su11_vn_series(&integer(c1), &integer(c2), 8);
        for v in &s.vn {
            assert!(v.is_integral(), "c1={c1}, c2={c2}: {v}");
            assert!(v.degree() <= 1);
        }
    }
    // odd parameters leave fractions behind
    let odd = su11_vn_series(&integer(1), &integer(3), 3);
    assert!(!odd.vn.iter().all(|v| v.is_integral()));
}

#[test]
fn every_bell_graph_has_one_connected_shape() {
    for n in 1..=16 {
        assert!(connected_count(n).is_one());
        assert!(bell(n) >= bell(n - 1));
    }
}

#[test]
fn method_registry_agrees_on_superfluid() {
    let r = ZMethodRegistry::with_defaults();
    let model = bellpfi::pf::Model::Su11(Su11Params::real(2.0, 4.0, -0.5));
    let quad = r.get("quadrature").unwrap().evaluate(&model, 1e-10).unwrap();
    let fock = r.get("fock").unwrap().evaluate(&model, 1e-10).unwrap();
    assert!((quad.value - fock.value).abs() < 1e-5);
    assert!(fock.dim.is_some());
}
