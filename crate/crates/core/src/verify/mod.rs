//! Named cross-oracle checks, each producing `{check, dim, value, tolerance, pass}` records.
//!
//! `value` is the observed discrepancy (zero for exact agreement, a mismatch
//! count for exact tables); a record passes when `value <= tolerance`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::boson::{
    coherent_expectation_at, normal_order, normal_order_word_naive, parse, stirling_from_normal_ordering,
    verify_forgetful_identity, BosonWord, Letter,
};
use crate::combinatorics::{bell, enumerate_partitions, StirlingTable};
use crate::egf::EgfSeries;
use crate::error::{Error, Result};
use crate::exact::{integer, ExactRational};
use crate::fock::{expectation, CoherentVector, FockMatrix, Truncation};
use crate::pf::{
    free_gas_pfi, free_gas_pfi_fock, free_gas_z_closed, free_gas_z_fock, free_gas_z_quadrature,
    general_pfi_series, su11_disentangle, su11_expression, su11_pfi, su11_pfi_fock, su11_pfi_real,
    su11_vn_series, su11_z_fock, su11_z_quadrature, FreeGasParams, Su11Params,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fast" => Ok(Suite::Fast),
            "all" => Ok(Suite::All),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    /// Whether a check tagged `tag` runs in this suite.
    pub fn includes(self, tag: Suite) -> bool {
        self == Suite::All || tag == Suite::Fast
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub dim: Option<usize>,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(check: &str, dim: Option<usize>, value: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.to_string(),
            dim,
            value,
            tolerance,
            pass: value <= tolerance,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn failed(check: &str, err: &Error) -> Self {
        CheckRecord {
            check: check.to_string(),
            dim: None,
            value: f64::NAN,
            tolerance: 0.0,
            pass: false,
            detail: Some(format!("{}: {err}", err.kind())),
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn suite(&self) -> Suite;
    fn run(&self) -> Result<Vec<CheckRecord>>;
}

struct FnCheck {
    name: &'static str,
    suite: Suite,
    body: fn(&'static str) -> Result<Vec<CheckRecord>>,
}

impl Check for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }
    fn suite(&self) -> Suite {
        self.suite
    }
    fn run(&self) -> Result<Vec<CheckRecord>> {
        (self.body)(self.name)
    }
}

#[derive(Clone, Default)]
pub struct CheckRegistry {
    checks: BTreeMap<&'static str, Arc<dyn Check>>,
}

impl CheckRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::new();
        let table: [(&'static str, Suite, fn(&'static str) -> Result<Vec<CheckRecord>>); 17] = [
            ("bell_table", Suite::Fast, bell_table),
            ("connected_graph_theorem", Suite::Fast, connected_graph_theorem),
            ("stirling_normal_ordering", Suite::Fast, stirling_normal_ordering),
            ("forgetful_identity", Suite::Fast, forgetful_identity),
            ("partition_enumeration", Suite::Fast, |n| partition_enumeration(n, 10)),
            ("partition_enumeration_full", Suite::All, |n| partition_enumeration(n, 12)),
            ("free_gas_triangle", Suite::Fast, free_gas_triangle),
            ("free_gas_pfi_fock", Suite::Fast, free_gas_pfi_check),
            ("su11_vn_table", Suite::Fast, su11_vn_table),
            ("su11_integer_sequence", Suite::Fast, su11_integer_sequence),
            ("su11_disentanglement", Suite::Fast, su11_disentanglement),
            ("su11_pfi_fock", Suite::Fast, su11_pfi_check),
            ("su11_complex_real_forms", Suite::Fast, su11_forms),
            ("su11_two_pipelines", Suite::Fast, two_pipelines),
            ("su11_z_quadrature_fock", Suite::Fast, su11_z_cross),
            ("operator_value_preservation", Suite::Fast, operator_value_preservation),
            ("symbolic_vs_fock_expectation", Suite::Fast, symbolic_vs_fock),
        ];
        for (name, suite, body) in table {
            r.register(Arc::new(FnCheck { name, suite, body }));
        }
        r
    }

    pub fn register(&mut self, check: Arc<dyn Check>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Check>> {
        self.checks.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.keys().copied().collect()
    }

    /// Runs every check in `suite` concurrently; records come back in check-name order.
    pub fn run_suite(&self, suite: Suite) -> Vec<CheckRecord> {
        let selected: Vec<&Arc<dyn Check>> = self.checks.values().filter(|c| suite.includes(c.suite())).collect();
        let results: Vec<Vec<CheckRecord>> = selected
            .par_iter()
            .map(|c| c.run().unwrap_or_else(|e| vec![CheckRecord::failed(c.name(), &e)]))
            .collect();
        results.into_iter().flatten().collect()
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckRecord> {
    CheckRegistry::with_defaults().run_suite(suite)
}

fn mismatches<T: PartialEq>(pairs: impl IntoIterator<Item = (T, T)>) -> f64 {
    pairs.into_iter().filter(|(a, b)| a != b).count() as f64
}

fn bell_table(name: &'static str) -> Result<Vec<CheckRecord>> {
    let want = [1u32, 2, 5, 15, 52, 203];
    let bad = mismatches((1..=6).map(|n| (bell(n), want[n - 1].into())));
    Ok(vec![CheckRecord::new(name, Some(6), bad, 0.0)])
}

fn connected_graph_theorem(name: &'static str) -> Result<Vec<CheckRecord>> {
    let order = 16;
    let connected = EgfSeries::from_fn(order, |n| if n == 0 { ExactRational::zero() } else { integer(1) });
    let bells = EgfSeries::from_fn(order, |n| ExactRational::from_integer(bell(n)));
    let exp_bad = mismatches(connected.exp()?.coeffs().iter().zip(bells.coeffs()));
    let log_bad = mismatches(bells.log()?.coeffs().iter().zip(connected.coeffs()));
    Ok(vec![
        CheckRecord::new(name, Some(order), exp_bad, 0.0).with_detail("exp"),
        CheckRecord::new(name, Some(order), log_bad, 0.0).with_detail("log"),
    ])
}

fn stirling_normal_ordering(name: &'static str) -> Result<Vec<CheckRecord>> {
    let n_max = 12;
    let table = StirlingTable::new(n_max);
    let mut bad = 0.0;
    for n in 0..=n_max {
        let from_ordering = stirling_from_normal_ordering(n);
        for k in 0..=n {
            let got = from_ordering.get(&k).cloned().unwrap_or_default();
            if got != table.get(n, k as i64) {
                bad += 1.0;
            }
        }
    }
    Ok(vec![CheckRecord::new(name, Some(n_max), bad, 0.0)])
}

fn forgetful_identity(name: &'static str) -> Result<Vec<CheckRecord>> {
    let report = verify_forgetful_identity(8);
    let bad = report.checks.iter().filter(|c| !c.matches).count() as f64;
    Ok(vec![CheckRecord::new(name, Some(8), bad, 0.0)])
}

fn partition_enumeration(name: &'static str, n_max: usize) -> Result<Vec<CheckRecord>> {
    let mut bad = 0.0;
    for n in 1..=n_max {
        if num_bigint::BigInt::from(enumerate_partitions(n)?.count()) != bell(n) {
            bad += 1.0;
        }
    }
    Ok(vec![CheckRecord::new(name, Some(n_max), bad, 0.0)])
}

fn free_gas_triangle(name: &'static str) -> Result<Vec<CheckRecord>> {
    let trunc = Truncation { rel_tol: 1e-10, ..Truncation::default() };
    let mut out = Vec::new();
    for beta_eps in [0.5, 1.0, 2.0] {
        let p = FreeGasParams::new(beta_eps)?;
        let closed = free_gas_z_closed(p);
        let quad = free_gas_z_quadrature(beta_eps, 1e-10)?.value;
        let fock = free_gas_z_fock(p, trunc)?;
        let spread = (closed - quad).abs().max((closed - fock.value).abs()).max((quad - fock.value).abs());
        out.push(CheckRecord::new(name, Some(fock.dim), spread, 1e-8).with_detail(format!("beta_eps={beta_eps}")));
    }
    let ln2 = FreeGasParams::new(std::f64::consts::LN_2)?;
    out.push(
        CheckRecord::new(name, None, (free_gas_z_closed(ln2) - 2.0).abs(), 1e-10).with_detail("beta_eps=ln2"),
    );
    Ok(out)
}

fn free_gas_pfi_check(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut worst: f64 = 0.0;
    for x in [-0.2, -0.5, -1.0] {
        for z in [0.0, 0.5, 1.0, 1.5] {
            let z = Complex64::new(z, 0.3 * z);
            let fock = free_gas_pfi_fock(x, z, Truncation::default())?;
            worst = worst.max((fock - free_gas_pfi(x, z)).norm());
        }
    }
    Ok(vec![CheckRecord::new(name, None, worst, 1e-8)])
}

fn su11_vn_table(name: &'static str) -> Result<Vec<CheckRecord>> {
    let s = su11_vn_series(&integer(2), &integer(4), 4);
    let want = [[2, 6], [2, 36], [16, 288], [144, 3024]];
    let bad = mismatches(s.vn.iter().zip(want.iter()).map(|(v, w)| (v.clone(), crate::poly::YPolynomial::from_integers(w))));
    Ok(vec![CheckRecord::new(name, Some(4), bad, 0.0)])
}

fn su11_integer_sequence(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (c1, c2) in [(2, 4), (0, 2), (2, 6), (4, 6)] {
        let s = su11_vn_series(&integer(c1), &integer(c2), 8);
        let non_integral = s.vn.iter().filter(|v| !v.is_integral()).count() as f64;
        let degree_excess = s.vn.iter().filter(|v| v.degree() > 1).count() as f64;
        out.push(
            CheckRecord::new(name, Some(8), non_integral + degree_excess, 0.0).with_detail(format!("c1={c1},c2={c2}")),
        );
    }
    Ok(out)
}

const X_GRID: [f64; 3] = [-0.2, -0.1, -0.05];
const Z_GRID: [f64; 3] = [0.0, 0.5, 1.0];
const C_GRID: [(f64, f64); 3] = [(0.0, 1.0), (1.0, 3.0), (2.0, 4.0)];

fn grid() -> impl Iterator<Item = Su11Params> {
    C_GRID
        .into_iter()
        .flat_map(|(c1, c2)| X_GRID.into_iter().map(move |x| Su11Params::real(c1, c2, x)))
}

fn su11_disentanglement(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut residual: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    for p in grid() {
        let d = su11_disentangle(p)?;
        residual = residual.max(d.residual);
        inverse = inverse.max((d.y2.exp() - 1.0 / d.mu).norm());
    }
    Ok(vec![
        CheckRecord::new(name, Some(2), residual, 1e-12).with_detail("reconstruction"),
        CheckRecord::new(name, Some(2), inverse, 1e-12).with_detail("exp(y2)=1/mu"),
    ])
}

fn su11_pfi_check(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut worst: f64 = 0.0;
    for p in grid() {
        for z in Z_GRID {
            let z = Complex64::new(z, 0.0);
            let fock = su11_pfi_fock(p, z, Truncation::default())?;
            worst = worst.max((fock - su11_pfi(p, z)?).norm());
        }
    }
    Ok(vec![CheckRecord::new(name, None, worst, 1e-6)])
}

fn su11_forms(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut worst: f64 = 0.0;
    for p in grid() {
        for z in Z_GRID {
            let complex = su11_pfi(p, Complex64::new(z, 0.0))?;
            let real = su11_pfi_real(p, z * z)?;
            worst = worst.max((complex - real).norm() / real.abs().max(1.0));
        }
    }
    Ok(vec![CheckRecord::new(name, None, worst, 1e-12)])
}

fn two_pipelines(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (c1, c2) in [(2, 4), (1, 3), (0, 1)] {
        let w = parse(&su11_expression(&integer(c1), &integer(c2)).to_string())?;
        let general = general_pfi_series(&w, 4)?.vn_real_axis()?;
        let direct = su11_vn_series(&integer(c1), &integer(c2), 4).vn;
        let bad = mismatches(general.into_iter().zip(direct));
        out.push(CheckRecord::new(name, Some(4), bad, 0.0).with_detail(format!("c1={c1},c2={c2}")));
    }
    Ok(out)
}

fn su11_z_cross(name: &'static str) -> Result<Vec<CheckRecord>> {
    let p = Su11Params::real(2.0, 4.0, -0.5);
    let quad = su11_z_quadrature(p, 1e-9)?.value;
    let fock = su11_z_fock(p, Truncation::default())?;
    let free = Su11Params::real(0.0, 1.0, -1.0);
    let free_quad = su11_z_quadrature(free, 1e-9)?.value;
    let free_want = (-0.5f64).exp() / -(-1.0f64).exp_m1();
    Ok(vec![
        CheckRecord::new(name, Some(fock.dim), (quad - fock.value).abs(), 1e-5).with_detail("c1=2,c2=4,beta_eps=0.5"),
        CheckRecord::new(name, None, (free_quad - free_want).abs(), 1e-6).with_detail("c1=0,c2=1,beta_eps=1"),
    ])
}

fn random_word(rng: &mut StdRng, max_len: usize) -> BosonWord {
    let len = rng.gen_range(0..=max_len);
    BosonWord::new((0..len).map(|_| if rng.gen_bool(0.5) { Letter::Ann } else { Letter::Cre }).collect())
}

fn operator_value_preservation(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    let mut naive_bad = 0.0;
    for _ in 0..200 {
        let word = random_word(&mut rng, 8);
        let dim = word.len() + 8 + rng.gen_range(0..8);
        let poly = word.normal_order();
        if normal_order_word_naive(&word) != poly {
            naive_bad += 1.0;
        }
        let keep = dim - word.len();
        let product = FockMatrix::from_word(&word, dim)?.top_left(keep);
        let normal = FockMatrix::from_normal_polynomial(&poly, dim)?.top_left(keep);
        let scale = product.max_abs().max(1.0);
        worst = worst.max(normal.sub(&product)?.max_abs() / scale);
    }
    Ok(vec![
        CheckRecord::new(name, None, worst, 1e-9).with_detail("matrix"),
        CheckRecord::new(name, None, naive_bad, 0.0).with_detail("naive rewriter"),
    ])
}

fn symbolic_vs_fock(name: &'static str) -> Result<Vec<CheckRecord>> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let dim = 80;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let word = random_word(&mut rng, 6);
        let poly = word.normal_order();
        let r = 2.0 * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let z = Complex64::from_polar(r, theta);
        let fock = expectation(&CoherentVector::new(z, dim), &FockMatrix::from_normal_polynomial(&poly, dim)?)?;
        let symbolic = coherent_expectation_at(&poly, z);
        worst = worst.max((fock - symbolic).norm());
    }
    let expr = normal_order(&parse("(a + ad)^4")?);
    let z = Complex64::new(0.7, -0.4);
    let fock = expectation(&CoherentVector::new(z, dim), &FockMatrix::from_normal_polynomial(&expr, dim)?)?;
    worst = worst.max((fock - coherent_expectation_at(&expr, z)).norm());
    Ok(vec![CheckRecord::new(name, Some(dim), worst, 1e-9)])
}
