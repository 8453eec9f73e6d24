use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::Truncation;

use super::free_gas::{free_gas_z_closed, free_gas_z_fock, free_gas_z_quadrature, FreeGasParams};
use super::su11::{su11_z_fock, su11_z_quadrature, Su11Params};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    FreeGas(FreeGasParams),
    Su11(Su11Params),
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::FreeGas(_) => "free",
            Model::Su11(_) => "su11",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZEstimate {
    pub method: String,
    pub value: f64,
    /// Error estimate, when the method produces one.
    pub error: Option<f64>,
    /// Fock dimension used, for truncation methods.
    pub dim: Option<usize>,
}

/// A way of evaluating `Z` for a model.
pub trait ZMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn evaluate(&self, model: &Model, tol: f64) -> Result<ZEstimate>;
}

pub struct ClosedForm;

impl ZMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn evaluate(&self, model: &Model, _tol: f64) -> Result<ZEstimate> {
        match model {
            Model::FreeGas(p) => Ok(ZEstimate {
                method: self.name().into(),
                value: free_gas_z_closed(*p),
                error: None,
                dim: None,
            }),
            Model::Su11(_) => Err(Error::Unsupported { method: self.name().into(), model: model.to_string() }),
        }
    }
}

pub struct RadialQuadrature;

impl ZMethod for RadialQuadrature {
    fn name(&self) -> &'static str {
        "quadrature"
    }

    fn evaluate(&self, model: &Model, tol: f64) -> Result<ZEstimate> {
        let q = match model {
            Model::FreeGas(p) => free_gas_z_quadrature(p.beta_eps(), tol)?,
            Model::Su11(p) => su11_z_quadrature(*p, tol)?,
        };
        Ok(ZEstimate { method: self.name().into(), value: q.value, error: Some(q.error), dim: None })
    }
}

pub struct FockTrace;

impl ZMethod for FockTrace {
    fn name(&self) -> &'static str {
        "fock"
    }

    fn evaluate(&self, model: &Model, tol: f64) -> Result<ZEstimate> {
        let trunc = Truncation { rel_tol: tol, ..Truncation::default() };
        let t = match model {
            Model::FreeGas(p) => free_gas_z_fock(*p, trunc)?,
            Model::Su11(p) => su11_z_fock(*p, trunc)?,
        };
        Ok(ZEstimate { method: self.name().into(), value: t.value, error: Some(t.change), dim: Some(t.dim) })
    }
}

/// Named `Z` evaluators, iterated in name order.
#[derive(Clone, Default)]
pub struct ZMethodRegistry {
    methods: BTreeMap<&'static str, Arc<dyn ZMethod>>,
}

impl ZMethodRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::new();
        r.register(Arc::new(ClosedForm));
        r.register(Arc::new(RadialQuadrature));
        r.register(Arc::new(FockTrace));
        r
    }

    /// Adds `method`, replacing any previous entry of the same name.
    pub fn register(&mut self, method: Arc<dyn ZMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ZMethod>> {
        self.methods.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }
}
