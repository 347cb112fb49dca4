//! Closed-form and numerical quantities: the dense-regime constant γ(p),
//! clique-size and attachment parameters, exact binomial point masses, the
//! sparse-regime limits in α, and the component series γ(c).
//!
//! All logarithms are natural; `log_{1/p} x` is `ln x / ln(1/p)`.

mod alpha;
mod binomial;
mod dense;
mod gamma;
mod series;

use serde::Serialize;
use thiserror::Error;

pub use alpha::{is_boundary, k_alpha, sparse_limit, Alpha, SparsePrediction};
pub use binomial::{binom_log_pmf, point_mass_scaling, PointMass};
pub use dense::{
    dense_params, dense_params_with, k_minus, k_minus_with, k_plus, log_base, s_lower_scan, snapped_ceil,
    DenseConstants, DenseParams,
};
pub use gamma::{g_eval, g_prime, gamma_bracket, gamma_solve, GammaSolution};
pub use series::{gamma_c, ComponentSeries};

/// Residual tolerance used wherever γ(p) is needed internally.
pub const GAMMA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("alpha = {0} is a regime boundary, where the limit is open")]
    Boundary(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

/// JSON view of the dense parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenseReport {
    pub n: u64,
    pub p: f64,
    pub gamma: f64,
    pub k_plus: i64,
    pub k_minus: i64,
    pub s_upper: i64,
    pub s_lower: Option<i64>,
    pub s_lower_degenerate: bool,
    pub ell: f64,
    pub prediction_center: f64,
    pub prediction_radius: f64,
}

impl From<&DenseParams> for DenseReport {
    fn from(d: &DenseParams) -> Self {
        Self {
            n: d.n,
            p: d.p,
            gamma: d.gamma,
            k_plus: d.k_plus,
            k_minus: d.k_minus,
            s_upper: d.s_upper,
            s_lower: d.s_lower,
            s_lower_degenerate: d.s_lower_degenerate,
            ell: d.ell_upper,
            prediction_center: d.prediction_center,
            prediction_radius: d.prediction_radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum TheoryReport {
    Dense(DenseReport),
    Sparse(SparsePrediction),
}
