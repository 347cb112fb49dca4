use serde::Serialize;

use super::{binom_log_pmf, gamma_solve, TheoryError, GAMMA_TOL};

/// Constants of the dense-regime bounds; the defaults are the ones the
/// asymptotic argument uses and carry no optimality claim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenseConstants {
    /// Coefficient of `log_{1/p} log_{1/p} n` subtracted in `k_−`.
    pub k_minus: f64,
    /// Coefficient of `log_{1/p} ln n` added in the upper-bound `s`.
    pub s_upper: f64,
    /// Coefficient of `n log_{1/p} ln n` in the prediction radius.
    pub radius: f64,
}

impl Default for DenseConstants {
    fn default() -> Self {
        Self {
            k_minus: 9.0,
            s_upper: 3.0,
            radius: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenseParams {
    pub n: u64,
    pub p: f64,
    pub gamma: f64,
    pub k_plus: i64,
    /// Raw value; may be zero or negative at small `n`.
    pub k_minus: i64,
    pub s_upper: i64,
    pub ell_upper: f64,
    /// Clique size used for the attachment-degree scan.
    pub s_lower_k: i64,
    /// `None` when no `s` clears the threshold `ln⁴n / n` (always the case
    /// while that threshold exceeds 1).
    pub s_lower: Option<i64>,
    pub s_lower_degenerate: bool,
    pub prediction_center: f64,
    pub prediction_radius: f64,
}

/// `log_{1/p} x` through natural logarithms.
pub fn log_base(x: f64, p: f64) -> f64 {
    x.ln() / (1.0 / p).ln()
}

/// `⌈x⌉`, treating values within `1e-9` of an integer as that integer so
/// that e.g. `2 log₂ 1024` is exactly 20.
pub fn snapped_ceil(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as i64
    } else {
        x.ceil() as i64
    }
}

pub fn k_plus(n: f64, p: f64) -> i64 {
    snapped_ceil(2.0 * log_base(n, p))
}

pub fn k_minus_with(n: f64, p: f64, c: f64) -> i64 {
    let l = log_base(n, p);
    snapped_ceil(2.0 * l - c * log_base(l, p))
}

pub fn k_minus(n: f64, p: f64) -> i64 {
    k_minus_with(n, p, DenseConstants::default().k_minus)
}

/// Largest `s ≤ k` with `P[Bin(k, p) = s] ≥ ln⁴n / n`.
pub fn s_lower_scan(n: f64, p: f64, k: u64) -> Option<i64> {
    let log_threshold = 4.0 * n.ln().ln() - n.ln();
    (0..=k)
        .rev()
        .find(|&s| binom_log_pmf(k, s, p).is_ok_and(|v| v >= log_threshold))
        .map(|s| s as i64)
}

pub fn dense_params(n: u64, p: f64) -> Result<DenseParams, TheoryError> {
    dense_params_with(n, p, &DenseConstants::default())
}

pub fn dense_params_with(n: u64, p: f64, c: &DenseConstants) -> Result<DenseParams, TheoryError> {
    if n < 3 {
        return Err(TheoryError::Domain(format!("n = {n} must be at least 3")));
    }
    let gamma = gamma_solve(p, GAMMA_TOL)?.gamma;
    let nf = n as f64;
    let l = log_base(nf, p);
    let loglog = log_base(nf.ln(), p);
    let n_prime = (nf / nf.ln()).floor().max(3.0);
    let s_lower_k = k_minus_with(n_prime, p, c.k_minus).max(1);
    let s_lower = s_lower_scan(nf, p, s_lower_k as u64);
    let s_upper = (gamma * l + c.s_upper * loglog).round() as i64;
    Ok(DenseParams {
        n,
        p,
        gamma,
        k_plus: k_plus(nf, p),
        k_minus: k_minus_with(nf, p, c.k_minus),
        s_upper,
        ell_upper: s_upper as f64 * nf,
        s_lower_k,
        s_lower,
        s_lower_degenerate: s_lower.is_none(),
        prediction_center: gamma * nf * l,
        prediction_radius: c.radius * nf * loglog,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1024() {
        let d = dense_params(1024, 0.5).unwrap();
        assert_eq!(d.k_plus, 20);
        assert_eq!(d.k_minus, -9);
        assert!(d.k_minus <= d.k_plus);
        assert_eq!(d.ell_upper, d.s_upper as f64 * 1024.0);
        assert!(d.prediction_radius > 0.0);
        // ln⁴(1024)/1024 > 1, so no point mass clears the threshold
        assert!(d.s_lower_degenerate);
    }

    #[test]
    fn asymptotic_scale() {
        let d = dense_params(1 << 40, 0.5).unwrap();
        assert_eq!(d.k_plus, 80);
        assert_eq!(d.s_lower_k, 25);
        let s = d.s_lower.unwrap();
        assert_eq!(s, 24);
        assert!(s < d.s_upper);
    }

    #[test]
    fn snapping() {
        assert_eq!(snapped_ceil(20.000000000001), 20);
        assert_eq!(snapped_ceil(19.2), 20);
        assert_eq!(snapped_ceil(-9.897), -9);
        assert_eq!(k_plus(128.0, 0.5), 14);
    }

    #[test]
    fn constants_are_overridable() {
        let c = DenseConstants {
            k_minus: 0.0,
            ..DenseConstants::default()
        };
        assert_eq!(dense_params_with(1024, 0.5, &c).unwrap().k_minus, 20);
    }
}
