use serde::Serialize;

use super::TheoryError;

const MAX_TERMS: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentSeries {
    pub c: f64,
    /// Limit of (number of components)/n in G(n, c/n).
    pub gamma: f64,
    /// Limit of X_n/n, equal to `1 − gamma`.
    pub forest_fraction: f64,
    pub terms: u64,
    pub tail_bound: f64,
}

/// Upper bound on the tail past term `n`, from `i! ≥ √(2πi)(i/e)^i`: each
/// term is at most `r^i / (c √(2π) i^{5/2})` with `r = c e^{1−c} ≤ 1`.
fn tail_bound(c: f64, r: f64, n: u64) -> f64 {
    let nf = n as f64;
    let geometric = if r < 1.0 {
        r.powf(nf + 1.0) / ((1.0 - r) * (nf + 1.0).powf(2.5))
    } else {
        f64::INFINITY
    };
    let integral = (2.0 / 3.0) * nf.powf(-1.5);
    geometric.min(integral) / (c * (2.0 * std::f64::consts::PI).sqrt())
}

/// `γ(c) = (1/c) Σ_{i≥1} i^{i−2}/i! (c e^{−c})^i`, summed in log space until
/// the rigorous tail bound drops below `tol`.
pub fn gamma_c(c: f64, tol: f64) -> Result<ComponentSeries, TheoryError> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(TheoryError::Domain(format!("c = {c} must lie in (0, 1]")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(TheoryError::Domain(format!("tolerance {tol} must be positive")));
    }
    let log_x = c.ln() - c;
    let r = c * (1.0 - c).exp();
    let mut sum = 0.0;
    let mut i = 0u64;
    loop {
        i += 1;
        let fi = i as f64;
        let log_term = (fi - 2.0) * fi.ln() - libm::lgamma(fi + 1.0) + fi * log_x - c.ln();
        sum += log_term.exp();
        let tail = tail_bound(c, r, i);
        if tail <= tol {
            return Ok(ComponentSeries {
                c,
                gamma: sum,
                forest_fraction: 1.0 - sum,
                terms: i,
                tail_bound: tail,
            });
        }
        if i >= MAX_TERMS {
            return Err(TheoryError::NoConvergence(format!(
                "series tail still {tail:e} after {i} terms at c = {c}"
            )));
        }
    }
}
