use serde::Serialize;

use super::TheoryError;

/// `ln C(k, s) + s ln p + (k − s) ln(1 − p)`, computed with `lgamma`.
pub fn binom_log_pmf(k: u64, s: u64, p: f64) -> Result<f64, TheoryError> {
    if s > k {
        return Err(TheoryError::Domain(format!("s = {s} exceeds k = {k}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(TheoryError::Domain(format!("p = {p} must lie in [0, 1]")));
    }
    let (kf, sf) = (k as f64, s as f64);
    let log_choose = if s == 0 || s == k {
        0.0
    } else {
        libm::lgamma(kf + 1.0) - libm::lgamma(sf + 1.0) - libm::lgamma(kf - sf + 1.0)
    };
    let success = if s == 0 { 0.0 } else { sf * p.ln() };
    let failure = if s == k { 0.0 } else { (kf - sf) * (-p).ln_1p() };
    Ok(log_choose + success + failure)
}

/// One finite-scale evaluation of the point-mass estimate: integers
/// `k = round(2L − x log_{1/p} ln n)` and `s = round(γL − x log_{1/p} ln n)`
/// with `L = log_{1/p} n`, and `ln(n · P[Bin(k, p) = s])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointMass {
    pub ln_n: f64,
    pub k: u64,
    pub s: u64,
    pub log_n_times_pmf: f64,
}

/// `ln_n` is passed directly so that scales like `n = 2^80` stay exact.
pub fn point_mass_scaling(ln_n: f64, p: f64, x: f64, gamma: f64) -> Result<PointMass, TheoryError> {
    if !(p > 0.0 && p < 1.0) || ln_n.is_nan() || ln_n <= 1.0 {
        return Err(TheoryError::Domain(format!(
            "need 0 < p < 1 and ln n > 1, got p = {p}, ln n = {ln_n}"
        )));
    }
    let base = (1.0 / p).ln();
    let l = ln_n / base;
    let shift = x * ln_n.ln() / base;
    let k = (2.0 * l - shift).round();
    let s = (gamma * l - shift).round();
    if s < 0.0 || s > k {
        return Err(TheoryError::Domain(format!("scale too small: k = {k}, s = {s}")));
    }
    let (k, s) = (k as u64, s as u64);
    Ok(PointMass {
        ln_n,
        k,
        s,
        log_n_times_pmf: ln_n + binom_log_pmf(k, s, p)?,
    })
}
