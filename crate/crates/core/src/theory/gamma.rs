use serde::Serialize;

use super::TheoryError;

/// Keeps the solver strictly inside the open bracket.
const EDGE_MARGIN: f64 = 1e-12;
const MAX_ITER: usize = 500;

fn check_p(p: f64) -> Result<(), TheoryError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(TheoryError::Domain(format!("p = {p} must lie in (0, 1)")))
    }
}

/// `γ ln(2/γ) + (2−γ) ln(2/(2−γ)) − (2−γ) ln(1/(1−p)) + (1−γ) ln(1/p)`.
pub fn g_eval(gamma: f64, p: f64) -> Result<f64, TheoryError> {
    check_p(p)?;
    if !(gamma > 0.0 && gamma < 2.0) {
        return Err(TheoryError::Domain(format!("gamma = {gamma} must lie in (0, 2)")));
    }
    Ok(g_unchecked(gamma, p))
}

fn g_unchecked(gamma: f64, p: f64) -> f64 {
    let rest = 2.0 - gamma;
    gamma * (2.0 / gamma).ln() + rest * (2.0 / rest).ln() + rest * (-p).ln_1p() - (1.0 - gamma) * p.ln()
}

/// `g′(γ) = ln((2−γ)p / (γ(1−p)))`, negative on the whole bracket.
pub fn g_prime(gamma: f64, p: f64) -> Result<f64, TheoryError> {
    g_eval(gamma, p)?;
    Ok(g_prime_unchecked(gamma, p))
}

fn g_prime_unchecked(gamma: f64, p: f64) -> f64 {
    ((2.0 - gamma) * p / (gamma * (1.0 - p))).ln()
}

/// Open bracket `(max{1, 2p}, 2)` holding the unique root.
pub fn gamma_bracket(p: f64) -> (f64, f64) {
    ((2.0 * p).max(1.0), 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaSolution {
    pub p: f64,
    pub gamma: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection down to width `1e-6`, then Newton steps kept inside the
/// current bracket until `|g| ≤ tol`.
pub fn gamma_solve(p: f64, tol: f64) -> Result<GammaSolution, TheoryError> {
    check_p(p)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(TheoryError::Domain(format!("tolerance {tol} must be positive")));
    }
    let (a, b) = gamma_bracket(p);
    let (mut lo, mut hi) = (a + EDGE_MARGIN, b - EDGE_MARGIN);
    if !(g_unchecked(lo, p) > 0.0 && g_unchecked(hi, p) < 0.0) {
        return Err(TheoryError::NoConvergence(format!(
            "no sign change on the bracket at p = {p}"
        )));
    }
    let mut iterations = 0;
    while hi - lo > 1e-6 {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if g_unchecked(mid, p) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let mut gx = g_unchecked(x, p);
    while gx.abs() > tol {
        if iterations >= MAX_ITER {
            return Err(TheoryError::NoConvergence(format!(
                "|g| = {} after {iterations} iterations at p = {p}",
                gx.abs()
            )));
        }
        iterations += 1;
        if gx > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = x - gx / g_prime_unchecked(x, p);
        let next = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        if next == x {
            break;
        }
        x = next;
        gx = g_unchecked(x, p);
    }
    if gx.abs() > tol {
        return Err(TheoryError::NoConvergence(format!(
            "stalled at |g| = {} for p = {p}",
            gx.abs()
        )));
    }
    Ok(GammaSolution {
        p,
        gamma: x,
        residual: gx.abs(),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn endpoint_values_at_half() {
        assert!((g_eval(1.0, 0.5).unwrap() - LN2).abs() < 1e-15);
        assert!((g_eval(1.0 - 1e-15, 0.5).unwrap() - LN2).abs() < 1e-12);
        assert!((g_eval(2.0 - 1e-12, 0.5).unwrap() + LN2).abs() < 1e-9);
        for p in [0.1, 0.3, 0.6, 0.9] {
            // g(2p) = ln(1/p), g(1) = ln(4(1-p))
            assert!((g_eval(2.0 * p, p).unwrap() - (1.0 / p).ln()).abs() < 1e-12);
            assert!((g_eval(1.0, p).unwrap() - (4.0 * (1.0 - p)).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(g_eval(1.0, 0.0).is_err());
        assert!(g_eval(2.0, 0.5).is_err());
        assert!(gamma_solve(1.0, 1e-10).is_err());
        assert!(gamma_solve(0.5, 0.0).is_err());
    }

    #[test]
    fn solves_half() {
        let s = gamma_solve(0.5, 1e-12).unwrap();
        assert!((s.gamma - 1.7799).abs() < 1e-4, "gamma = {}", s.gamma);
        let lhs = s.gamma * (2.0 / s.gamma).ln() + (2.0 - s.gamma) * (2.0 / (2.0 - s.gamma)).ln();
        assert!((lhs - LN2).abs() < 1e-11);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(x, p) in &[(1.2, 0.3), (1.7, 0.5), (1.9, 0.8)] {
            let h = 1e-6;
            let fd = (g_eval(x + h, p).unwrap() - g_eval(x - h, p).unwrap()) / (2.0 * h);
            assert!((fd - g_prime(x, p).unwrap()).abs() < 1e-6);
        }
    }
}
