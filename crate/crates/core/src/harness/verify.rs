use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use super::config::{Method, Overrides, Param};
use super::run::{run_method, trial_seed};
use crate::chordality::{
    decode_chordal, encode_chordal, h_family_member, is_chordal, mcs_order, random_connected_chordal, sample_chordal,
    sample_code, PeoCode,
};
use crate::graph::{blocks, component_count, gen_gnp, Graph, RngSeed};
use crate::oracle::{
    all_graphs_chordality_census, has_induced_cycle_brute, masks, max_chordal_exact, max_clique_exact, OracleOptions,
};
use crate::sparse::{build_fj, square_path_gadget, x_sequence, Balance};
use crate::theory::{g_eval, gamma_bracket, gamma_solve, Alpha, GAMMA_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub master_seed: u64,
    pub fault_injected: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type Outcome = Result<String, String>;

fn timed(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let r = f();
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
        seconds,
    }
}

fn gamma_check() -> Outcome {
    let s = gamma_solve(0.5, GAMMA_TOL).map_err(|e| e.to_string())?;
    if !(1.7794..=1.7804).contains(&s.gamma) || s.residual.abs() > 1e-10 {
        return Err(format!("gamma(0.5) = {} with residual {:e}", s.gamma, s.residual));
    }
    for i in 1..20 {
        let p = i as f64 * 0.05;
        let (lo, hi) = gamma_bracket(p);
        let (lo, hi) = (lo + 1e-9, hi - 1e-9);
        let (a, b) = (
            g_eval(lo, p).map_err(|e| e.to_string())?,
            g_eval(hi, p).map_err(|e| e.to_string())?,
        );
        if !(a > 0.0 && b < 0.0) {
            return Err(format!("bracket signs fail at p = {p}: g({lo}) = {a}, g({hi}) = {b}"));
        }
    }
    Ok(format!("gamma(0.5) = {:.10}", s.gamma))
}

fn sample_code_check() -> Outcome {
    let g = decode_chordal(&sample_code()).map_err(|e| e.to_string())?;
    if g != sample_chordal() {
        return Err("decoded sample differs from the sample graph".into());
    }
    let identity: Vec<usize> = (0..8).collect();
    let code = encode_chordal(&sample_chordal(), &identity).map_err(|e| e.to_string())?;
    if code != sample_code() {
        return Err(format!("encoded sample differs:\n{code}"));
    }
    Ok("13-edge sample decodes and encodes bit-exactly".into())
}

fn flip_first_bit(code: &mut PeoCode) -> bool {
    for v in code.vectors.iter_mut() {
        if let Some(b) = v.first_mut() {
            *b = !*b;
            return true;
        }
    }
    false
}

/// Encode, print, parse, decode; with `fault` one bit is flipped after
/// encoding, which the comparison must catch.
fn round_trip_check(master: u64, count: usize, fault: bool) -> Outcome {
    let mut injected = !fault;
    for t in 0..count {
        let seed = trial_seed(master, 1000, t);
        let n = 2 + (seed % 30) as usize;
        let g = random_connected_chordal(n, 0.5, RngSeed::new(seed, 0));
        let mut code = encode_chordal(&g, &mcs_order(&g)).map_err(|e| format!("seed {seed}: {e}"))?;
        if !injected && flip_first_bit(&mut code) {
            injected = true;
        }
        let parsed: PeoCode = code.to_string().parse().map_err(|e| format!("seed {seed}: {e}"))?;
        let h = decode_chordal(&parsed).map_err(|e| format!("seed {seed}: decode failed: {e}"))?;
        if h != g {
            return Err(format!("seed {seed}: decoded graph differs from the encoded one"));
        }
    }
    Ok(format!("{count} random chordal graphs round-tripped"))
}

fn census_check(n_max: usize) -> Outcome {
    const LABELLED: [u64; 8] = [1, 1, 2, 8, 61, 822, 18154, 617675];
    const UNLABELLED: [u64; 7] = [1, 1, 2, 4, 10, 27, 94];
    let rows = all_graphs_chordality_census(n_max).map_err(|e| e.to_string())?;
    for r in &rows {
        if r.disagreements > 0 {
            return Err(format!("n = {}: {} disagreements", r.n, r.disagreements));
        }
        if r.labelled_chordal != LABELLED[r.n] {
            return Err(format!("n = {}: {} labelled chordal graphs", r.n, r.labelled_chordal));
        }
        if let Some(u) = r.unlabelled_chordal {
            if u != UNLABELLED[r.n] {
                return Err(format!("n = {}: {u} unlabelled chordal graphs", r.n));
            }
        }
    }
    Ok(format!("census through n = {n_max} agrees"))
}

fn random_chordality_check(master: u64, count: usize) -> Outcome {
    for t in 0..count {
        let seed = trial_seed(master, 2000, t);
        let mut rng = RngSeed::new(seed, 1).rng();
        let n = rng.random_range(7..=12);
        let p = rng.random_range(0.2..0.8);
        let g = gen_gnp(n, p, RngSeed::new(seed, 0)).map_err(|e| e.to_string())?;
        if is_chordal(&g).is_chordal() == has_induced_cycle_brute(&masks(&g)) {
            return Err(format!(
                "seed {seed}: recognition disagrees with brute force (n = {n}, p = {p})"
            ));
        }
    }
    Ok(format!("{count} random graphs agree"))
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

fn oracle_check() -> Outcome {
    let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).expect("simple");
    let cases = [
        ("C4", cycle(4), 3),
        ("C5", cycle(5), 4),
        ("K23", k23, 4),
        ("K5", Graph::complete(5), 10),
    ];
    for (name, g, want) in cases {
        let r = max_chordal_exact(&g, &OracleOptions::default()).map_err(|e| e.to_string())?;
        if !r.proved || r.optimum != want {
            return Err(format!(
                "{name}: optimum {} (proved {}), expected {want}",
                r.optimum, r.proved
            ));
        }
    }
    Ok("C4 = 3, C5 = 4, K23 = 4, K5 = 10".into())
}

/// `n − Y_n ≤ construction ≤ oracle ≤ n(ω − 1)` on `G(8, 1/2)`, plus
/// H-family membership of every 2-connected block of every output.
fn sandwich_check(master: u64, count: usize) -> Outcome {
    let p = Param::P(0.5);
    let sparse = Param::Alpha("9/20".parse::<Alpha>().expect("literal"));
    for t in 0..count {
        let seed = trial_seed(master, 3000, t);
        let g = gen_gnp(8, 0.5, RngSeed::new(seed, 0)).map_err(|e| e.to_string())?;
        let floor = 8 - component_count(&g);
        let opt = max_chordal_exact(&g, &OracleOptions::default()).map_err(|e| e.to_string())?;
        let omega = max_clique_exact(&g, u64::MAX).size();
        if !opt.proved || opt.optimum > 8 * omega.saturating_sub(1) || opt.optimum < floor {
            return Err(format!(
                "seed {seed}: oracle {} outside [{floor}, {}]",
                opt.optimum,
                8 * (omega - 1)
            ));
        }
        let runs = [
            (Method::DenseLb, p),
            (Method::CliqueUnion, p),
            (Method::PathPower, p),
            (Method::Forest, p),
            (Method::Sparse, sparse),
        ];
        for (method, param) in runs {
            let r = run_method(&g, method, &param, &Overrides::default())
                .map_err(|e| format!("seed {seed}: {method}: {e}"))?;
            if r.achieved_edges < floor || r.achieved_edges > opt.optimum {
                return Err(format!(
                    "seed {seed}: {method} has {} edges outside [{floor}, {}]",
                    r.achieved_edges, opt.optimum
                ));
            }
            for b in blocks(&r.subgraph.to_graph()) {
                let (bg, _) = b.compact();
                if bg.n() >= 3 && !h_family_member(&bg) {
                    return Err(format!(
                        "seed {seed}: {method} has a 2-connected block outside the H-family"
                    ));
                }
            }
        }
    }
    Ok(format!("{count} instances sandwiched"))
}

fn sparse_machinery_check() -> Outcome {
    let a: Alpha = "2/5".parse().expect("literal");
    let s = x_sequence(a, 7).map_err(|e| e.to_string())?;
    if s.xs != [1, 2, 3, 3, 3, 2, 3] || s.s_indices != [4, 5, 7] {
        return Err(format!("x-sequence {:?}, records {:?}", s.xs, s.s_indices));
    }
    for j in 1..=3 {
        let f = build_fj(a, j).map_err(|e| e.to_string())?;
        if f.strictly_balanced != Balance::VerifiedTrue {
            return Err(format!("F_{j} is not strictly 1-balanced"));
        }
    }
    for k in 1..=3i64 {
        let g = square_path_gadget(k as usize, 1).map_err(|e| e.to_string())?;
        if g.max_one_density != Some(num_rational::Ratio::new(1 + 2 * k, 1 + k)) {
            return Err(format!("square path k = {k}: max density {:?}", g.max_one_density));
        }
    }
    Ok("sequence, balance and densities match".into())
}

/// Runs the invariant battery. `fault` flips one bit of one tree code in the
/// round-trip check, which must then fail.
pub fn verify_suite(level: VerifyLevel, master: u64, fault: bool) -> VerifyReport {
    let full = level == VerifyLevel::Full;
    let checks = vec![
        timed("gamma-solver", gamma_check),
        timed("sample-code", sample_code_check),
        timed("code-round-trip", || {
            round_trip_check(master, if full { 2000 } else { 200 }, fault)
        }),
        timed("census", || census_check(if full { 6 } else { 5 })),
        timed("random-chordality", || {
            random_chordality_check(master, if full { 10_000 } else { 500 })
        }),
        timed("oracle-values", oracle_check),
        timed("sandwich", || sandwich_check(master, if full { 50 } else { 5 })),
        timed("sparse-machinery", sparse_machinery_check),
    ];
    VerifyReport {
        level,
        master_seed: master,
        fault_injected: fault,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_passes() {
        let r = verify_suite(VerifyLevel::Quick, 1, false);
        assert!(
            r.passed,
            "{:#?}",
            r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
    }

    #[test]
    fn flipped_bit_is_detected() {
        let c = round_trip_check(1, 20, true);
        assert!(c.is_err());
        assert!(round_trip_check(1, 20, false).is_ok());
    }
}
