use rand::{Rng, RngCore};

use super::{Graph, GraphError, GraphLimits, RngSeed};

/// Below this probability pairs are sampled by geometric skipping.
const SKIP_THRESHOLD: f64 = 0.01;

/// Samples G(n, p) from the seeded stream with default limits.
pub fn gen_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph, GraphError> {
    gen_gnp_with(n, p, seed, &GraphLimits::default())
}

/// Samples G(n, p): every unordered pair independently with probability `p`.
///
/// For `p >= 0.01` each pair `(u, v)`, `u < v`, in lexicographic order
/// consumes one 64-bit draw. Sparser graphs use Batagelj–Brandes geometric
/// skipping over the pairs ordered by larger endpoint. The two paths agree in
/// distribution, not bit-for-bit.
pub fn gen_gnp_with(n: usize, p: f64, seed: RngSeed, limits: &GraphLimits) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    if n > u32::MAX as usize {
        return Err(GraphError::TooManyVertices(n));
    }
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    let required = limits.estimate_bytes(n, pairs * p);
    if required > limits.memory_cap {
        return Err(GraphError::MemoryCap {
            required,
            cap: limits.memory_cap,
        });
    }

    let mut rng = seed.rng();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    if p == 0.0 || n < 2 {
        // nothing to sample
    } else if p >= SKIP_THRESHOLD {
        let full = p >= 1.0;
        // p < 1 here, so the product stays below 2^64
        let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
        for u in 0..n {
            for v in u + 1..n {
                if full || rng.next_u64() < threshold {
                    adj[u].push(v as u32);
                    adj[v].push(u as u32);
                }
            }
        }
    } else {
        let log_q = (-p).ln_1p();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((-r).ln_1p() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                adj[w as usize].push(v as u32);
                adj[v].push(w as u32);
            }
        }
    }
    Ok(Graph::from_sorted_lists(adj, limits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_extremes() {
        let seed = RngSeed::new(1, 0);
        assert_eq!(gen_gnp(5, 0.0, seed).unwrap().m(), 0);
        let k5 = gen_gnp(5, 1.0, seed).unwrap();
        assert_eq!(k5.m(), 10);
        assert_eq!(k5, Graph::complete(5));
    }

    #[test]
    fn rejects_bad_probability() {
        assert_eq!(
            gen_gnp(3, 1.5, RngSeed::new(0, 0)).unwrap_err(),
            GraphError::InvalidProbability(1.5)
        );
        assert!(gen_gnp(3, -0.1, RngSeed::new(0, 0)).is_err());
    }

    #[test]
    fn memory_cap_is_enforced() {
        let limits = GraphLimits {
            memory_cap: 1 << 20,
            ..GraphLimits::default()
        };
        let err = gen_gnp_with(10_000, 0.5, RngSeed::new(0, 0), &limits).unwrap_err();
        assert!(matches!(err, GraphError::MemoryCap { .. }));
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        let a = gen_gnp(300, 0.1, RngSeed::new(7, 3)).unwrap();
        let b = gen_gnp(300, 0.1, RngSeed::new(7, 3)).unwrap();
        let c = gen_gnp(300, 0.1, RngSeed::new(7, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let s1 = gen_gnp(2000, 0.002, RngSeed::new(7, 3)).unwrap();
        let s2 = gen_gnp(2000, 0.002, RngSeed::new(7, 3)).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn edge_count_within_four_sigma_dense() {
        let n = 10_000usize;
        let g = gen_gnp(n, 0.5, RngSeed::new(2024, 0)).unwrap();
        let pairs = (n * (n - 1) / 2) as f64;
        let sd = (pairs * 0.25).sqrt();
        assert!((g.m() as f64 - 24_997_500.0).abs() <= 4.0 * sd, "m = {}", g.m());
    }

    #[test]
    fn both_samplers_match_in_mean() {
        // straddle the switch point: same mean edge count within 4 sigma
        for &p in &[0.009, 0.011] {
            let n = 3000usize;
            let pairs = (n * (n - 1) / 2) as f64;
            let mut total = 0.0;
            let trials = 8;
            for s in 0..trials {
                total += gen_gnp(n, p, RngSeed::new(99, s)).unwrap().m() as f64;
            }
            let mean = total / trials as f64;
            let sd = (pairs * p * (1.0 - p) / trials as f64).sqrt();
            assert!((mean - pairs * p).abs() <= 4.0 * sd, "p={p} mean={mean}");
        }
    }

    #[test]
    fn skip_sampler_degree_distribution_is_uniform_over_pairs() {
        // vertex 0 and vertex n-1 must have the same expected degree
        let n = 400usize;
        let p = 0.005;
        let (mut first, mut last) = (0usize, 0usize);
        for s in 0..400 {
            let g = gen_gnp(n, p, RngSeed::new(5, s)).unwrap();
            first += g.degree(0);
            last += g.degree(n - 1);
        }
        let expected = 400.0 * (n - 1) as f64 * p;
        let sd = (expected).sqrt();
        assert!((first as f64 - expected).abs() < 4.0 * sd);
        assert!((last as f64 - expected).abs() < 4.0 * sd);
    }
}
