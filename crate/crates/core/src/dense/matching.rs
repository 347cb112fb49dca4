use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum bipartite matching by Hopcroft–Karp. `adj[l]` lists the right
/// vertices adjacent to left vertex `l`; returns the partner of each left
/// vertex.
pub fn hopcroft_karp(right_n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let left_n = adj.len();
    let mut match_l = vec![FREE; left_n];
    let mut match_r = vec![FREE; right_n];
    let mut dist = vec![0usize; left_n];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left_n {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = match_r[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left_n {
            if match_l[l] == FREE {
                augment(l, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(l: usize, adj: &[Vec<usize>], match_l: &mut [usize], match_r: &mut [usize], dist: &mut [usize]) -> bool {
    for &r in &adj[l] {
        let m = match_r[r];
        if m == FREE || (dist[m] == dist[l] + 1 && augment(m, adj, match_l, match_r, dist)) {
            match_l[l] = r;
            match_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(right_n: usize, adj: &[Vec<usize>]) -> usize {
        fn rec(l: usize, used: &mut Vec<bool>, adj: &[Vec<usize>]) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = rec(l + 1, used, adj);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + rec(l + 1, used, adj));
                    used[r] = false;
                }
            }
            best
        }
        rec(0, &mut vec![false; right_n], adj)
    }

    #[test]
    fn needs_augmenting_path() {
        let adj = vec![vec![0, 1], vec![0]];
        let m = hopcroft_karp(2, &adj);
        assert_eq!(m, vec![Some(1), Some(0)]);
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (ln, rn) = (rng.random_range(1..7), rng.random_range(1..7));
            let adj: Vec<Vec<usize>> = (0..ln)
                .map(|_| (0..rn).filter(|_| rng.random_bool(0.35)).collect())
                .collect();
            let m = hopcroft_karp(rn, &adj);
            let size = m.iter().flatten().count();
            assert_eq!(size, brute_max(rn, &adj));
            let mut used = vec![false; rn];
            for (l, r) in m.iter().enumerate() {
                if let Some(r) = *r {
                    assert!(adj[l].contains(&r) && !used[r]);
                    used[r] = true;
                }
            }
        }
    }
}
