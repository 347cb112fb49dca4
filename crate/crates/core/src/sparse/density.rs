use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::SparseError;
use crate::graph::Graph;

/// Exact 1-densities and sequence averages.
pub type Density = Ratio<i64>;

/// Largest graph accepted by the exhaustive subset scans.
pub const SCAN_MAX_N: usize = 24;

pub(crate) fn ser_ratio<S: Serializer>(r: &Density, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

pub(crate) fn ser_ratio_opt<S: Serializer>(r: &Option<Density>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_ratios<S: Serializer>(rs: &[Density], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| format!("{}/{}", r.numer(), r.denom())))
}

/// Outcome of an exhaustive strict-balance check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Balance {
    VerifiedTrue,
    VerifiedFalse,
    Unverified,
}

/// `|E| / (|V| − 1)`.
pub fn one_density(f: &Graph) -> Result<Density, SparseError> {
    if f.n() < 2 {
        return Err(SparseError::TooSmall(f.n()));
    }
    Ok(Ratio::new(f.m() as i64, f.n() as i64 - 1))
}

/// Result of one pass over all vertex subsets of size at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetScan {
    /// `ρ*`, the largest induced 1-density.
    pub max: Density,
    /// A subset attaining `max`; the largest one on ties.
    pub argmax: Vec<usize>,
    /// Largest 1-density over proper subsets, `None` when `n = 2`.
    pub proper_max: Option<Density>,
}

/// Scans every vertex subset `S` with `|S| ≥ 2` in Gray-code order, keeping
/// the induced edge count incrementally. Induced subgraphs suffice: deleting
/// edges from a subgraph on a fixed vertex set never raises its 1-density.
pub fn subset_scan(f: &Graph) -> Result<SubsetScan, SparseError> {
    let n = f.n();
    if n < 2 {
        return Err(SparseError::TooSmall(n));
    }
    if n > SCAN_MAX_N {
        return Err(SparseError::TooLarge { n, cap: SCAN_MAX_N });
    }
    let adj: Vec<u32> = (0..n).map(|v| f.neighbors(v).fold(0u32, |a, w| a | 1 << w)).collect();
    let full = (1u32 << n) - 1;
    // densities compared as (edges, vertices − 1) pairs
    let mut best = (0i64, 1i64, 0u32);
    let mut proper: Option<(i64, i64)> = None;
    let (mut set, mut edges, mut size) = (0u32, 0i64, 0i64);
    for i in 1u32..=full {
        let v = i.trailing_zeros();
        let bit = 1u32 << v;
        if set & bit == 0 {
            edges += (adj[v as usize] & set).count_ones() as i64;
            set |= bit;
            size += 1;
        } else {
            set &= !bit;
            edges -= (adj[v as usize] & set).count_ones() as i64;
            size -= 1;
        }
        if size < 2 {
            continue;
        }
        let d = size - 1;
        let (be, bd, bs) = best;
        if edges * bd > be * d || (edges * bd == be * d && set.count_ones() > bs.count_ones()) {
            best = (edges, d, set);
        }
        if set != full && proper.is_none_or(|(pe, pd)| edges * pd > pe * d) {
            proper = Some((edges, d));
        }
    }
    Ok(SubsetScan {
        max: Ratio::new(best.0, best.1),
        argmax: (0..n).filter(|&v| best.2 >> v & 1 == 1).collect(),
        proper_max: proper.map(|(e, d)| Ratio::new(e, d)),
    })
}

/// `ρ*(F)` and a subset attaining it.
pub fn max_one_density(f: &Graph) -> Result<(Density, Vec<usize>), SparseError> {
    let s = subset_scan(f)?;
    Ok((s.max, s.argmax))
}

/// Every proper subgraph has 1-density strictly below `ρ(F)`.
pub fn is_strictly_1_balanced(f: &Graph) -> Result<bool, SparseError> {
    let rho = one_density(f)?;
    let s = subset_scan(f)?;
    Ok(s.proper_max.is_none_or(|p| p < rho))
}
