use num_rational::Ratio;
use serde::Serialize;

use super::density::{ser_ratios, Density};
use super::SparseError;
use crate::theory::Alpha;

/// Default truncation when searching for the `j`-th record index.
pub const DEFAULT_MAX_LENGTH: usize = 100_000;

/// The sequence `x_1, x_2, …` for a non-integer `1/α > 2`: `x_i = i` for
/// `i ≤ ℓ`, then the largest `x ∈ [2, ℓ]` keeping the running average
/// `ρ_i` below `1/α`. `s_indices` are the 1-based records of `ρ` above `ℓ − 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensitySequence {
    pub alpha: Alpha,
    /// Smallest integer above `1/α`.
    pub ell: usize,
    pub xs: Vec<usize>,
    #[serde(serialize_with = "ser_ratios")]
    pub rhos: Vec<Density>,
    pub s_indices: Vec<usize>,
}

impl DensitySequence {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `ρ_i` for 1-based `i`.
    pub fn rho(&self, i: usize) -> Density {
        self.rhos[i - 1]
    }
}

struct Builder {
    inv: Ratio<i64>,
    ell: usize,
    xs: Vec<usize>,
    rhos: Vec<Density>,
    s_indices: Vec<usize>,
    sum: i64,
    record: Option<Density>,
}

impl Builder {
    fn new(alpha: Alpha) -> Result<Self, SparseError> {
        let inv = alpha.recip().ratio();
        if inv.is_integer() {
            return Err(SparseError::Alpha(format!(
                "1/alpha = {inv} is an integer; use path powers"
            )));
        }
        if inv < Ratio::from_integer(2) {
            return Err(SparseError::Alpha(format!("1/alpha = {inv} must exceed 2")));
        }
        Ok(Self {
            inv,
            ell: inv.ceil().to_integer() as usize,
            xs: Vec::new(),
            rhos: Vec::new(),
            s_indices: Vec::new(),
            sum: 0,
            record: None,
        })
    }

    fn push(&mut self) {
        let i = self.xs.len() as i64 + 1;
        let x = if i as usize <= self.ell {
            i
        } else {
            // largest x ∈ [2, ℓ] with (sum + x)/i < 1/α; x = ℓ − 1 always qualifies
            let cap = (self.inv * i).ceil().to_integer() - 1 - self.sum;
            cap.min(self.ell as i64)
        };
        debug_assert!(i as usize <= self.ell || (x >= self.ell as i64 - 1 && x >= 2));
        self.sum += x;
        let rho = Ratio::new(self.sum, i);
        debug_assert!(rho < self.inv);
        if rho > Ratio::from_integer(self.ell as i64 - 1) && self.record.is_none_or(|r| rho > r) {
            self.s_indices.push(i as usize);
        }
        if self.record.is_none_or(|r| rho > r) {
            self.record = Some(rho);
        }
        self.xs.push(x as usize);
        self.rhos.push(rho);
    }

    fn finish(self, alpha: Alpha) -> DensitySequence {
        DensitySequence {
            alpha,
            ell: self.ell,
            xs: self.xs,
            rhos: self.rhos,
            s_indices: self.s_indices,
        }
    }
}

/// The first `length` terms. Requires `length ≥ ℓ`.
pub fn x_sequence(alpha: Alpha, length: usize) -> Result<DensitySequence, SparseError> {
    let mut b = Builder::new(alpha)?;
    if length < b.ell {
        return Err(SparseError::Alpha(format!(
            "length {length} is shorter than ell = {}",
            b.ell
        )));
    }
    for _ in 0..length {
        b.push();
    }
    Ok(b.finish(alpha))
}

/// The shortest prefix containing `j` record indices, searched up to
/// `max_length` terms.
pub fn x_sequence_until(alpha: Alpha, j: usize, max_length: usize) -> Result<DensitySequence, SparseError> {
    let mut b = Builder::new(alpha)?;
    while b.s_indices.len() < j || b.xs.len() < b.ell {
        if b.xs.len() >= max_length {
            return Err(SparseError::Index(format!(
                "only {} record indices within {max_length} terms",
                b.s_indices.len()
            )));
        }
        b.push();
    }
    Ok(b.finish(alpha))
}
