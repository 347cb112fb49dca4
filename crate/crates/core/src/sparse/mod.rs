//! Sparse-regime gadgets and tilings: glued squares of paths, powers of
//! paths, the `F_j` graphs of the `x_i` recursion, exact 1-densities, and
//! the regime dispatcher.

mod density;
mod dispatch;
mod gadgets;
mod sequence;
mod tiling;

use thiserror::Error;

pub use density::{
    is_strictly_1_balanced, max_one_density, one_density, subset_scan, Balance, Density, SubsetScan, SCAN_MAX_N,
};
pub use dispatch::{gadget_schedule, primary_gadget, sparse_construct, sparse_regime, Regime, SparseOptions};
pub use gadgets::{build_fj, power_path_gadget, square_path_gadget, Gadget, GadgetKind};
pub use sequence::{x_sequence, x_sequence_until, DensitySequence, DEFAULT_MAX_LENGTH};
pub use tiling::{find_tiles, greedy_tiling, is_embedding, Tiles, DEFAULT_TILE_BUDGET, TILE_MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparseError {
    #[error("unsupported alpha: {0}")]
    Alpha(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("graph on {0} vertices is too small")]
    TooSmall(usize),
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}
