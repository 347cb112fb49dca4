//! Dense-regime constructions: a clique partition of a small vertex set with
//! every other vertex attached to its best clique, the Alon–Füredi chains of
//! path powers grown by bipartite matchings, and a disjoint-clique baseline.

mod cliques;
mod lower;
mod matching;
mod path_power;

pub use cliques::{clique_partition, CliquePartition, DEFAULT_CLIQUE_BUDGET};
pub use lower::{clique_union_baseline, dense_clique_size, dense_lower_construct, edge_density, DenseLowerOptions};
pub use matching::hopcroft_karp;
pub use path_power::{
    full_path_power_edges, path_power_chains, path_power_construct, path_power_defaults, path_power_edges,
};
