//! Winner determination for Colored Arc Kayles.
//!
//! Players B and W alternately pick an edge and delete both endpoints. B
//! may take Gray and Black edges, W Gray and White ones; whoever cannot
//! move loses. Arc Kayles (all Gray), Cram and Domineering (grids) and
//! Kayles (caterpillars) are special cases.
//!
//! Engines:
//! - [`solve_naive`]: plain recursion, the reference.
//! - [`solve_subset`]: memo on the alive vertex set.
//! - [`solve_vc`]: memo on class counts relative to a vertex cover.
//! - [`solve_nd`]: memo on per-module counts of a twin partition.
//! - [`solve_tree`]: Sprague–Grundy on gray forests.

pub mod bench;
pub mod board;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod naive;
pub mod nd;
pub mod outcome;
pub mod params;
mod search;
pub mod subset;
pub mod tree;
pub mod vc;

pub use board::{full_mask, Mask};
pub use engine::{solve, Engine, SolveConfig};
pub use error::{Error, Result};
pub use generate::{
    gen_caterpillar_kayles, gen_grid, gen_lower_nd, gen_lower_vc, gen_random, gen_random_tree,
    ColorWeights, GridVariant,
};
pub use graph::{parse_graph, serialize_graph, Color, ColoredGraph, Edge, Player};
pub use naive::{grundy_naive, solve_naive};
pub use nd::{count_nd_positions, solve_nd, NdKey};
pub use outcome::{Grundy, Outcome, SearchStats};
pub use params::{
    equivalence_classes, min_vertex_cover, nd_partition, representative_edges, ClassVector,
    EquivalenceClasses, ModulePartition, PartitionKind, VertexCover,
};
pub use subset::{count_subset_positions, solve_subset};
pub use tree::{count_ak_subtrees, count_nk_subtrees, grundy_tree, solve_tree};
pub use vc::{count_vc_positions, solve_vc, vc_canonical_key, VcKey};
