//! One entry point over all engines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::full_mask;
use crate::error::Result;
use crate::graph::{ColoredGraph, Player};
use crate::nd::{solve_nd_with, NdOptions};
use crate::naive::solve_naive;
use crate::outcome::Outcome;
use crate::params::{min_vertex_cover, ModulePartition, VertexCover};
use crate::subset::{solve_subset_with, SubsetOptions, DEFAULT_MAX_N};
use crate::tree::solve_tree;
use crate::vc::solve_vc_with;

/// `auto` uses the vc engine up to this cover size.
pub const AUTO_VC_MAX_TAU: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    Subset,
    Vc,
    Nd,
    Tree,
    Auto,
}

impl Engine {
    pub const ALL: [Engine; 6] = [
        Engine::Naive,
        Engine::Subset,
        Engine::Vc,
        Engine::Nd,
        Engine::Tree,
        Engine::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Naive => "naive",
            Engine::Subset => "subset",
            Engine::Vc => "vc",
            Engine::Nd => "nd",
            Engine::Tree => "tree",
            Engine::Auto => "auto",
        }
    }

    /// What `auto` resolves to on `g`; other engines map to themselves.
    pub fn resolve(self, g: &ColoredGraph) -> Engine {
        if self != Engine::Auto {
            return self;
        }
        if g.is_gray() && g.is_forest() {
            Engine::Tree
        } else if min_vertex_cover(g).size() <= AUTO_VC_MAX_TAU {
            Engine::Vc
        } else {
            Engine::Subset
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine '{s}'"))
    }
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub engine: Engine,
    /// Vertex cap for the subset engine.
    pub max_n: usize,
    pub cover: Option<VertexCover>,
    pub partition: Option<ModulePartition>,
    /// Evaluate every child of every fresh node (vc, nd, subset).
    pub count_mode: bool,
    /// nd only: moves limited to these vertices.
    pub restrict_to: Option<Vec<usize>>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            engine: Engine::Auto,
            max_n: DEFAULT_MAX_N,
            cover: None,
            partition: None,
            count_mode: false,
            restrict_to: None,
        }
    }
}

impl SolveConfig {
    pub fn engine(engine: Engine) -> Self {
        SolveConfig {
            engine,
            ..SolveConfig::default()
        }
    }
}

/// Solves from the full vertex set with `turn` to move.
pub fn solve(g: &ColoredGraph, turn: Player, cfg: &SolveConfig) -> Result<Outcome> {
    let all = full_mask(g.n());
    match cfg.engine.resolve(g) {
        Engine::Naive => solve_naive(g, all, turn),
        Engine::Subset => solve_subset_with(
            g,
            turn,
            SubsetOptions {
                max_n: cfg.max_n,
                full_expansion: cfg.count_mode,
            },
        ),
        Engine::Vc => solve_vc_with(g, turn, cfg.cover.as_ref(), cfg.count_mode),
        Engine::Nd => solve_nd_with(
            g,
            turn,
            &NdOptions {
                partition: cfg.partition.clone(),
                restrict_to: cfg.restrict_to.clone(),
                full_expansion: cfg.count_mode,
            },
        ),
        Engine::Tree => solve_tree(g, all, turn),
        Engine::Auto => unreachable!("resolve never returns Auto"),
    }
}
