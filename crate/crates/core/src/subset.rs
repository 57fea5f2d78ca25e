//! Memoized search over induced subgraphs, keyed by alive mask and turn.

use crate::board::{full_mask, Board, Mask};
use crate::error::Result;
use crate::graph::{ColoredGraph, Edge, Player};
use crate::outcome::{Outcome, SearchStats};
use crate::search::{Game, Mode, Search};

pub const DEFAULT_MAX_N: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetOptions {
    /// Refuse instances with more vertices (at most 128).
    pub max_n: usize,
    /// Evaluate every child of every fresh node.
    pub full_expansion: bool,
}

impl Default for SubsetOptions {
    fn default() -> Self {
        SubsetOptions {
            max_n: DEFAULT_MAX_N,
            full_expansion: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetKey {
    pub alive: Mask,
    pub turn: Player,
}

struct Subsets<'a>(&'a Board);

impl Game for Subsets<'_> {
    type Key = SubsetKey;

    fn key(&self, alive: Mask, turn: Player) -> SubsetKey {
        SubsetKey { alive, turn }
    }

    fn candidates(&self, alive: Mask, turn: Player) -> Vec<Edge> {
        self.0.moves(alive, turn)
    }
}

pub fn solve_subset(g: &ColoredGraph, turn: Player) -> Result<Outcome> {
    solve_subset_with(g, turn, SubsetOptions::default())
}

pub fn solve_subset_with(g: &ColoredGraph, turn: Player, opts: SubsetOptions) -> Result<Outcome> {
    let board = Board::new(g, opts.max_n)?;
    let mode = if opts.full_expansion {
        Mode::MemoFull
    } else {
        Mode::Memo
    };
    Ok(Search::new(&Subsets(&board), mode).run(full_mask(g.n()), turn))
}

/// Full-expansion run; stats only.
pub fn count_subset_positions(g: &ColoredGraph, turn: Player, max_n: usize) -> Result<SearchStats> {
    let opts = SubsetOptions {
        max_n,
        full_expansion: true,
    };
    Ok(solve_subset_with(g, turn, opts)?.stats)
}
