//! Search parameterized by a vertex cover `S`.
//!
//! Non-cover vertices with the same colored adjacency to the alive part of
//! `S` are interchangeable, so a position is identified by the alive
//! (non-isolated) cover vertices and how many vertices remain in each
//! class. Only edges inside `S` and edges to the smallest member of each
//! class are tried.

use std::collections::BTreeMap;

use crate::board::{bit, bits, full_mask, Board, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Edge, Player};
use crate::outcome::{Outcome, SearchStats};
use crate::params::{min_vertex_cover, ClassVector, VertexCover};
use crate::search::{Game, Mode, Search};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VcKey {
    /// Alive cover vertices with at least one alive neighbour, sorted.
    pub alive_s: Vec<usize>,
    /// Sorted by vector; counts are at least 1. Isolated non-cover
    /// vertices (the all-empty vector) are left out.
    pub class_counts: Vec<(ClassVector, usize)>,
    pub turn: Player,
}

struct Classes {
    alive_s: Vec<usize>,
    /// vector -> (count, smallest member)
    classes: BTreeMap<ClassVector, (usize, usize)>,
}

struct CoverGame<'a> {
    board: &'a Board,
    cover: Mask,
}

impl CoverGame<'_> {
    fn classes(&self, alive: Mask) -> Classes {
        let b = self.board;
        let alive_s: Vec<usize> = bits(alive & self.cover)
            .filter(|&u| b.adj[u] & alive != 0)
            .collect();
        let mut classes: BTreeMap<ClassVector, (usize, usize)> = BTreeMap::new();
        for v in bits(alive & !self.cover) {
            if b.adj[v] & alive == 0 {
                continue;
            }
            let x = ClassVector(alive_s.iter().map(|&u| b.color(u, v)).collect());
            classes.entry(x).or_insert((0, v)).0 += 1;
        }
        Classes { alive_s, classes }
    }
}

impl Game for CoverGame<'_> {
    type Key = VcKey;

    fn key(&self, alive: Mask, turn: Player) -> VcKey {
        let c = self.classes(alive);
        VcKey {
            alive_s: c.alive_s,
            class_counts: c.classes.into_iter().map(|(x, (n, _))| (x, n)).collect(),
            turn,
        }
    }

    fn candidates(&self, alive: Mask, turn: Player) -> Vec<Edge> {
        let b = self.board;
        let c = self.classes(alive);
        let s_mask: Mask = c.alive_s.iter().map(|&u| bit(u)).fold(0, |a, x| a | x);
        let mut out = Vec::new();
        for &u in &c.alive_s {
            for w in bits(b.playable(u, turn) & s_mask & !full_mask(u + 1)) {
                out.push(Edge { u, v: w });
            }
        }
        for &(_, rho) in c.classes.values() {
            for u in bits(b.playable(rho, turn) & s_mask) {
                out.push(Edge::new(u, rho));
            }
        }
        out.sort_unstable();
        out
    }
}

fn prepare(g: &ColoredGraph, cover: Option<&VertexCover>) -> Result<(Board, Mask)> {
    let board = Board::new(g, MASK_BITS)?;
    let s = match cover {
        Some(s) => {
            if let Some(&v) = s.vertices.iter().find(|&&v| v >= g.n()) {
                return Err(Error::InvalidParameter(format!(
                    "cover vertex {v} out of range for n = {}",
                    g.n()
                )));
            }
            s.check(g)?;
            s.clone()
        }
        None => min_vertex_cover(g),
    };
    let mask = s.vertices.iter().map(|&v| bit(v)).fold(0, |a, x| a | x);
    Ok((board, mask))
}

fn run(g: &ColoredGraph, turn: Player, cover: Option<&VertexCover>, mode: Mode) -> Result<Outcome> {
    let (board, cover) = prepare(g, cover)?;
    let game = CoverGame {
        board: &board,
        cover,
    };
    Ok(Search::new(&game, mode).run(full_mask(g.n()), turn))
}

/// Solves with the given cover, or a minimum one when `cover` is `None`.
pub fn solve_vc(g: &ColoredGraph, turn: Player, cover: Option<&VertexCover>) -> Result<Outcome> {
    run(g, turn, cover, Mode::Memo)
}

/// With `full_expansion`, every child of every fresh node is evaluated.
pub fn solve_vc_with(
    g: &ColoredGraph,
    turn: Player,
    cover: Option<&VertexCover>,
    full_expansion: bool,
) -> Result<Outcome> {
    let mode = if full_expansion { Mode::MemoFull } else { Mode::Memo };
    run(g, turn, cover, mode)
}

/// Full-expansion run (every child of every fresh node); stats only.
pub fn count_vc_positions(
    g: &ColoredGraph,
    turn: Player,
    cover: Option<&VertexCover>,
) -> Result<SearchStats> {
    Ok(run(g, turn, cover, Mode::MemoFull)?.stats)
}

/// The memo key of a position. `cover` must cover the alive subgraph.
pub fn vc_canonical_key(
    g: &ColoredGraph,
    alive: Mask,
    cover: &VertexCover,
    turn: Player,
) -> Result<VcKey> {
    let board = Board::new(g, MASK_BITS)?;
    let alive = alive & full_mask(g.n());
    let s = cover.vertices.iter().filter(|&&v| v < g.n()).map(|&v| bit(v)).fold(0, |a, x| a | x);
    if let Some(e) = board
        .alive_edges(alive)
        .into_iter()
        .find(|e| s & (bit(e.u) | bit(e.v)) == 0)
    {
        return Err(Error::NotACover(e.u, e.v));
    }
    let game = CoverGame {
        board: &board,
        cover: s,
    };
    Ok(game.key(alive, turn))
}

/// `3^s * max(s^2, 1) * (gamma + 1)^(s^2 / 4)`, the bound on distinct keys
/// for a cover of size `s` and `gamma` colors.
pub fn vc_key_bound(s: usize, gamma: usize) -> f64 {
    let s = s as f64;
    3f64.powf(s) * (s * s).max(1.0) * (gamma as f64 + 1.0).powf(s * s / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_grid, gen_lower_vc, GridVariant};
    use crate::graph::Color;
    use crate::naive::solve_naive;

    fn star(leaves: usize) -> ColoredGraph {
        ColoredGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i, Color::Gray))).unwrap()
    }

    #[test]
    fn star_collapses() {
        let g = star(50);
        let o = solve_vc(&g, Player::B, None).unwrap();
        assert_eq!(o.winner, Player::B);
        assert_eq!(o.winning_move, Some(Edge::new(0, 1)));
        assert!(o.stats.distinct_keys <= 8);
        let full = count_vc_positions(&g, Player::B, None).unwrap();
        assert_eq!(full.distinct_keys, 2);
    }

    #[test]
    fn star_key() {
        let g = star(3);
        let k = vc_canonical_key(&g, 0b1111, &VertexCover::new(vec![0]), Player::W).unwrap();
        assert_eq!(k.alive_s, vec![0]);
        assert_eq!(k.class_counts, vec![(ClassVector(vec![Some(Color::Gray)]), 3)]);
        assert_eq!(k.turn, Player::W);
    }

    #[test]
    fn c4_after_one_move() {
        // cells 0 1 / 2 3; S = {0, 3}; play {0, 1} leaves the edge {2, 3}
        let g = gen_grid(2, 2, GridVariant::Cram);
        let s = VertexCover::new(vec![0, 3]);
        let k = vc_canonical_key(&g, 0b1100, &s, Player::W).unwrap();
        assert_eq!(k.alive_s, vec![3]);
        assert_eq!(k.class_counts, vec![(ClassVector(vec![Some(Color::Gray)]), 1)]);
        assert!(vc_canonical_key(&g, 0b1111, &VertexCover::new(vec![0]), Player::B).is_err());
    }

    #[test]
    fn rejects_non_cover() {
        let g = gen_grid(2, 2, GridVariant::Cram);
        let bad = VertexCover::new(vec![0]);
        assert!(matches!(solve_vc(&g, Player::B, Some(&bad)), Err(Error::NotACover(..))));
    }

    #[test]
    fn lower_vc_two() {
        let g = gen_lower_vc(2, 4096).unwrap();
        let o = solve_vc(&g, Player::B, None).unwrap();
        assert_eq!(o.winner, solve_naive(&g, full_mask(6), Player::B).unwrap().winner);
        let s = VertexCover::new(vec![0, 1]);
        assert!(count_vc_positions(&g, Player::B, Some(&s)).unwrap().node_expansions >= 4);
    }
}
