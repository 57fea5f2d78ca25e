//! Search over module-count profiles of a (colored) twin partition.
//!
//! Vertices of one module are interchangeable, so a position is determined
//! by how many vertices of each module are alive. Each module pair gets one
//! candidate move on its smallest alive members.

use crate::board::{bit, bits, full_mask, Board, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Edge, Player};
use crate::outcome::{Outcome, SearchStats};
use crate::params::{internal_color, nd_partition, ModulePartition, PartitionKind};
use crate::search::{Game, Mode, Search};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NdKey {
    /// Alive count per module, aligned with the partition.
    pub counts: Vec<usize>,
    pub turn: Player,
}

#[derive(Debug, Clone, Default)]
pub struct NdOptions {
    /// Computed with [`nd_partition`] when absent; validated when given.
    pub partition: Option<ModulePartition>,
    /// Only moves with both endpoints in this set are tried. Must be a
    /// union of modules.
    pub restrict_to: Option<Vec<usize>>,
    pub full_expansion: bool,
}

struct ModuleGame<'a> {
    board: &'a Board,
    modules: Vec<Mask>,
    /// Color shared by internal pairs, if the module is a colored clique.
    internal: Vec<Option<Color>>,
    allowed: Mask,
}

impl Game for ModuleGame<'_> {
    type Key = NdKey;

    fn key(&self, alive: Mask, turn: Player) -> NdKey {
        NdKey {
            counts: self.modules.iter().map(|&m| (m & alive).count_ones() as usize).collect(),
            turn,
        }
    }

    fn candidates(&self, alive: Mask, turn: Player) -> Vec<Edge> {
        let alive = alive & self.allowed;
        let firsts: Vec<Option<usize>> = self
            .modules
            .iter()
            .map(|&m| bits(m & alive).next())
            .collect();
        let mut out = Vec::new();
        for (i, &a) in firsts.iter().enumerate() {
            let Some(a) = a else { continue };
            if let Some(c) = self.internal[i] {
                if c.playable_by(turn) {
                    if let Some(b) = bits(self.modules[i] & alive & !bit(a)).next() {
                        out.push(Edge::new(a, b));
                    }
                }
            }
            for &b in firsts[i + 1..].iter().flatten() {
                if self.board.playable(a, turn) & bit(b) != 0 {
                    out.push(Edge::new(a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// The partition the engine will use: the given one checked against the
/// colored-twin predicate, or the coarsest one.
pub fn resolve_partition(g: &ColoredGraph, partition: Option<&ModulePartition>) -> Result<ModulePartition> {
    match partition {
        Some(p) => {
            // Colors always matter to the engine, so check the stricter relation.
            let strict = ModulePartition {
                modules: p.modules.iter().map(|m| {
                    let mut m = m.clone();
                    m.sort_unstable();
                    m
                }).collect(),
                kind: PartitionKind::ColoredTwin,
            };
            strict.validate(g)?;
            Ok(ModulePartition {
                modules: strict.modules,
                kind: p.kind,
            })
        }
        None => Ok(nd_partition(g, g.is_gray())),
    }
}

fn run(g: &ColoredGraph, turn: Player, opts: &NdOptions) -> Result<Outcome> {
    let board = Board::new(g, MASK_BITS)?;
    let partition = resolve_partition(g, opts.partition.as_ref())?;
    let modules: Vec<Mask> = partition
        .modules
        .iter()
        .map(|m| m.iter().map(|&v| bit(v)).fold(0, |a, x| a | x))
        .collect();
    let internal = partition
        .modules
        .iter()
        .map(|m| internal_color(g, m, true).flatten())
        .collect();
    let allowed = match &opts.restrict_to {
        None => full_mask(g.n()),
        Some(vs) => {
            let mut r: Mask = 0;
            for &v in vs {
                if v >= g.n() {
                    return Err(Error::InvalidParameter(format!("restricted vertex {v} out of range")));
                }
                r |= bit(v);
            }
            if modules.iter().any(|&m| m & r != 0 && m & r != m) {
                return Err(Error::InvalidParameter(
                    "move restriction must be a union of modules".into(),
                ));
            }
            r
        }
    };
    let game = ModuleGame {
        board: &board,
        modules,
        internal,
        allowed,
    };
    let mode = if opts.full_expansion {
        Mode::MemoFull
    } else {
        Mode::Memo
    };
    Ok(Search::new(&game, mode).run(full_mask(g.n()), turn))
}

pub fn solve_nd(g: &ColoredGraph, turn: Player, partition: Option<&ModulePartition>) -> Result<Outcome> {
    let opts = NdOptions {
        partition: partition.cloned(),
        ..NdOptions::default()
    };
    run(g, turn, &opts)
}

/// Runs with explicit options (restriction, expansion mode).
pub fn solve_nd_with(g: &ColoredGraph, turn: Player, opts: &NdOptions) -> Result<Outcome> {
    run(g, turn, opts)
}

/// Full-expansion run; stats only. `restrict_to` limits moves as in
/// [`NdOptions::restrict_to`].
pub fn count_nd_positions(
    g: &ColoredGraph,
    turn: Player,
    partition: Option<&ModulePartition>,
    restrict_to: Option<&[usize]>,
) -> Result<SearchStats> {
    let opts = NdOptions {
        partition: partition.cloned(),
        restrict_to: restrict_to.map(<[usize]>::to_vec),
        full_expansion: true,
    };
    Ok(run(g, turn, &opts)?.stats)
}

/// Union of modules of size at least two whose members are pairwise
/// adjacent, sorted.
pub fn clique_module_vertices(g: &ColoredGraph, partition: &ModulePartition) -> Vec<usize> {
    let mut out: Vec<usize> = partition
        .modules
        .iter()
        .filter(|m| m.len() >= 2 && matches!(internal_color(g, m, false), Some(Some(_))))
        .flatten()
        .copied()
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_lower_nd;

    fn gray(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        ColoredGraph::new(n, edges.iter().map(|&(a, b)| (a, b, Color::Gray))).unwrap()
    }

    #[test]
    fn k33_bound() {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = gray(6, &edges);
        let s = count_nd_positions(&g, Player::B, None, None).unwrap();
        assert!(s.distinct_keys <= 32);
        // a perfect matching exists and every move removes one from each side
        assert_eq!(solve_nd(&g, Player::B, None).unwrap().winner, Player::B);
    }

    #[test]
    fn clique_module() {
        let edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = gray(4, &edges);
        let s = count_nd_positions(&g, Player::B, None, None).unwrap();
        assert!(s.distinct_keys <= 10);
        // K4: two moves are always available in sequence
        let o = solve_nd(&g, Player::B, None).unwrap();
        assert_eq!(o.winner, Player::W);
    }

    #[test]
    fn empty_graph() {
        let o = solve_nd(&ColoredGraph::empty(4), Player::W, None).unwrap();
        assert_eq!(o.winner, Player::B);
    }

    #[test]
    fn rejects_invalid_partition() {
        let g = gray(3, &[(0, 1), (1, 2)]);
        let p = ModulePartition {
            modules: vec![vec![0, 1], vec![2]],
            kind: PartitionKind::Twin,
        };
        assert!(matches!(solve_nd(&g, Player::B, Some(&p)), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn plain_twins_rejected_on_colored_graph() {
        let g = ColoredGraph::new(3, [(0, 1, Color::Black), (0, 2, Color::White)]).unwrap();
        let p = ModulePartition {
            modules: vec![vec![0], vec![1, 2]],
            kind: PartitionKind::Twin,
        };
        assert!(solve_nd(&g, Player::B, Some(&p)).is_err());
    }

    #[test]
    fn restriction_must_follow_modules() {
        let g = gen_lower_nd(3, 2).unwrap();
        let p = nd_partition(&g, true);
        let cliques = clique_module_vertices(&g, &p);
        assert_eq!(cliques, (0..6).collect::<Vec<_>>());
        assert!(count_nd_positions(&g, Player::B, None, Some(&cliques)).is_ok());
        assert!(count_nd_positions(&g, Player::B, None, Some(&[0])).is_err());
    }
}
