//! Reference evaluator: the plain recursion, no memo, no pruning.

use crate::board::{bit, full_mask, Board, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Edge, Player};
use crate::outcome::{mex, Grundy, Outcome};
use crate::search::{Game, Mode, Search};

struct Plain<'a>(&'a Board);

impl Game for Plain<'_> {
    type Key = (Mask, Player);

    fn key(&self, alive: Mask, turn: Player) -> (Mask, Player) {
        (alive, turn)
    }

    fn candidates(&self, alive: Mask, turn: Player) -> Vec<Edge> {
        self.0.moves(alive, turn)
    }
}

/// Evaluates every move of every node. `winning_move` is the smallest
/// winning edge. Bits of `alive` at or above `n` are ignored.
pub fn solve_naive(g: &ColoredGraph, alive: Mask, turn: Player) -> Result<Outcome> {
    let board = Board::new(g, MASK_BITS)?;
    let alive = alive & full_mask(g.n());
    Ok(Search::new(&Plain(&board), Mode::Plain).run(alive, turn))
}

/// Sprague–Grundy value of an all-gray position, splitting into connected
/// components at every node.
pub fn grundy_naive(g: &ColoredGraph, alive: Mask) -> Result<Grundy> {
    let board = Board::new(g, MASK_BITS)?;
    let alive = alive & full_mask(g.n());
    board
        .is_gray_on(alive)
        .map_err(|e| Error::NotImpartial(e.u, e.v))?;
    Ok(Grundy(position(&board, alive)))
}

fn position(board: &Board, alive: Mask) -> u32 {
    board
        .components(alive)
        .into_iter()
        .map(|c| component(board, c))
        .fold(0, |a, b| a ^ b)
}

fn component(board: &Board, comp: Mask) -> u32 {
    mex(board
        .alive_edges(comp)
        .into_iter()
        .map(|e| position(board, comp & !bit(e.u) & !bit(e.v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_caterpillar_kayles, gen_grid, GridVariant};
    use crate::graph::Color;

    fn gray(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        ColoredGraph::new(n, edges.iter().map(|&(a, b)| (a, b, Color::Gray))).unwrap()
    }

    #[test]
    fn empty_graph_mover_loses() {
        let g = ColoredGraph::empty(3);
        let o = solve_naive(&g, full_mask(3), Player::B).unwrap();
        assert_eq!(o.winner, Player::W);
        assert_eq!(o.winning_move, None);
        assert_eq!(o.stats.node_expansions, 1);
    }

    #[test]
    fn black_edge_belongs_to_b() {
        let g = ColoredGraph::new(2, [(0, 1, Color::Black)]).unwrap();
        let b = solve_naive(&g, 0b11, Player::B).unwrap();
        assert_eq!((b.winner, b.winning_move), (Player::B, Some(Edge::new(0, 1))));
        let w = solve_naive(&g, 0b11, Player::W).unwrap();
        assert_eq!((w.winner, w.winning_move), (Player::B, None));
    }

    #[test]
    fn cram_2x2_second_player() {
        let g = gen_grid(2, 2, GridVariant::Cram);
        assert_eq!(solve_naive(&g, 0b1111, Player::B).unwrap().winner, Player::W);
    }

    #[test]
    fn grundy_small() {
        assert_eq!(grundy_naive(&gray(2, &[(0, 1)]), 0b11).unwrap(), Grundy(1));
        assert_eq!(grundy_naive(&gray(4, &[(0, 1), (1, 2), (2, 3)]), 0b1111).unwrap(), Grundy(2));
        assert_eq!(grundy_naive(&gray(4, &[(0, 1), (0, 2), (0, 3)]), 0b1111).unwrap(), Grundy(1));
        assert_eq!(grundy_naive(&gen_caterpillar_kayles(2), 0b1111).unwrap(), Grundy(2));
    }

    #[test]
    fn grundy_rejects_colored() {
        let g = ColoredGraph::new(3, [(0, 1, Color::Gray), (1, 2, Color::White)]).unwrap();
        assert_eq!(grundy_naive(&g, 0b111), Err(Error::NotImpartial(1, 2)));
        // the white edge is dead once vertex 2 is gone
        assert_eq!(grundy_naive(&g, 0b011).unwrap(), Grundy(1));
    }
}
