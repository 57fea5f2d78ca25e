//! Bitmask view of a [`ColoredGraph`] used by the search engines.

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Edge, Player};

/// Alive-vertex set over the original vertex ids.
pub type Mask = u128;

/// Hard ceiling on the vertex count of any solvable instance.
pub const MASK_BITS: usize = 128;

pub fn full_mask(n: usize) -> Mask {
    if n >= MASK_BITS {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn bit(v: usize) -> Mask {
    1 << v
}

/// Set bits of `m` in increasing order.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> Mask {
    vs.into_iter().fold(0, |m, v| m | bit(v))
}

#[derive(Debug, Clone)]
pub struct Board {
    pub n: usize,
    /// Any-color neighbourhood.
    pub adj: Vec<Mask>,
    /// Neighbours through edges the indexed player may take.
    playable: [Vec<Mask>; 2],
    gray: Vec<Mask>,
    black: Vec<Mask>,
}

impl Board {
    /// Fails when `g` has more than `cap` vertices (`cap <= 128`).
    pub fn new(g: &ColoredGraph, cap: usize) -> Result<Board> {
        let cap = cap.min(MASK_BITS);
        if g.n() > cap {
            return Err(Error::Capacity { n: g.n(), max: cap });
        }
        let n = g.n();
        let mut adj = vec![0; n];
        let mut gray = vec![0; n];
        let mut black = vec![0; n];
        let mut white = vec![0; n];
        for &(e, c) in g.edges() {
            let table = match c {
                Color::Gray => &mut gray,
                Color::Black => &mut black,
                Color::White => &mut white,
            };
            table[e.u] |= bit(e.v);
            table[e.v] |= bit(e.u);
            adj[e.u] |= bit(e.v);
            adj[e.v] |= bit(e.u);
        }
        let pb = (0..n).map(|v| gray[v] | black[v]).collect();
        let pw = (0..n).map(|v| gray[v] | white[v]).collect();
        Ok(Board {
            n,
            adj,
            playable: [pb, pw],
            gray,
            black,
        })
    }

    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        let b = bit(v);
        if self.gray[u] & b != 0 {
            Some(Color::Gray)
        } else if self.black[u] & b != 0 {
            Some(Color::Black)
        } else if self.adj[u] & b != 0 {
            Some(Color::White)
        } else {
            None
        }
    }

    pub fn playable(&self, u: usize, turn: Player) -> Mask {
        self.playable[turn.index()][u]
    }

    pub fn can_play(&self, e: Edge, turn: Player) -> bool {
        self.playable(e.u, turn) & bit(e.v) != 0
    }

    /// Moves for `turn` inside `alive`, sorted by `(u, v)`.
    pub fn moves(&self, alive: Mask, turn: Player) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in bits(alive) {
            let above = alive & !full_mask(u + 1);
            for v in bits(self.playable(u, turn) & above) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    /// Every alive edge regardless of color, sorted.
    pub fn alive_edges(&self, alive: Mask) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in bits(alive) {
            let above = alive & !full_mask(u + 1);
            for v in bits(self.adj[u] & above) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn is_gray_on(&self, alive: Mask) -> std::result::Result<(), Edge> {
        match self
            .alive_edges(alive)
            .into_iter()
            .find(|e| self.color(e.u, e.v) != Some(Color::Gray))
        {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Connected components of the alive subgraph, by smallest vertex.
    pub fn components(&self, alive: Mask) -> Vec<Mask> {
        let mut rest = alive;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= alive & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_grid, GridVariant};

    #[test]
    fn moves_are_sorted_and_colored() {
        let g = gen_grid(2, 2, GridVariant::Domineering);
        let b = Board::new(&g, 32).unwrap();
        // vertical {0,2} {1,3} are Black
        assert_eq!(b.moves(full_mask(4), Player::B), vec![Edge::new(0, 2), Edge::new(1, 3)]);
        assert_eq!(b.moves(full_mask(4), Player::W), vec![Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(b.moves(0b1010, Player::B), vec![Edge::new(1, 3)]);
    }

    #[test]
    fn capacity_is_enforced() {
        let g = ColoredGraph::empty(40);
        assert!(matches!(Board::new(&g, 32), Err(Error::Capacity { n: 40, max: 32 })));
        assert!(Board::new(&g, 64).is_ok());
    }

    #[test]
    fn components_split() {
        let g = gen_grid(1, 5, GridVariant::Cram);
        let b = Board::new(&g, 32).unwrap();
        assert_eq!(b.components(0b11011), vec![0b00011, 0b11000]);
        assert_eq!(bits(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
