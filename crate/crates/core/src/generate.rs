//! Instance generators: boards, Kayles caterpillars, random graphs and the
//! two lower-bound constructions.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};

/// Environment variable that caps generator output size.
pub const MAX_VERTICES_ENV: &str = "CAK_MAX_VERTICES";
pub const DEFAULT_VERTEX_BUDGET: usize = 4096;

/// Budget from `CAK_MAX_VERTICES`, falling back to [`DEFAULT_VERTEX_BUDGET`].
pub fn vertex_budget() -> usize {
    std::env::var(MAX_VERTICES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridVariant {
    Cram,
    Domineering,
}

/// `rows x cols` board; cell `(r, c)` is vertex `r * cols + c`.
///
/// Domineering: vertical dominoes belong to Vertical = B (Black edges),
/// horizontal ones to Horizontal = W (White edges).
pub fn gen_grid(rows: usize, cols: usize, variant: GridVariant) -> ColoredGraph {
    let (vertical, horizontal) = match variant {
        GridVariant::Cram => (Color::Gray, Color::Gray),
        GridVariant::Domineering => (Color::Black, Color::White),
    };
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), horizontal));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), vertical));
            }
        }
    }
    ColoredGraph::new(rows * cols, edges).expect("grid edges are simple")
}

/// Classic Kayles with `pins` pins as Arc Kayles: spine `0..pins`, leg of
/// spine vertex `i` is `pins + i`.
pub fn gen_caterpillar_kayles(pins: usize) -> ColoredGraph {
    let spine = (1..pins).map(|i| (i - 1, i, Color::Gray));
    let legs = (0..pins).map(|i| (i, pins + i, Color::Gray));
    ColoredGraph::new(2 * pins, spine.chain(legs)).expect("caterpillar edges are simple")
}

/// Layout of [`gen_lower_vc`]: `U = 0..k/2`, `V = k/2..k`, then
/// `x_{i,x}` at `k + (i-1) * 4^(k/2) + code(x)` where `code` reads the
/// vector in base 4 with digit `j` for `u_{j+1}` (0 = none, 1 = G, 2 = B, 3 = W).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerVcLayout {
    pub k: usize,
}

impl LowerVcLayout {
    pub fn half(&self) -> usize {
        self.k / 2
    }

    pub fn vectors(&self) -> usize {
        1 << (2 * self.half())
    }

    pub fn u(&self, j: usize) -> usize {
        j
    }

    pub fn v(&self, i: usize) -> usize {
        self.half() + i
    }

    /// `i` is 0-based here.
    pub fn x(&self, i: usize, code: usize) -> usize {
        self.k + i * self.vectors() + code
    }

    pub fn n(&self) -> usize {
        self.k + self.half() * self.vectors()
    }

    /// Number of `v_i` joined by Black edges; `k/4` rounded up so `k = 2`
    /// gets one Black side.
    pub fn black_sides(&self) -> usize {
        self.k.div_ceil(4)
    }

    pub fn cover(&self) -> Vec<usize> {
        (0..self.k).collect()
    }
}

fn digit_color(d: usize) -> Option<Color> {
    match d {
        0 => None,
        1 => Some(Color::Gray),
        2 => Some(Color::Black),
        _ => Some(Color::White),
    }
}

/// Colored Arc Kayles instance on which the vertex-cover solver makes at
/// least `2^(k^2/2)` recursive calls. `k` must be 2 or a multiple of 4.
pub fn gen_lower_vc(k: usize, budget: usize) -> Result<ColoredGraph> {
    if k == 0 || (k != 2 && !k.is_multiple_of(4)) {
        return Err(Error::InvalidParameter(format!(
            "lower-vc needs k = 2 or a positive multiple of 4, got {k}"
        )));
    }
    let half = k / 2;
    let x_count = 4u128
        .checked_pow(half as u32)
        .and_then(|p| p.checked_mul(half as u128))
        .unwrap_or(u128::MAX);
    if x_count > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: x_count,
            budget,
        });
    }
    let layout = LowerVcLayout { k };
    let mut edges = Vec::new();
    for i in 0..half {
        let side = if i < layout.black_sides() {
            Color::Black
        } else {
            Color::White
        };
        for code in 0..layout.vectors() {
            let x = layout.x(i, code);
            edges.push((layout.v(i), x, side));
            for j in 0..half {
                if let Some(c) = digit_color((code >> (2 * j)) & 3) {
                    edges.push((layout.u(j), x, c));
                }
            }
        }
    }
    ColoredGraph::new(layout.n(), edges)
}

/// Layout of [`gen_lower_nd`]: clique `C_j` (1-based `j`) occupies
/// `(j-1)*s..j*s`, then `x_1..x_b` (`b = log2(k+1)`), then the pendants of
/// `x_2, x_3, ...` in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerNdLayout {
    pub k: usize,
    pub s: usize,
}

impl LowerNdLayout {
    pub fn bits(&self) -> usize {
        (self.k + 1).trailing_zeros() as usize
    }

    pub fn clique(&self, j: usize) -> std::ops::Range<usize> {
        (j - 1) * self.s..j * self.s
    }

    pub fn clique_vertices(&self) -> std::ops::Range<usize> {
        0..self.k * self.s
    }

    pub fn x(&self, i: usize) -> usize {
        self.k * self.s + i - 1
    }

    pub fn n(&self) -> usize {
        let b = self.bits();
        self.k * self.s + b * (b + 1) / 2
    }
}

/// Arc Kayles instance with many non-isomorphic positions relative to its
/// neighbourhood diversity. `k + 1` must be a power of two.
pub fn gen_lower_nd(k: usize, s: usize) -> Result<ColoredGraph> {
    if k == 0 || !(k + 1).is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "lower-nd needs k = 2^b - 1, got {k}"
        )));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("lower-nd needs s >= 1".into()));
    }
    let layout = LowerNdLayout { k, s };
    let b = layout.bits();
    let cliques = layout.clique_vertices();
    let mut edges = Vec::new();
    for a in cliques.clone() {
        for c in a + 1..cliques.end {
            edges.push((a, c, Color::Gray));
        }
    }
    for j in 1..=k {
        for i in 1..=b {
            if (j >> (i - 1)) & 1 == 1 {
                for c in layout.clique(j) {
                    edges.push((c, layout.x(i), Color::Gray));
                }
            }
        }
    }
    let mut next = layout.x(b) + 1;
    for i in 2..=b {
        for _ in 0..i - 1 {
            edges.push((layout.x(i), next, Color::Gray));
            next += 1;
        }
    }
    debug_assert_eq!(next, layout.n());
    ColoredGraph::new(layout.n(), edges)
}

/// Relative weights of Gray, Black and White edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColorWeights {
    pub gray: f64,
    pub black: f64,
    pub white: f64,
}

impl ColorWeights {
    pub const GRAY: ColorWeights = ColorWeights {
        gray: 1.0,
        black: 0.0,
        white: 0.0,
    };
    pub const UNIFORM: ColorWeights = ColorWeights {
        gray: 1.0,
        black: 1.0,
        white: 1.0,
    };
}

/// Uniform `[0, 1)` from the top 53 bits of one 64-bit draw.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Erdős–Rényi style colored graph.
///
/// Stream: `ChaCha8Rng::seed_from_u64(seed)`. Pairs `(u, v)`, `u < v`, are
/// visited in lexicographic order; one draw decides presence (`< p`) and,
/// if present, a second draw picks the color by cumulative normalised
/// weights in the order Gray, Black, White.
pub fn gen_random(n: usize, p: f64, weights: ColorWeights, seed: u64) -> Result<ColoredGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} not in [0, 1]")));
    }
    let ColorWeights { gray, black, white } = weights;
    if [gray, black, white].iter().any(|w| w.is_nan() || *w < 0.0) || gray + black + white <= 0.0 {
        return Err(Error::InvalidParameter(
            "weights must be non-negative and not all zero".into(),
        ));
    }
    let total = gray + black + white;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit(&mut rng) < p {
                let r = unit(&mut rng) * total;
                let c = if r < gray {
                    Color::Gray
                } else if r < gray + black {
                    Color::Black
                } else {
                    Color::White
                };
                // Guard against rounding choosing a zero-weight color.
                let c = match c {
                    Color::White if white == 0.0 => {
                        if black > 0.0 {
                            Color::Black
                        } else {
                            Color::Gray
                        }
                    }
                    c => c,
                };
                edges.push((u, v, c));
            }
        }
    }
    ColoredGraph::new(n, edges)
}

/// Uniform random labelled tree on `n` vertices (Prüfer decoding), all Gray.
pub fn gen_random_tree(n: usize, seed: u64) -> ColoredGraph {
    if n <= 1 {
        return ColoredGraph::empty(n);
    }
    if n == 2 {
        return ColoredGraph::new(2, [(0, 1, Color::Gray)]).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c, Color::Gray));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1], Color::Gray));
    ColoredGraph::new(n, edges).expect("Prüfer decoding yields a simple tree")
}
