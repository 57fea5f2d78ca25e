//! Colored graph model and the `.cak` text format.
//!
//! A `.cak` file is ASCII with LF line endings:
//!
//! ```text
//! c optional comment
//! p cak <n> <m>
//! e <u> <v> <g|b|w>      (m times, 1-based vertex ids)
//! ```
//!
//! Internally vertices are dense 0-based ids.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge color. Gray edges are playable by both players, Black only by
/// [`Player::B`], White only by [`Player::W`].
///
/// The derived order (Gray < Black < White, with `None < Some(_)` for a
/// missing edge) is the total order used for class vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Gray,
    Black,
    White,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Gray, Color::Black, Color::White];

    pub fn letter(self) -> char {
        match self {
            Color::Gray => 'g',
            Color::Black => 'b',
            Color::White => 'w',
        }
    }

    pub fn from_letter(s: &str) -> Option<Color> {
        match s {
            "g" => Some(Color::Gray),
            "b" => Some(Color::Black),
            "w" => Some(Color::White),
            _ => None,
        }
    }

    pub fn playable_by(self, p: Player) -> bool {
        matches!(
            (self, p),
            (Color::Gray, _) | (Color::Black, Player::B) | (Color::White, Player::W)
        )
    }

    /// Black and White trade places; Gray is fixed.
    pub fn swapped(self) -> Color {
        match self {
            Color::Gray => Color::Gray,
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    B,
    W,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::B => Player::W,
            Player::W => Player::B,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Player::B => 0,
            Player::W => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::B => "B",
            Player::W => "W",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(Player::B),
            "W" | "w" => Ok(Player::W),
            _ => Err(format!("unknown player '{s}' (expected B or W)")),
        }
    }
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// Immutable simple graph with colored edges on vertices `0..n`.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    n: usize,
    /// Sorted by edge.
    edges: Vec<(Edge, Color)>,
    /// Per vertex, neighbours sorted by id.
    adj: Vec<Vec<(usize, Color)>>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for ColoredGraph {}

impl ColoredGraph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Color)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (a, b, c) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{a}, {b}}} has an endpoint >= n = {n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            let e = Edge::new(a, b);
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e}")));
            }
            list.push((e, c));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, mut edges: Vec<(Edge, Color)>) -> Self {
        edges.sort();
        let mut adj = vec![Vec::new(); n];
        for &(e, c) in &edges {
            adj[e.u].push((e.v, c));
            adj[e.v].push((e.u, c));
        }
        for row in &mut adj {
            row.sort();
        }
        ColoredGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Edge, Color)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, Color)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn color(&self, a: usize, b: usize) -> Option<Color> {
        let row = &self.adj[a];
        row.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|i| row[i].1)
    }

    /// True when every edge is Gray (plain Arc Kayles).
    pub fn is_gray(&self) -> bool {
        self.edges.iter().all(|&(_, c)| c == Color::Gray)
    }

    /// Number of distinct edge colors present.
    pub fn colors_used(&self) -> usize {
        let set: BTreeSet<Color> = self.edges.iter().map(|&(_, c)| c).collect();
        set.len()
    }

    /// Acyclic check via union-find.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(e, _) in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_forest()
    }

    /// `G - u - v` for a played edge: every edge touching `u` or `v` is
    /// dropped. Vertex ids are kept; `u` and `v` become isolated.
    pub fn remove_closed_edge(&self, e: Edge) -> Result<ColoredGraph> {
        if e.u >= self.n || e.v >= self.n || self.color(e.u, e.v).is_none() {
            return Err(Error::MissingEdge(e.u, e.v));
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(f, _)| f.u != e.u && f.u != e.v && f.v != e.u && f.v != e.v)
            .collect();
        Ok(Self::from_sorted_unique(self.n, edges))
    }

    /// Relabels vertex `x` as `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> Result<ColoredGraph> {
        if perm.len() != self.n {
            return Err(Error::NotAPermutation(self.n));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NotAPermutation(self.n));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(e, c)| (Edge::new(perm[e.u], perm[e.v]), c))
            .collect();
        Ok(Self::from_sorted_unique(self.n, edges))
    }

    pub fn swap_colors(&self) -> ColoredGraph {
        let edges = self.edges.iter().map(|&(e, c)| (e, c.swapped())).collect();
        Self::from_sorted_unique(self.n, edges)
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let off = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(
                other
                    .edges
                    .iter()
                    .map(|&(e, c)| (Edge::new(e.u + off, e.v + off), c)),
            )
            .collect();
        Self::from_sorted_unique(self.n + other.n, edges)
    }

    /// Keeps only edges with both endpoints in `keep`; ids are unchanged.
    pub fn restrict_to(&self, keep: &[bool]) -> ColoredGraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(e, _)| keep[e.u] && keep[e.v])
            .collect();
        Self::from_sorted_unique(self.n, edges)
    }

    /// True if `set` touches every edge.
    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        self.uncovered_edge(set).is_none()
    }

    pub(crate) fn uncovered_edge(&self, set: &[usize]) -> Option<Edge> {
        let mut inside = vec![false; self.n];
        for &v in set {
            if v < self.n {
                inside[v] = true;
            }
        }
        self.edges
            .iter()
            .map(|&(e, _)| e)
            .find(|e| !inside[e.u] && !inside[e.v])
    }
}

/// Parses the `.cak` format.
pub fn parse_graph(text: &[u8]) -> Result<ColoredGraph> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Syntax {
        line: 0,
        msg: format!("not ASCII/UTF-8: {e}"),
    })?;
    let mut header: Option<(usize, usize)> = None;
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        let syntax = |msg: &str| Error::Syntax {
            line,
            msg: msg.to_string(),
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(syntax("second header line"));
                }
                if tok.next() != Some("cak") {
                    return Err(syntax("expected 'p cak <n> <m>'"));
                }
                let n = parse_count(tok.next(), line, "n")?;
                let m = parse_count(tok.next(), line, "m")?;
                if tok.next().is_some() {
                    return Err(syntax("trailing tokens after header"));
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(syntax("edge line before 'p cak' header"));
                };
                let a = parse_vertex(tok.next(), line, n)?;
                let b = parse_vertex(tok.next(), line, n)?;
                let letter = tok.next().ok_or_else(|| syntax("missing edge color"))?;
                let color = Color::from_letter(letter).ok_or_else(|| Error::UnknownColor {
                    line,
                    letter: letter.to_string(),
                })?;
                if tok.next().is_some() {
                    return Err(syntax("trailing tokens after edge"));
                }
                if a == b {
                    return Err(Error::SelfLoop { line, v: a + 1 });
                }
                let e = Edge::new(a, b);
                if !seen.insert(e) {
                    return Err(Error::DuplicateEdge {
                        line,
                        u: e.u + 1,
                        v: e.v + 1,
                    });
                }
                edges.push((e, color));
            }
            other => return Err(syntax(&format!("unknown line type '{other}'"))),
        }
    }

    let (n, m) = header.ok_or(Error::Syntax {
        line: 0,
        msg: "missing 'p cak <n> <m>' header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Syntax {
            line: 0,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Ok(ColoredGraph::from_sorted_unique(n, edges))
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok()).ok_or(Error::Syntax {
        line,
        msg: format!("expected a non-negative integer for {what}"),
    })
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let id: usize = tok.and_then(|t| t.parse().ok()).ok_or(Error::Syntax {
        line,
        msg: "expected a vertex id".into(),
    })?;
    if id == 0 || id > n {
        return Err(Error::VertexOutOfRange { line, id, n });
    }
    Ok(id - 1)
}

/// Writes the `.cak` form; edges sorted by `(u, v)`, every line LF-terminated.
pub fn serialize_graph(g: &ColoredGraph) -> String {
    let mut out = format!("p cak {} {}\n", g.n, g.m());
    for &(e, c) in &g.edges {
        out.push_str(&format!("e {} {} {}\n", e.u + 1, e.v + 1, c.letter()));
    }
    out
}

impl FromStr for ColoredGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s.as_bytes())
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}
