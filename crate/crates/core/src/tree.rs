//! Arc Kayles on forests: Sprague–Grundy values memoized on canonical
//! forms of the component trees, plus counters for AK- and NK-rooted
//! subtrees.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use crate::board::{bit, bits, full_mask, Board, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Player};
use crate::outcome::{mex, Grundy, Outcome, SearchStats};

/// AHU code of a rooted tree: `(` + sorted child codes + `)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedCanonicalForm(pub Vec<u8>);

/// Rooted code at a centroid; the smaller one when there are two.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCanonicalForm(pub Vec<u8>);

fn rooted_code(adj: &[Mask], comp: Mask, root: usize) -> Vec<u8> {
    fn go(adj: &[Mask], comp: Mask, v: usize, parent: Option<usize>) -> Vec<u8> {
        let mut kids: Vec<Vec<u8>> = bits(adj[v] & comp)
            .filter(|&w| Some(w) != parent)
            .map(|w| go(adj, comp, w, Some(v)))
            .collect();
        kids.sort_unstable();
        let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        out.push(b'(');
        for k in kids {
            out.extend_from_slice(&k);
        }
        out.push(b')');
        out
    }
    go(adj, comp, root, None)
}

fn centroids(adj: &[Mask], comp: Mask) -> Vec<usize> {
    let n = comp.count_ones() as usize;
    let root = comp.trailing_zeros() as usize;
    // DFS order with parents, then subtree sizes bottom-up.
    let mut order = vec![root];
    let mut parent = HashMap::from([(root, usize::MAX)]);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in bits(adj[v] & comp) {
            if parent[&v] != w {
                parent.insert(w, v);
                order.push(w);
            }
        }
        i += 1;
    }
    let mut size: HashMap<usize, usize> = HashMap::new();
    let mut heaviest: HashMap<usize, usize> = HashMap::new();
    for &v in order.iter().rev() {
        let s = 1 + bits(adj[v] & comp)
            .filter(|&w| parent[&v] != w)
            .map(|w| size[&w])
            .sum::<usize>();
        size.insert(v, s);
        let child_max = bits(adj[v] & comp)
            .filter(|&w| parent[&v] != w)
            .map(|w| size[&w])
            .max()
            .unwrap_or(0);
        heaviest.insert(v, child_max.max(n - s));
    }
    let best = heaviest.values().copied().min().unwrap_or(0);
    let mut out: Vec<usize> = order.into_iter().filter(|v| heaviest[v] == best).collect();
    out.sort_unstable();
    out
}

fn tree_code(adj: &[Mask], comp: Mask) -> Vec<u8> {
    centroids(adj, comp)
        .into_iter()
        .map(|c| rooted_code(adj, comp, c))
        .min()
        .unwrap_or_default()
}

fn check_tree(g: &ColoredGraph) -> Result<Board> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Board::new(g, MASK_BITS)
}

pub fn rooted_canonical_form(g: &ColoredGraph, root: usize) -> Result<RootedCanonicalForm> {
    let board = check_tree(g)?;
    check_root(g, root)?;
    Ok(RootedCanonicalForm(rooted_code(&board.adj, full_mask(g.n()), root)))
}

pub fn tree_canonical_form(g: &ColoredGraph) -> Result<TreeCanonicalForm> {
    let board = check_tree(g)?;
    Ok(TreeCanonicalForm(tree_code(&board.adj, full_mask(g.n()))))
}

fn check_root(g: &ColoredGraph, root: usize) -> Result<()> {
    if root >= g.n() {
        return Err(Error::InvalidParameter(format!("root {root} out of range")));
    }
    Ok(())
}

/// Grundy evaluator whose memo outlives single queries, so isomorphic
/// components met anywhere share one entry.
#[derive(Debug, Default)]
pub struct TreeSolver {
    memo: HashMap<TreeCanonicalForm, u32>,
    stats: SearchStats,
}

impl TreeSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            distinct_keys: self.memo.len() as u64,
            ..self.stats
        }
    }

    fn prepare(g: &ColoredGraph, alive: Mask) -> Result<(Board, Mask)> {
        let board = Board::new(g, MASK_BITS)?;
        let alive = alive & full_mask(g.n());
        for c in board.components(alive) {
            if board.alive_edges(c).len() + 1 != c.count_ones() as usize {
                return Err(Error::NotAForest);
            }
        }
        board
            .is_gray_on(alive)
            .map_err(|e| Error::NotImpartial(e.u, e.v))?;
        Ok((board, alive))
    }

    pub fn grundy(&mut self, g: &ColoredGraph, alive: Mask) -> Result<Grundy> {
        let (board, alive) = Self::prepare(g, alive)?;
        Ok(Grundy(self.position(&board, alive)))
    }

    pub fn solve(&mut self, g: &ColoredGraph, alive: Mask, turn: Player) -> Result<Outcome> {
        let start = Instant::now();
        let (board, alive) = Self::prepare(g, alive)?;
        let value = self.position(&board, alive);
        let winning_move = if value == 0 {
            None
        } else {
            board
                .moves(alive, turn)
                .into_iter()
                .find(|e| self.position(&board, alive & !bit(e.u) & !bit(e.v)) == 0)
        };
        debug_assert_eq!(winning_move.is_some(), value != 0);
        let mut stats = self.stats();
        stats.elapsed = start.elapsed();
        Ok(Outcome {
            winner: if value != 0 { turn } else { turn.opponent() },
            winning_move,
            stats,
        })
    }

    fn position(&mut self, board: &Board, alive: Mask) -> u32 {
        board
            .components(alive)
            .into_iter()
            .map(|c| self.component(board, c))
            .fold(0, |a, b| a ^ b)
    }

    fn component(&mut self, board: &Board, comp: Mask) -> u32 {
        self.stats.node_expansions += 1;
        if comp.count_ones() < 2 {
            return 0;
        }
        let key = TreeCanonicalForm(tree_code(&board.adj, comp));
        if let Some(&v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return v;
        }
        let children: Vec<u32> = board
            .alive_edges(comp)
            .into_iter()
            .map(|e| self.position(board, comp & !bit(e.u) & !bit(e.v)))
            .collect();
        let v = mex(children);
        self.memo.insert(key, v);
        v
    }
}

pub fn grundy_tree(g: &ColoredGraph, alive: Mask) -> Result<Grundy> {
    TreeSolver::new().grundy(g, alive)
}

pub fn solve_tree(g: &ColoredGraph, alive: Mask, turn: Player) -> Result<Outcome> {
    TreeSolver::new().solve(g, alive, turn)
}

/// Above this order [`count_ak_subtrees`] switches from matching
/// enumeration to the subtree DP.
pub const AK_EXHAUSTIVE_MAX_N: usize = 16;

/// Non-isomorphic AK-rooted subtrees at `root`: components of `root` left
/// after deleting the endpoints of a matching, where every other remaining
/// vertex is isolated.
pub fn count_ak_subtrees(tree: &ColoredGraph, root: usize) -> Result<usize> {
    if tree.n() <= AK_EXHAUSTIVE_MAX_N {
        count_ak_subtrees_exhaustive(tree, root)
    } else {
        count_ak_subtrees_dp(tree, root)
    }
}

/// Enumerates every matching.
pub fn count_ak_subtrees_exhaustive(tree: &ColoredGraph, root: usize) -> Result<usize> {
    let board = check_tree(tree)?;
    check_root(tree, root)?;
    let edges = board.alive_edges(full_mask(tree.n()));
    let all = full_mask(tree.n());
    let mut codes = HashSet::new();

    fn rec(
        board: &Board,
        edges: &[crate::graph::Edge],
        all: Mask,
        root: usize,
        used: Mask,
        codes: &mut HashSet<Vec<u8>>,
    ) {
        let Some((e, rest)) = edges.split_first() else {
            if used & bit(root) != 0 {
                return;
            }
            let left = all & !used;
            let comp = board
                .components(left)
                .into_iter()
                .find(|c| c & bit(root) != 0)
                .unwrap();
            if bits(left & !comp).all(|v| board.adj[v] & left == 0) {
                codes.insert(rooted_code(&board.adj, comp, root));
            }
            return;
        };
        rec(board, rest, all, root, used, codes);
        let m = bit(e.u) | bit(e.v);
        if used & m == 0 {
            rec(board, rest, all, root, used | m, codes);
        }
    }

    rec(&board, &edges, all, root, 0, &mut codes);
    Ok(codes.len())
}

/// Subtree DP over the tree rooted at `root`.
///
/// `matched(x)`: the subtree of `x` can be cleared with `x` matched to a
/// child. `clear(x)`: it can be cleared once `x`'s parent is gone, either
/// by `matched(x)` or by matching every child downward. `codes(x)`: the
/// shapes the kept part below `x` can take while `x` is kept; each child
/// is kept (one of its shapes) or, if `matched(child)`, cut away.
pub fn count_ak_subtrees_dp(tree: &ColoredGraph, root: usize) -> Result<usize> {
    let board = check_tree(tree)?;
    check_root(tree, root)?;
    let n = tree.n();
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; n];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in bits(board.adj[v]) {
            if w != parent[v] {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let kids_of: Vec<Vec<usize>> = (0..n)
        .map(|v| bits(board.adj[v]).filter(|&w| w != parent[v]).collect())
        .collect();

    let mut matched = vec![false; n];
    let mut clear = vec![false; n];
    let mut codes: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::new(); n];
    for &x in order.iter().rev() {
        let kids = &kids_of[x];
        matched[x] = kids.iter().any(|&d| {
            kids_of[d].iter().all(|&f| clear[f]) && kids.iter().all(|&e| e == d || clear[e])
        });
        clear[x] = matched[x] || kids.iter().all(|&e| matched[e]);

        let mut partial: BTreeSet<Vec<Vec<u8>>> = BTreeSet::from([Vec::new()]);
        for &c in kids {
            let mut next = BTreeSet::new();
            for p in &partial {
                if matched[c] {
                    next.insert(p.clone());
                }
                for code in &codes[c] {
                    let mut q = p.clone();
                    let at = q.partition_point(|k| k < code);
                    q.insert(at, code.clone());
                    next.insert(q);
                }
            }
            partial = next;
        }
        codes[x] = partial
            .into_iter()
            .map(|ks| {
                let mut out = vec![b'('];
                for k in ks {
                    out.extend_from_slice(&k);
                }
                out.push(b')');
                out
            })
            .collect();
        for &c in kids {
            codes[c].clear();
        }
    }
    Ok(codes[root].len())
}

/// Non-isomorphic NK-rooted subtrees at `root`: trees `T[V \ N[U]]` for an
/// independent set `U` such that what remains is connected and holds
/// `root`.
pub fn count_nk_subtrees(tree: &ColoredGraph, root: usize) -> Result<usize> {
    let board = check_tree(tree)?;
    check_root(tree, root)?;
    let all = full_mask(tree.n());
    let mut codes = HashSet::new();

    // U is built in id order; members of N[root] may never join it.
    fn rec(
        board: &Board,
        v: usize,
        all: Mask,
        root: usize,
        chosen: Mask,
        codes: &mut HashSet<Vec<u8>>,
    ) {
        if v == board.n {
            let closed = bits(chosen).fold(chosen, |m, u| m | board.adj[u]);
            let left = all & !closed;
            if board.components(left).len() == 1 {
                codes.insert(rooted_code(&board.adj, left, root));
            }
            return;
        }
        rec(board, v + 1, all, root, chosen, codes);
        let forbidden = board.adj[root] | bit(root);
        if forbidden & bit(v) == 0 && board.adj[v] & chosen == 0 {
            rec(board, v + 1, all, root, chosen | bit(v), codes);
        }
    }

    rec(&board, 0, all, root, 0, &mut codes);
    Ok(codes.len())
}
