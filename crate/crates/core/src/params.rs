//! Graph parameters the engines are built on: minimum vertex cover,
//! (colored) twin partitions, and the class structure of non-cover
//! vertices relative to a cover.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    /// Sorted, distinct.
    pub vertices: Vec<usize>,
}

impl VertexCover {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexCover { vertices }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Errors with the first uncovered edge, if any.
    pub fn check(&self, g: &ColoredGraph) -> Result<()> {
        match g.uncovered_edge(&self.vertices) {
            Some(e) => Err(Error::NotACover(e.u, e.v)),
            None => Ok(()),
        }
    }
}

/// Exact minimum vertex cover.
///
/// Branches on a maximum-degree vertex `v` (take `v`, or take all of
/// `N(v)`), after exhausting degree-0/1 reductions, pruned by the size of
/// a greedy maximal matching in the residual graph. Deterministic: ties go
/// to the smallest vertex id.
pub fn min_vertex_cover(g: &ColoredGraph) -> VertexCover {
    let adj: Vec<Vec<usize>> = (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut search = CoverSearch {
        adj,
        best: greedy_cover(g),
    };
    let mut alive = vec![true; g.n()];
    search.branch(&mut alive, &mut Vec::new());
    VertexCover::new(search.best)
}

fn greedy_cover(g: &ColoredGraph) -> Vec<usize> {
    let mut residual: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut taken = vec![false; g.n()];
    let mut cover = Vec::new();
    loop {
        let Some(v) = (0..g.n())
            .filter(|&v| residual[v] > 0)
            .max_by_key(|&v| (residual[v], std::cmp::Reverse(v)))
        else {
            break;
        };
        taken[v] = true;
        residual[v] = 0;
        cover.push(v);
        for &(w, _) in g.neighbors(v) {
            if !taken[w] {
                residual[w] -= 1;
            }
        }
    }
    cover
}

struct CoverSearch {
    adj: Vec<Vec<usize>>,
    best: Vec<usize>,
}

impl CoverSearch {
    fn degree(&self, alive: &[bool], v: usize) -> usize {
        self.adj[v].iter().filter(|&&w| alive[w]).count()
    }

    fn take(&self, alive: &mut [bool], chosen: &mut Vec<usize>, v: usize) {
        alive[v] = false;
        chosen.push(v);
    }

    fn branch(&mut self, alive: &mut Vec<bool>, chosen: &mut Vec<usize>) {
        let mark = chosen.len();
        let saved = alive.clone();

        // Degree-0/1 reductions to a fixpoint.
        loop {
            let mut changed = false;
            for v in 0..alive.len() {
                if !alive[v] {
                    continue;
                }
                match self.degree(alive, v) {
                    0 => {
                        alive[v] = false;
                        changed = true;
                    }
                    1 => {
                        let w = *self.adj[v].iter().find(|&&w| alive[w]).unwrap();
                        self.take(alive, chosen, w);
                        alive[v] = false;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        let pick = (0..alive.len())
            .filter(|&v| alive[v])
            .map(|v| (self.degree(alive, v), v))
            .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));

        match pick {
            None => {
                if chosen.len() < self.best.len() {
                    self.best = chosen.clone();
                }
            }
            Some((_, v)) if chosen.len() + self.matching_bound(alive) < self.best.len() => {
                let mut with_v = alive.clone();
                self.take(&mut with_v, chosen, v);
                self.branch(&mut with_v, chosen);
                chosen.pop();

                let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&w| alive[w]).collect();
                let mut with_n = alive.clone();
                with_n[v] = false;
                for &w in &nbrs {
                    self.take(&mut with_n, chosen, w);
                }
                self.branch(&mut with_n, chosen);
                chosen.truncate(chosen.len() - nbrs.len());
            }
            Some(_) => {}
        }

        chosen.truncate(mark);
        *alive = saved;
    }

    fn matching_bound(&self, alive: &[bool]) -> usize {
        let mut free = alive.to_vec();
        let mut size = 0;
        for v in 0..free.len() {
            if !free[v] {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| free[w]) {
                free[v] = false;
                free[w] = false;
                size += 1;
            }
        }
        size
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionKind {
    /// Plain twins: `N(u) \ {v} = N(v) \ {u}`, colors ignored.
    Twin,
    /// Colored twins: `c(u, w) = c(v, w)` for every `w` outside `{u, v}`.
    ColoredTwin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePartition {
    /// Each module sorted; modules ordered by smallest member.
    pub modules: Vec<Vec<usize>>,
    pub kind: PartitionKind,
}

impl ModulePartition {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// `module_of[v]`.
    pub fn membership(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, m) in self.modules.iter().enumerate() {
            for &v in m {
                if v < n {
                    of[v] = i;
                }
            }
        }
        of
    }

    /// Product of `(|M_i| + 1)`: the number of module-count profiles.
    pub fn profile_count(&self) -> f64 {
        self.modules.iter().map(|m| (m.len() + 1) as f64).product()
    }

    /// Checks that the modules partition `0..n`, and that every module is a
    /// set of pairwise (colored) twins with uniform internal adjacency.
    pub fn validate(&self, g: &ColoredGraph) -> Result<()> {
        let n = g.n();
        let mut seen = vec![false; n];
        for m in &self.modules {
            if m.is_empty() {
                return Err(Error::InvalidPartition("empty module".into()));
            }
            for &v in m {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two modules")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        let colored = self.kind == PartitionKind::ColoredTwin;
        for m in &self.modules {
            for (i, &a) in m.iter().enumerate() {
                for &b in &m[i + 1..] {
                    if !are_twins(g, a, b, colored) {
                        return Err(Error::InvalidPartition(format!(
                            "{a} and {b} are not {}twins",
                            if colored { "colored " } else { "" }
                        )));
                    }
                }
            }
            let internal = internal_color(g, m, colored);
            if internal.is_none() {
                return Err(Error::InvalidPartition(format!(
                    "module starting at {} is not internally uniform",
                    m[0]
                )));
            }
        }
        Ok(())
    }
}

/// `Some(c)` when all internal pairs share adjacency `c` (`None` inside
/// meaning no edge); `None` when the module is not uniform.
pub(crate) fn internal_color(g: &ColoredGraph, m: &[usize], colored: bool) -> Option<Option<Color>> {
    let view = |c: Option<Color>| if colored { c } else { c.map(|_| Color::Gray) };
    let mut first: Option<Option<Color>> = None;
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            let c = view(g.color(a, b));
            match first {
                None => first = Some(c),
                Some(f) if f != c => return None,
                _ => {}
            }
        }
    }
    Some(first.unwrap_or(None))
}

/// Twin predicate; with `colored`, edge colors must agree as well.
pub fn are_twins(g: &ColoredGraph, u: usize, v: usize, colored: bool) -> bool {
    if u == v {
        return true;
    }
    let view = |c: Option<Color>| if colored { c } else { c.map(|_| Color::Gray) };
    (0..g.n())
        .filter(|&w| w != u && w != v)
        .all(|w| view(g.color(u, w)) == view(g.color(v, w)))
}

/// Coarsest (colored) twin partition.
///
/// Vertices are grouped by their adjacency row with the diagonal entry
/// overwritten by a candidate internal color `c`: `u` and `v` are
/// (colored) twins exactly when their rows agree under `c = c(u, v)`.
/// The (colored) twin relation is an equivalence, so the grouping is the
/// minimum partition.
pub fn nd_partition(g: &ColoredGraph, ignore_colors: bool) -> ModulePartition {
    let n = g.n();
    let code = |c: Option<Color>| -> u8 {
        match c {
            None => 0,
            Some(_) if ignore_colors => 1,
            Some(Color::Gray) => 1,
            Some(Color::Black) => 2,
            Some(Color::White) => 3,
        }
    };
    let diag: &[u8] = if ignore_colors { &[0, 1] } else { &[0, 1, 2, 3] };
    let mut tables: Vec<HashMap<Vec<u8>, usize>> = vec![HashMap::new(); diag.len()];
    let mut modules: Vec<Vec<usize>> = Vec::new();

    for v in 0..n {
        let mut row = vec![0u8; n];
        for &(w, c) in g.neighbors(v) {
            row[w] = code(Some(c));
        }
        let mut joined = None;
        for (t, &d) in diag.iter().enumerate() {
            row[v] = d;
            if let Some(&mid) = tables[t].get(&row) {
                joined = Some(mid);
                break;
            }
        }
        match joined {
            Some(mid) => modules[mid].push(v),
            None => {
                let mid = modules.len();
                modules.push(vec![v]);
                for (t, &d) in diag.iter().enumerate() {
                    row[v] = d;
                    tables[t].insert(row.clone(), mid);
                }
            }
        }
    }

    ModulePartition {
        modules,
        kind: if ignore_colors {
            PartitionKind::Twin
        } else {
            PartitionKind::ColoredTwin
        },
    }
}

/// Adjacency of one non-cover vertex to the alive cover vertices, aligned
/// with [`EquivalenceClasses::cover`]. `None` means no edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassVector(pub Vec<Option<Color>>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    /// Sorted.
    pub members: Vec<usize>,
    /// Smallest member.
    pub representative: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    /// Alive cover vertices, sorted; the index space of every vector.
    pub cover: Vec<usize>,
    pub classes: BTreeMap<ClassVector, VertexClass>,
}

fn check_alive_cover(g: &ColoredGraph, alive: &[bool], cover: &VertexCover) -> Result<()> {
    for &(e, _) in g.edges() {
        if alive[e.u] && alive[e.v] && !cover.contains(e.u) && !cover.contains(e.v) {
            return Err(Error::NotACover(e.u, e.v));
        }
    }
    Ok(())
}

/// Groups the alive non-cover vertices by their colored adjacency to the
/// alive part of `cover`.
pub fn equivalence_classes(
    g: &ColoredGraph,
    alive: &[bool],
    cover: &VertexCover,
) -> Result<EquivalenceClasses> {
    check_alive_cover(g, alive, cover)?;
    let s: Vec<usize> = cover.vertices.iter().copied().filter(|&u| alive[u]).collect();
    let mut classes: BTreeMap<ClassVector, VertexClass> = BTreeMap::new();
    for v in (0..g.n()).filter(|&v| alive[v] && !cover.contains(v)) {
        let x = ClassVector(s.iter().map(|&u| g.color(u, v)).collect());
        classes
            .entry(x)
            .or_insert_with(|| VertexClass {
                members: Vec::new(),
                representative: v,
            })
            .members
            .push(v);
    }
    Ok(EquivalenceClasses { cover: s, classes })
}

/// `E^R(S)`: for each class, the edges from its representative into the
/// alive cover. Sorted.
pub fn representative_edges(
    g: &ColoredGraph,
    alive: &[bool],
    cover: &VertexCover,
) -> Result<Vec<(Edge, Color)>> {
    let ec = equivalence_classes(g, alive, cover)?;
    let mut out = Vec::new();
    for (x, class) in &ec.classes {
        for (i, c) in x.0.iter().enumerate() {
            if let Some(c) = c {
                out.push((Edge::new(ec.cover[i], class.representative), *c));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_grid, gen_lower_nd, gen_lower_vc, GridVariant};

    fn gray(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        ColoredGraph::new(n, edges.iter().map(|&(a, b)| (a, b, Color::Gray))).unwrap()
    }

    fn star(leaves: usize) -> ColoredGraph {
        gray(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }

    #[test]
    fn cover_examples() {
        assert_eq!(min_vertex_cover(&gray(2, &[(0, 1)])).size(), 1);
        let c4 = gen_grid(2, 2, GridVariant::Cram);
        let vc = min_vertex_cover(&c4);
        assert_eq!(vc.size(), 2);
        vc.check(&c4).unwrap();
        let lower = gen_lower_vc(4, 4096).unwrap();
        let vc = min_vertex_cover(&lower);
        assert_eq!(vc.vertices, vec![0, 1, 2, 3]);
        assert_eq!(min_vertex_cover(&ColoredGraph::empty(4)).size(), 0);
    }

    #[test]
    fn partition_examples() {
        let k3 = gray(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(nd_partition(&k3, true).modules, vec![vec![0, 1, 2]]);
        let p3 = gray(3, &[(0, 1), (1, 2)]);
        assert_eq!(nd_partition(&p3, true).modules, vec![vec![0, 2], vec![1]]);
        assert!(nd_partition(&ColoredGraph::empty(0), false).is_empty());
        assert_eq!(nd_partition(&ColoredGraph::empty(3), false).len(), 1);
    }

    #[test]
    fn lower_nd_partition_counts_modules() {
        // C1, C2, C3, x1, x2 and the single pendant of x2. x1 carries no
        // pendant, so there are k + 2*log2(k+1) - 1 modules.
        let g = gen_lower_nd(3, 2).unwrap();
        let p = nd_partition(&g, true);
        assert_eq!(p.len(), 6);
        p.validate(&g).unwrap();
        for (i, a) in p.modules.iter().enumerate() {
            for b in &p.modules[i + 1..] {
                assert!(!are_twins(&g, a[0], b[0], false));
            }
        }
        assert_eq!(nd_partition(&gen_lower_nd(7, 2).unwrap(), true).len(), 7 + 6 - 1);
    }

    #[test]
    fn colored_partition_splits_by_color() {
        // star with one black and two gray leaves
        let g = ColoredGraph::new(4, [(0, 1, Color::Black), (0, 2, Color::Gray), (0, 3, Color::Gray)])
            .unwrap();
        assert_eq!(nd_partition(&g, false).modules, vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(nd_partition(&g, true).modules, vec![vec![0], vec![1, 2, 3]]);
        // triangle with mixed internal colors is not one colored module
        let t = ColoredGraph::new(3, [(0, 1, Color::Gray), (1, 2, Color::Black), (0, 2, Color::Gray)])
            .unwrap();
        let p = nd_partition(&t, false);
        p.validate(&t).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn validate_rejects_bad_partitions() {
        let p3 = gray(3, &[(0, 1), (1, 2)]);
        let bad = ModulePartition {
            modules: vec![vec![0, 1], vec![2]],
            kind: PartitionKind::Twin,
        };
        assert!(bad.validate(&p3).is_err());
        let missing = ModulePartition {
            modules: vec![vec![0, 2]],
            kind: PartitionKind::Twin,
        };
        assert!(missing.validate(&p3).is_err());
        let dup = ModulePartition {
            modules: vec![vec![0, 2], vec![1, 2]],
            kind: PartitionKind::Twin,
        };
        assert!(dup.validate(&p3).is_err());
    }

    #[test]
    fn classes_examples() {
        let black = ColoredGraph::new(2, [(0, 1, Color::Black)]).unwrap();
        let s = VertexCover::new(vec![0]);
        let ec = equivalence_classes(&black, &[true, true], &s).unwrap();
        assert_eq!(ec.classes.len(), 1);
        let (x, class) = ec.classes.iter().next().unwrap();
        assert_eq!(x, &ClassVector(vec![Some(Color::Black)]));
        assert_eq!(class.members, vec![1]);
        assert_eq!(
            representative_edges(&black, &[true, true], &s).unwrap(),
            vec![(Edge::new(0, 1), Color::Black)]
        );

        let k13 = star(3);
        let s = VertexCover::new(vec![0]);
        let all = [true; 4];
        let ec = equivalence_classes(&k13, &all, &s).unwrap();
        assert_eq!(ec.classes.len(), 1);
        assert_eq!(ec.classes.values().next().unwrap().members, vec![1, 2, 3]);
        assert_eq!(representative_edges(&k13, &all, &s).unwrap().len(), 1);

        assert!(equivalence_classes(&k13, &all, &VertexCover::new(vec![1])).is_err());
    }

    #[test]
    fn c4_with_opposite_cover_has_one_class() {
        // cells 0 1 / 2 3: 0 and 3 are opposite
        let c4 = gen_grid(2, 2, GridVariant::Cram);
        let s = VertexCover::new(vec![0, 3]);
        let all = [true; 4];
        let ec = equivalence_classes(&c4, &all, &s).unwrap();
        assert_eq!(ec.classes.len(), 1);
        assert_eq!(ec.classes.values().next().unwrap().representative, 1);
        assert_eq!(representative_edges(&c4, &all, &s).unwrap().len(), 2);
    }

    #[test]
    fn lower_vc_two_has_four_singleton_classes() {
        let g = gen_lower_vc(2, 4096).unwrap();
        let s = VertexCover::new(vec![0, 1]);
        let ec = equivalence_classes(&g, &[true; 6], &s).unwrap();
        assert_eq!(ec.classes.len(), 4);
        assert!(ec.classes.values().all(|c| c.members.len() == 1));
        // v_1 (vertex 1) is Black to all four; u_1 sees none/G/B/W
        let u_entries: Vec<_> = ec.classes.keys().map(|x| x.0[0]).collect();
        assert_eq!(u_entries, vec![None, Some(Color::Gray), Some(Color::Black), Some(Color::White)]);
    }
}
