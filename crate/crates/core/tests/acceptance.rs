//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; the process exits non-zero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cak_core::board::{bit, full_mask, Mask};
use cak_core::generate::LowerNdLayout;
use cak_core::nd::clique_module_vertices;
use cak_core::tree::{count_ak_subtrees_dp, count_ak_subtrees_exhaustive};
use cak_core::vc::vc_key_bound;
use cak_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_INSTANCES: usize = 500;
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const GARDNER_LIMIT: Duration = Duration::from_secs(60);
const LOWER_VC_LIMIT: Duration = Duration::from_secs(600);
const TREE_BOUND_TREES: usize = 200;
const ISO_INSTANCES: usize = 100;
const ISO_PERMUTATIONS: usize = 10;
/// Relative slack for the floating-point AM-GM comparison.
const AMGM_EPS: f64 = 1e-9;

const MIXES: [ColorWeights; 6] = [
    ColorWeights::GRAY,
    ColorWeights::UNIFORM,
    ColorWeights { gray: 0.0, black: 1.0, white: 1.0 },
    ColorWeights { gray: 1.0, black: 1.0, white: 0.0 },
    ColorWeights { gray: 1.0, black: 0.0, white: 1.0 },
    ColorWeights { gray: 2.0, black: 1.0, white: 1.0 },
];
const PS: [f64; 3] = [0.2, 0.5, 0.8];

type Check = std::result::Result<String, String>;

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> ColoredGraph {
    let n = rng.gen_range(1..=max_n);
    let p = PS[rng.gen_range(0..PS.len())];
    let w = MIXES[rng.gen_range(0..MIXES.len())];
    gen_random(n, p, w, rng.gen()).unwrap()
}

fn winner(g: &ColoredGraph, turn: Player) -> Player {
    solve_subset(g, turn).unwrap().winner
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut forests = 0;
    for i in 0..ORACLE_INSTANCES {
        let g = random_instance(&mut rng, 10);
        let all = full_mask(g.n());
        let partition = nd_partition(&g, false);
        for turn in [Player::B, Player::W] {
            let mut got = vec![
                ("naive", solve_naive(&g, all, turn).unwrap().winner),
                ("subset", solve_subset(&g, turn).unwrap().winner),
                ("vc", solve_vc(&g, turn, None).unwrap().winner),
                ("nd", solve_nd(&g, turn, Some(&partition)).unwrap().winner),
            ];
            if g.is_gray() && g.is_forest() {
                got.push(("tree", solve_tree(&g, all, turn).unwrap().winner));
                forests += 1;
            }
            if got.iter().any(|&(_, w)| w != got[0].1) {
                return Err(format!("instance {i} turn {turn}: {got:?}\n{}", serialize_graph(&g)));
            }
        }
    }
    let took = start.elapsed();
    if took > ORACLE_LIMIT {
        return Err(format!("took {took:?}, limit {ORACLE_LIMIT:?}"));
    }
    Ok(format!(
        "{ORACLE_INSTANCES} instances x 2 turns agree ({} gray-forest runs incl. tree) in {took:.1?}",
        forests
    ))
}

fn gardner_parity() -> Check {
    let start = Instant::now();
    let cases = [(2, 2, false), (2, 4, false), (4, 4, false), (2, 3, true), (2, 5, true), (4, 3, true)];
    for (r, c, first_wins) in cases {
        let g = gen_grid(r, c, GridVariant::Cram);
        let mover_wins = solve_subset(&g, Player::B).unwrap().winner == Player::B;
        if mover_wins != first_wins {
            return Err(format!("Cram {r}x{c}: first player wins = {mover_wins}"));
        }
    }
    let took = start.elapsed();
    if took > GARDNER_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("6 boards match in {took:.1?}"))
}

/// All labelled trees on `n` vertices via Prüfer sequences.
fn all_trees(n: usize) -> Vec<ColoredGraph> {
    if n == 1 {
        return vec![ColoredGraph::empty(1)];
    }
    if n == 2 {
        return vec![ColoredGraph::new(2, [(0, 1, Color::Gray)]).unwrap()];
    }
    let total = n.pow(n as u32 - 2);
    (0..total)
        .map(|mut idx| {
            let code: Vec<usize> = (0..n - 2)
                .map(|_| {
                    let d = idx % n;
                    idx /= n;
                    d
                })
                .collect();
            let mut degree = vec![1; n];
            for &c in &code {
                degree[c] += 1;
            }
            let mut edges = Vec::new();
            for &c in &code {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, c, Color::Gray));
                degree[leaf] -= 1;
                degree[c] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1], Color::Gray));
            ColoredGraph::new(n, edges).unwrap()
        })
        .collect()
}

fn tree_base_cases() -> Check {
    let want = [1, 1, 2, 3];
    let mut ak = Vec::new();
    let mut nk = Vec::new();
    for n in 1..=4 {
        let mut best_ak = 0;
        let mut best_nk = 0;
        for t in all_trees(n) {
            for r in 0..n {
                let a = count_ak_subtrees_exhaustive(&t, r).unwrap();
                if a != count_ak_subtrees_dp(&t, r).unwrap() {
                    return Err(format!("dp and enumeration disagree on n={n} root {r}"));
                }
                best_ak = best_ak.max(a);
                best_nk = best_nk.max(count_nk_subtrees(&t, r).unwrap());
            }
        }
        ak.push(best_ak);
        nk.push(best_nk);
    }
    if ak != want || nk != want {
        return Err(format!("AK {ak:?}, NK {nk:?}, expected {want:?}"));
    }
    Ok(format!("R(1..4) = {ak:?}, NK maxima = {nk:?}"))
}

fn tree_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for _ in 0..TREE_BOUND_TREES {
        let n = rng.gen_range(4..=20);
        let t = gen_random_tree(n, rng.gen());
        let bound = 2f64.powf(n as f64 / 2.0) - 1.0;
        for r in 0..n {
            let c = count_ak_subtrees(&t, r).unwrap();
            if c as f64 > bound {
                return Err(format!("n={n} root {r}: {c} > {bound}\n{}", serialize_graph(&t)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (tree, root) pairs within 2^(n/2)-1"))
}

fn vc_upper_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    while runs < 300 {
        let g = random_instance(&mut rng, 12);
        let cover = min_vertex_cover(&g);
        if cover.size() > 6 {
            continue;
        }
        let gamma = g.colors_used();
        for turn in [Player::B, Player::W] {
            let s = count_vc_positions(&g, turn, Some(&cover)).unwrap();
            let bound = vc_key_bound(cover.size(), gamma);
            if s.distinct_keys as f64 > bound {
                return Err(format!(
                    "tau={} gamma={gamma}: {} keys > {bound}\n{}",
                    cover.size(),
                    s.distinct_keys,
                    serialize_graph(&g)
                ));
            }
            worst = worst.max(s.distinct_keys as f64 / bound);
        }
        runs += 1;
    }
    Ok(format!("{runs} instances x 2 turns, max keys/bound = {worst:.4}"))
}

fn vc_lower_bound() -> Check {
    let mut notes = Vec::new();
    for (k, need) in [(2usize, 4u64), (4, 256)] {
        let start = Instant::now();
        let g = gen_lower_vc(k, generate::DEFAULT_VERTEX_BUDGET).unwrap();
        let cover = VertexCover::new((0..k).collect());
        let s = count_vc_positions(&g, Player::B, Some(&cover)).unwrap();
        let took = start.elapsed();
        if s.node_expansions < need {
            return Err(format!("k={k}: {} expansions < {need}", s.node_expansions));
        }
        if took > LOWER_VC_LIMIT {
            return Err(format!("k={k} took {took:?}"));
        }
        notes.push(format!("k={k} n={}: {} >= {need}", g.n(), s.node_expansions));
    }
    Ok(notes.join("; "))
}

fn nd_upper_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut runs = 0;
    for i in 0..300 {
        let g = random_instance(&mut rng, 12);
        let p = nd_partition(&g, false);
        let product = p.profile_count();
        for turn in [Player::B, Player::W] {
            let s = count_nd_positions(&g, turn, Some(&p), None).unwrap();
            if s.distinct_keys as f64 > 2.0 * product {
                return Err(format!("instance {i}: {} keys > 2 * {product}", s.distinct_keys));
            }
            runs += 1;
        }
        let (n, nu) = (g.n() as f64, p.len() as f64);
        if nu > 0.0 && product > (n / nu + 1.0).powf(nu) * (1.0 + AMGM_EPS) {
            return Err(format!("instance {i}: product {product} > (n/nu+1)^nu"));
        }
    }
    Ok(format!("{runs} runs within 2*prod(|M_i|+1); AM-GM holds"))
}

/// Distinct (clique counts, turn) profiles reachable by clique-internal
/// moves, found by a plain search over alive masks.
fn clique_profiles(k: usize, s: usize) -> usize {
    let layout = LowerNdLayout { k, s };
    let mut seen = HashSet::new();
    let mut stack: Vec<(Mask, Player)> = vec![(full_mask(layout.n()), Player::B)];
    let mut visited = HashSet::new();
    while let Some((alive, turn)) = stack.pop() {
        if !visited.insert((alive, turn)) {
            continue;
        }
        let counts: Vec<u32> = (1..=k)
            .map(|j| layout.clique(j).filter(|&v| alive & bit(v) != 0).count() as u32)
            .collect();
        seen.insert((counts, turn));
        let live: Vec<usize> = layout.clique_vertices().filter(|&v| alive & bit(v) != 0).collect();
        for (i, &a) in live.iter().enumerate() {
            for &b in &live[i + 1..] {
                stack.push((alive & !bit(a) & !bit(b), turn.opponent()));
            }
        }
    }
    seen.len()
}

fn nd_lower_bound() -> Check {
    let k = 3;
    let mut notes = Vec::new();
    for s in [2usize, 3] {
        let g = gen_lower_nd(k, s).unwrap();
        let p = nd_partition(&g, true);
        let cliques = clique_module_vertices(&g, &p);
        if cliques != (LowerNdLayout { k, s }).clique_vertices().collect::<Vec<_>>() {
            return Err(format!("s={s}: clique modules {cliques:?}"));
        }
        let stats = count_nd_positions(&g, Player::B, Some(&p), Some(&cliques)).unwrap();
        let oracle = clique_profiles(k, s);
        if stats.distinct_keys as usize != oracle {
            return Err(format!("s={s}: engine {} keys, plain search {oracle}", stats.distinct_keys));
        }
        let need = (s as u64 + 1).pow(k as u32);
        if 2 * stats.distinct_keys < need {
            return Err(format!("s={s}: {} keys < {need}/2", stats.distinct_keys));
        }
        notes.push(format!("s={s}: {} keys >= {need}/2", stats.distinct_keys));
    }
    Ok(notes.join("; "))
}

fn isomorphism_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..ISO_INSTANCES {
        let g = random_instance(&mut rng, 10);
        let w = [winner(&g, Player::B), winner(&g, Player::W)];
        for _ in 0..ISO_PERMUTATIONS {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm).unwrap();
            if [winner(&h, Player::B), winner(&h, Player::W)] != w {
                return Err(format!("instance {i}: permutation {perm:?} changes the winner"));
            }
        }
        let swapped = g.swap_colors();
        for turn in [Player::B, Player::W] {
            if winner(&swapped, turn.opponent()) != winner(&g, turn).opponent() {
                return Err(format!("instance {i}: color swap does not dualize (turn {turn})"));
            }
        }
    }
    Ok(format!(
        "{ISO_INSTANCES} instances x {ISO_PERMUTATIONS} permutations invariant; swap dualizes"
    ))
}

fn random_forest(rng: &mut ChaCha8Rng) -> ColoredGraph {
    let parts = rng.gen_range(1..=3);
    let mut g = ColoredGraph::empty(0);
    for _ in 0..parts {
        let n = rng.gen_range(1..=5);
        g = g.disjoint_union(&gen_random_tree(n, rng.gen()));
    }
    g
}

fn grundy_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut forests = 0;
    for i in 0..300 {
        let g = if i % 2 == 0 {
            random_forest(&mut rng)
        } else {
            gen_random_tree(rng.gen_range(1..=13), rng.gen())
        };
        if g.m() > 12 {
            continue;
        }
        let all = full_mask(g.n());
        let a = grundy_naive(&g, all).unwrap();
        let b = grundy_tree(&g, all).unwrap();
        if a != b {
            return Err(format!("forest {i}: naive {a:?} tree {b:?}\n{}", serialize_graph(&g)));
        }
        for turn in [Player::B, Player::W] {
            if a.mover_wins() != (winner(&g, turn) == turn) {
                return Err(format!("forest {i}: grundy {a:?} vs winner"));
            }
        }
        forests += 1;
    }
    let mut unions = 0;
    for i in 0..200 {
        let g1 = gen_random(rng.gen_range(1..=6), PS[i % 3], ColorWeights::GRAY, rng.gen()).unwrap();
        let g2 = gen_random(rng.gen_range(1..=6), PS[(i + 1) % 3], ColorWeights::GRAY, rng.gen()).unwrap();
        let u = g1.disjoint_union(&g2);
        let x1 = grundy_naive(&g1, full_mask(g1.n())).unwrap();
        let x2 = grundy_naive(&g2, full_mask(g2.n())).unwrap();
        let xu = grundy_naive(&u, full_mask(u.n())).unwrap();
        if xu != (x1 ^ x2) {
            return Err(format!("union {i}: {xu:?} != {x1:?} ^ {x2:?}"));
        }
        if xu.mover_wins() != (winner(&u, Player::B) == Player::B) {
            return Err(format!("union {i}: grundy {xu:?} vs winner"));
        }
        unions += 1;
    }
    Ok(format!("{forests} forests (naive = tree, sign = winner), {unions} unions additive"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("Cram parity", gardner_parity),
        ("tree base cases", tree_base_cases),
        ("tree subtree bound", tree_bound),
        ("vc key upper bound", vc_upper_bound),
        ("vc lower bound", vc_lower_bound),
        ("nd key upper bound", nd_upper_bound),
        ("nd lower bound", nd_lower_bound),
        ("isomorphism invariance", isomorphism_invariance),
        ("grundy consistency", grundy_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
