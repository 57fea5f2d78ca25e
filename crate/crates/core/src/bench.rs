//! Benchmark suites: generate instances from parameter grids, run engines
//! on each, and emit one CSV row per (instance, engine).
//!
//! A suite is JSON:
//!
//! ```json
//! {
//!   "seed": 7,
//!   "turn": "B",
//!   "engines": ["naive", "subset", "vc", "nd"],
//!   "count_mode": false,
//!   "restrict_clique_edges": false,
//!   "instances": [
//!     {"generator": "random", "repetitions": 5,
//!      "params": {"n": [6, 8], "p": [0.2, 0.5], "weights": [[1, 1, 1]]}},
//!     {"generator": "grid", "params": {"rows": [2], "cols": [2, 3], "variant": ["cram"]}}
//!   ]
//! }
//! ```
//!
//! Generators and their parameters: `grid` (rows, cols, variant),
//! `caterpillar` (pins), `lower-vc` (k), `lower-nd` (k, s), `random` (n, p,
//! weights as `[gray, black, white]`), `random-tree` (n). Every parameter
//! takes a list; the grid is the cartesian product in key order.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{solve, Engine, SolveConfig};
use crate::error::{Error, Result};
use crate::generate::{
    gen_caterpillar_kayles, gen_grid, gen_lower_nd, gen_lower_vc, gen_random, gen_random_tree,
    vertex_budget, ColorWeights, GridVariant,
};
use crate::graph::{ColoredGraph, Player};
use crate::nd::{clique_module_vertices, resolve_partition};
use crate::params::min_vertex_cover;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_turn")]
    pub turn: Player,
    pub engines: Vec<Engine>,
    #[serde(default)]
    pub count_mode: bool,
    #[serde(default)]
    pub restrict_clique_edges: bool,
    pub instances: Vec<InstanceGroup>,
}

fn default_turn() -> Player {
    Player::B
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceGroup {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, Vec<Value>>,
    #[serde(default = "one")]
    pub repetitions: usize,
}

fn one() -> usize {
    1
}

pub fn parse_suite(text: &str) -> Result<SuiteSpec> {
    let spec: SuiteSpec = serde_json::from_str(text).map_err(|e| Error::Suite(e.to_string()))?;
    if spec.engines.is_empty() {
        return Err(Error::Suite("no engines listed".into()));
    }
    Ok(spec)
}

/// One CSV row. Column order is the field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub generator: String,
    pub params: String,
    pub engine: Engine,
    pub n: usize,
    pub m: usize,
    pub tau: usize,
    pub nu: usize,
    /// Empty when the engine failed.
    pub winner: Option<Player>,
    pub node_expansions: Option<u64>,
    pub distinct_keys: Option<u64>,
    /// Only filled when timing was requested.
    pub elapsed_ms: Option<f64>,
    /// `ok` or `error: <message>`.
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub generator: String,
    pub params: String,
    pub graph: ColoredGraph,
}

fn get<'a>(combo: &'a BTreeMap<String, Value>, key: &str, generator: &str) -> Result<&'a Value> {
    combo
        .get(key)
        .ok_or_else(|| Error::Suite(format!("{generator}: missing parameter '{key}'")))
}

fn get_usize(combo: &BTreeMap<String, Value>, key: &str, generator: &str) -> Result<usize> {
    get(combo, key, generator)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::Suite(format!("{generator}: '{key}' must be a non-negative integer")))
}

fn get_f64(combo: &BTreeMap<String, Value>, key: &str, generator: &str) -> Result<f64> {
    get(combo, key, generator)?
        .as_f64()
        .ok_or_else(|| Error::Suite(format!("{generator}: '{key}' must be a number")))
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join("/"),
        other => other.to_string(),
    }
}

/// Cartesian product of the parameter lists, in key order.
fn combos(params: &BTreeMap<String, Vec<Value>>) -> Vec<BTreeMap<String, Value>> {
    let mut out = vec![BTreeMap::new()];
    for (k, values) in params {
        out = out
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |v| {
                    let mut c = c.clone();
                    c.insert(k.clone(), v.clone());
                    c
                })
            })
            .collect();
    }
    out
}

fn build(generator: &str, combo: &BTreeMap<String, Value>, seed: u64) -> Result<ColoredGraph> {
    let g = match generator {
        "grid" => {
            let variant: GridVariant = serde_json::from_value(get(combo, "variant", generator)?.clone())
                .map_err(|e| Error::Suite(format!("grid: variant: {e}")))?;
            gen_grid(
                get_usize(combo, "rows", generator)?,
                get_usize(combo, "cols", generator)?,
                variant,
            )
        }
        "caterpillar" => gen_caterpillar_kayles(get_usize(combo, "pins", generator)?),
        "lower-vc" => gen_lower_vc(get_usize(combo, "k", generator)?, vertex_budget())?,
        "lower-nd" => gen_lower_nd(get_usize(combo, "k", generator)?, get_usize(combo, "s", generator)?)?,
        "random" => {
            let weights = match combo.get("weights") {
                None => ColorWeights::UNIFORM,
                Some(w) => {
                    let w: [f64; 3] = serde_json::from_value(w.clone())
                        .map_err(|e| Error::Suite(format!("random: weights: {e}")))?;
                    ColorWeights {
                        gray: w[0],
                        black: w[1],
                        white: w[2],
                    }
                }
            };
            gen_random(
                get_usize(combo, "n", generator)?,
                get_f64(combo, "p", generator)?,
                weights,
                seed,
            )?
        }
        "random-tree" => gen_random_tree(get_usize(combo, "n", generator)?, seed),
        other => return Err(Error::Suite(format!("unknown generator '{other}'"))),
    };
    if g.n() > vertex_budget() {
        return Err(Error::BudgetExceeded {
            needed: g.n() as u128,
            budget: vertex_budget(),
        });
    }
    Ok(g)
}

fn seeded(generator: &str) -> bool {
    matches!(generator, "random" | "random-tree")
}

/// Instances in id order. Randomized generators draw seed
/// `suite seed + running index` so every instance has its own stream.
pub fn expand_instances(spec: &SuiteSpec) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut counter = 0u64;
    for (gi, group) in spec.instances.iter().enumerate() {
        for (ci, combo) in combos(&group.params).iter().enumerate() {
            for rep in 0..group.repetitions.max(1) {
                let seed = spec.seed.wrapping_add(counter);
                counter += 1;
                let graph = build(&group.generator, combo, seed)?;
                let mut params: Vec<String> = combo.iter().map(|(k, v)| format!("{k}={}", render(v))).collect();
                if seeded(&group.generator) {
                    params.push(format!("seed={seed}"));
                }
                out.push(Instance {
                    id: format!("g{gi:03}-c{ci:03}-r{rep:03}"),
                    generator: group.generator.clone(),
                    params: params.join(";"),
                    graph,
                });
            }
        }
    }
    Ok(out)
}

fn run_one(spec: &SuiteSpec, inst: &Instance, engine: Engine, tau: usize, nu: usize, timing: bool) -> BenchRecord {
    let mut cfg = SolveConfig::engine(engine);
    cfg.count_mode = spec.count_mode;
    cfg.max_n = crate::board::MASK_BITS;
    let result = (|| {
        if spec.restrict_clique_edges && engine == Engine::Nd {
            let p = resolve_partition(&inst.graph, None)?;
            cfg.restrict_to = Some(clique_module_vertices(&inst.graph, &p));
        }
        solve(&inst.graph, spec.turn, &cfg)
    })();
    let base = BenchRecord {
        instance_id: inst.id.clone(),
        generator: inst.generator.clone(),
        params: inst.params.clone(),
        engine,
        n: inst.graph.n(),
        m: inst.graph.m(),
        tau,
        nu,
        winner: None,
        node_expansions: None,
        distinct_keys: None,
        elapsed_ms: None,
        status: String::new(),
    };
    match result {
        Ok(o) => BenchRecord {
            winner: Some(o.winner),
            node_expansions: Some(o.stats.node_expansions),
            distinct_keys: Some(o.stats.distinct_keys),
            elapsed_ms: timing.then_some(o.stats.elapsed.as_secs_f64() * 1e3),
            status: "ok".into(),
            ..base
        },
        Err(e) => BenchRecord {
            status: format!("error: {e}"),
            ..base
        },
    }
}

/// Runs every engine on every instance, in parallel. Rows come back sorted
/// by instance id, then engine. Fails with [`Error::Inconsistent`] when two
/// engines disagree on a winner. Rows from a clique-restricted nd run play
/// a different game and are left out of that check.
pub fn run_suite(spec: &SuiteSpec, timing: bool) -> Result<Vec<BenchRecord>> {
    let instances = expand_instances(spec)?;
    let params: Vec<(usize, usize)> = instances
        .par_iter()
        .map(|inst| {
            let tau = min_vertex_cover(&inst.graph).size();
            let nu = resolve_partition(&inst.graph, None).map(|p| p.len()).unwrap_or(0);
            (tau, nu)
        })
        .collect();
    let jobs: Vec<(usize, Engine)> = (0..instances.len())
        .flat_map(|i| spec.engines.iter().map(move |&e| (i, e)))
        .collect();
    let mut rows: Vec<BenchRecord> = jobs
        .par_iter()
        .map(|&(i, e)| run_one(spec, &instances[i], e, params[i].0, params[i].1, timing))
        .collect();
    rows.sort_by(|a, b| (&a.instance_id, a.engine).cmp(&(&b.instance_id, b.engine)));

    for chunk in rows.chunk_by(|a, b| a.instance_id == b.instance_id) {
        let comparable: Vec<&BenchRecord> = chunk
            .iter()
            .filter(|r| r.winner.is_some())
            .filter(|r| !(spec.restrict_clique_edges && r.engine == Engine::Nd))
            .collect();
        if let Some(first) = comparable.first() {
            if comparable.iter().any(|r| r.winner != first.winner) {
                let details = comparable
                    .iter()
                    .map(|r| format!("{}={}", r.engine, r.winner.unwrap()))
                    .collect::<Vec<_>>()
                    .join(", ");
                return Err(Error::Inconsistent {
                    instance: format!("{} ({} {})", first.instance_id, first.generator, first.params),
                    details,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
