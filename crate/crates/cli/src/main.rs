//! `cak`: solve, generate and benchmark Colored Arc Kayles instances.
//!
//! Vertex ids on the command line and in all output are 1-based, as in
//! `.cak` files.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cak_core::bench::{parse_suite, run_suite, write_csv};
use cak_core::generate::vertex_budget;
use cak_core::nd::{clique_module_vertices, resolve_partition};
use cak_core::subset::DEFAULT_MAX_N;
use cak_core::{
    count_ak_subtrees, count_nk_subtrees, equivalence_classes, full_mask, gen_caterpillar_kayles,
    gen_grid, gen_lower_nd, gen_lower_vc, gen_random, gen_random_tree, grundy_naive, grundy_tree,
    min_vertex_cover, nd_partition, parse_graph, serialize_graph, solve, ColorWeights, ColoredGraph,
    Edge, Engine, GridVariant, ModulePartition, Outcome, PartitionKind, Player, SolveConfig,
    VertexCover,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cak", version, about = "Winner determination for Colored Arc Kayles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the winner of a position and report a winning move.
    Solve(SolveArgs),
    /// Sprague-Grundy value of an all-gray instance.
    Grundy(GrundyArgs),
    /// Write a generated instance in .cak format.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        /// Output file (stdout when omitted).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print vertex cover, twin partitions and class counts as JSON.
    Params(FileArg),
    /// Subtree and position counts.
    Count {
        #[command(subcommand)]
        what: CountCommand,
    },
    /// Run a benchmark suite and write CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct FileArg {
    /// Instance in .cak format; `-` reads stdin.
    #[arg(short, long)]
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Naive,
    Subset,
    Vc,
    Nd,
    Tree,
    Auto,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Naive => Engine::Naive,
            EngineArg::Subset => Engine::Subset,
            EngineArg::Vc => Engine::Vc,
            EngineArg::Nd => Engine::Nd,
            EngineArg::Tree => Engine::Tree,
            EngineArg::Auto => Engine::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    B,
    W,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::B => Player::B,
            PlayerArg::W => Player::W,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: FileArg,
    /// Player to move first.
    #[arg(long, value_enum, default_value = "b", ignore_case = true)]
    first: PlayerArg,
    #[arg(short, long, value_enum, default_value = "auto")]
    engine: EngineArg,
    /// Vertex cap of the subset engine (at most 128).
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Vertex cover for the vc engine, e.g. `1,4,7`.
    #[arg(long, value_delimiter = ',')]
    cover: Option<Vec<usize>>,
    /// JSON list of modules (lists of vertex ids) for the nd engine.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Expand every child of every node (no short-circuit).
    #[arg(long)]
    count_mode: bool,
    /// nd engine: only play inside modules that are cliques.
    #[arg(long)]
    restrict_clique_edges: bool,
    /// Include elapsed time in the output.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrundyEngine {
    Naive,
    Tree,
    Auto,
}

#[derive(Args)]
struct GrundyArgs {
    #[command(flatten)]
    input: FileArg,
    /// `auto` uses the tree solver on forests.
    #[arg(short, long, value_enum, default_value = "auto")]
    engine: GrundyEngine,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Cram,
    Domineering,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Cram or Domineering board.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_enum, default_value = "cram")]
        variant: VariantArg,
    },
    /// Kayles row of `pins` pins as a caterpillar.
    Caterpillar {
        #[arg(long)]
        pins: usize,
    },
    /// Lower-bound instance for the vertex-cover solver.
    LowerVc {
        #[arg(long)]
        k: usize,
    },
    /// Lower-bound instance for the neighbourhood-diversity solver.
    LowerNd {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Random colored graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// Gray, Black and White weights.
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [1.0, 1.0, 1.0])]
        weights: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform random labelled tree, all gray.
    RandomTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// Non-isomorphic AK-rooted subtrees of a tree.
    AkSubtrees {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        root: usize,
    },
    /// Non-isomorphic NK-rooted subtrees of a tree.
    NkSubtrees {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        root: usize,
    },
    /// Search statistics with full expansion.
    Positions {
        #[command(flatten)]
        input: FileArg,
        #[arg(long, value_enum, default_value = "b", ignore_case = true)]
        first: PlayerArg,
        #[arg(short, long, value_enum, default_value = "vc")]
        engine: EngineArg,
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<usize>>,
        #[arg(long)]
        restrict_clique_edges: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Suite description (JSON).
    #[arg(long)]
    suite: PathBuf,
    /// CSV output (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Fill the elapsed_ms column.
    #[arg(long)]
    timing: bool,
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(input: &FileArg) -> Result<ColoredGraph> {
    let bytes = read_input(&input.file)?;
    parse_graph(&bytes).with_context(|| format!("parsing {}", input.file.display()))
}

fn to_zero_based(ids: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    ids.iter()
        .map(|&v| {
            if v == 0 || v > n {
                bail!("{what}: vertex {v} out of range 1..={n}")
            }
            Ok(v - 1)
        })
        .collect()
}

fn one_based(v: usize) -> usize {
    v + 1
}

fn edge_json(e: Option<Edge>) -> Value {
    match e {
        Some(e) => json!([one_based(e.u), one_based(e.v)]),
        None => Value::Null,
    }
}

fn outcome_json(o: &Outcome, engine: Engine, first: Player, timing: bool) -> Value {
    let mut stats = json!({
        "node_expansions": o.stats.node_expansions,
        "memo_hits": o.stats.memo_hits,
        "distinct_keys": o.stats.distinct_keys,
    });
    if timing {
        stats["elapsed_ms"] = json!(o.stats.elapsed.as_secs_f64() * 1e3);
    }
    json!({
        "engine": engine.name(),
        "first": first.to_string(),
        "winner": o.winner.to_string(),
        "winning_move": edge_json(o.winning_move),
        "stats": stats,
    })
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn load_partition(path: &Path, n: usize) -> Result<ModulePartition> {
    let bytes = read_input(path)?;
    let raw: Vec<Vec<usize>> = serde_json::from_slice(&bytes)
        .with_context(|| format!("{}: expected a JSON list of vertex-id lists", path.display()))?;
    let modules = raw
        .iter()
        .map(|m| to_zero_based(m, n, "partition"))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulePartition {
        modules,
        kind: PartitionKind::ColoredTwin,
    })
}

fn clique_restriction(g: &ColoredGraph, partition: Option<&ModulePartition>) -> Result<Vec<usize>> {
    let p = resolve_partition(g, partition)?;
    Ok(clique_module_vertices(g, &p))
}

fn run_solve(args: &SolveArgs) -> Result<()> {
    let g = load(&args.input)?;
    let engine = Engine::from(args.engine).resolve(&g);
    let mut cfg = SolveConfig::engine(engine);
    cfg.max_n = args.max_n;
    cfg.count_mode = args.count_mode;
    if let Some(c) = &args.cover {
        cfg.cover = Some(VertexCover::new(to_zero_based(c, g.n(), "cover")?));
    }
    if let Some(p) = &args.partition {
        cfg.partition = Some(load_partition(p, g.n())?);
    }
    if args.restrict_clique_edges {
        if engine != Engine::Nd {
            bail!("--restrict-clique-edges needs the nd engine");
        }
        cfg.restrict_to = Some(clique_restriction(&g, cfg.partition.as_ref())?);
    }
    let first = Player::from(args.first);
    let o = solve(&g, first, &cfg).with_context(|| format!("engine {engine}"))?;
    print_json(&outcome_json(&o, engine, first, args.timing))
}

fn run_grundy(args: &GrundyArgs) -> Result<()> {
    let g = load(&args.input)?;
    let all = full_mask(g.n());
    let use_tree = match args.engine {
        GrundyEngine::Tree => true,
        GrundyEngine::Naive => false,
        GrundyEngine::Auto => g.is_forest(),
    };
    let v = if use_tree {
        grundy_tree(&g, all)?
    } else {
        grundy_naive(&g, all)?
    };
    print_json(&json!({ "grundy": v.0, "mover_wins": v.mover_wins() }))
}

fn run_gen(what: &GenCommand, output: Option<&Path>) -> Result<()> {
    let g = match *what {
        GenCommand::Grid { rows, cols, variant } => {
            if rows == 0 || cols == 0 {
                bail!("grid needs rows, cols >= 1");
            }
            let n = rows.saturating_mul(cols);
            if n > vertex_budget() {
                bail!("grid has {n} cells, budget is {} (CAK_MAX_VERTICES)", vertex_budget());
            }
            let variant = match variant {
                VariantArg::Cram => GridVariant::Cram,
                VariantArg::Domineering => GridVariant::Domineering,
            };
            gen_grid(rows, cols, variant)
        }
        GenCommand::Caterpillar { pins } => {
            if pins == 0 || pins.saturating_mul(2) > vertex_budget() {
                bail!("pins must be in 1..={}", vertex_budget() / 2);
            }
            gen_caterpillar_kayles(pins)
        }
        GenCommand::LowerVc { k } => gen_lower_vc(k, vertex_budget())?,
        GenCommand::LowerNd { k, s } => {
            let g = gen_lower_nd(k, s)?;
            if g.n() > vertex_budget() {
                bail!("instance has {} vertices, budget is {}", g.n(), vertex_budget());
            }
            g
        }
        GenCommand::Random { n, p, ref weights, seed } => {
            if n > vertex_budget() {
                bail!("n = {n} exceeds budget {}", vertex_budget());
            }
            let w = ColorWeights {
                gray: weights[0],
                black: weights[1],
                white: weights[2],
            };
            gen_random(n, p, w, seed)?
        }
        GenCommand::RandomTree { n, seed } => {
            if n > vertex_budget() {
                bail!("n = {n} exceeds budget {}", vertex_budget());
            }
            gen_random_tree(n, seed)
        }
    };
    let text = serialize_graph(&g);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn modules_json(p: &ModulePartition) -> Value {
    json!(p
        .modules
        .iter()
        .map(|m| m.iter().map(|&v| one_based(v)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn run_params(input: &FileArg) -> Result<()> {
    let g = load(input)?;
    let cover = min_vertex_cover(&g);
    let twins = nd_partition(&g, true);
    let colored = nd_partition(&g, false);
    let classes = equivalence_classes(&g, &vec![true; g.n()], &cover)?;
    print_json(&json!({
        "n": g.n(),
        "m": g.m(),
        "colors_used": g.colors_used(),
        "tau": cover.size(),
        "cover": cover.vertices.iter().map(|&v| one_based(v)).collect::<Vec<_>>(),
        "classes": classes.classes.len(),
        "nu": twins.len(),
        "modules": modules_json(&twins),
        "nu_colored": colored.len(),
        "colored_modules": modules_json(&colored),
        "is_forest": g.is_forest(),
    }))
}

fn root_arg(g: &ColoredGraph, root: usize) -> Result<usize> {
    Ok(to_zero_based(&[root], g.n(), "root")?[0])
}

fn run_count(what: &CountCommand) -> Result<()> {
    match what {
        CountCommand::AkSubtrees { input, root } => {
            let g = load(input)?;
            let r = root_arg(&g, *root)?;
            print_json(&json!({ "root": root, "ak_subtrees": count_ak_subtrees(&g, r)? }))
        }
        CountCommand::NkSubtrees { input, root } => {
            let g = load(input)?;
            let r = root_arg(&g, *root)?;
            print_json(&json!({ "root": root, "nk_subtrees": count_nk_subtrees(&g, r)? }))
        }
        CountCommand::Positions {
            input,
            first,
            engine,
            cover,
            restrict_clique_edges,
            max_n,
        } => {
            let g = load(input)?;
            let engine = Engine::from(*engine).resolve(&g);
            if matches!(engine, Engine::Naive | Engine::Tree) {
                bail!("position counts need the subset, vc or nd engine");
            }
            let mut cfg = SolveConfig::engine(engine);
            cfg.count_mode = true;
            cfg.max_n = *max_n;
            if let Some(c) = cover {
                cfg.cover = Some(VertexCover::new(to_zero_based(c, g.n(), "cover")?));
            }
            if *restrict_clique_edges {
                if engine != Engine::Nd {
                    bail!("--restrict-clique-edges needs the nd engine");
                }
                cfg.restrict_to = Some(clique_restriction(&g, None)?);
            }
            let first = Player::from(*first);
            let o = solve(&g, first, &cfg)?;
            print_json(&outcome_json(&o, engine, first, false))
        }
    }
}

fn run_bench(args: &BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.suite).with_context(|| format!("reading {}", args.suite.display()))?;
    let spec = parse_suite(&text)?;
    let rows = run_suite(&spec, args.timing)?;
    match &args.output {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Grundy(a) => run_grundy(a),
        Command::Gen { what, output } => run_gen(what, output.as_deref()),
        Command::Params(a) => run_params(a),
        Command::Count { what } => run_count(what),
        Command::Bench(a) => run_bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
