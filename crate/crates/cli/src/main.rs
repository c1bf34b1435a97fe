use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use deltacol::brooks::complete_one_uncolored;
use deltacol::detcolor::{color_det_netcomp, color_det_rulingforest};
use deltacol::oracle::{oracle_degree_choosable, oracle_delta_coloring, verify, Verdict};
use deltacol::randcolor::{RandConfig, RandomizedPipeline, Variant};
use deltacol::workbench::{
    generate, parse_coloring, parse_partial_coloring, read_graph, write_coloring, write_graph,
    write_report, Family, GallaiSpec,
};
use deltacol::{Graph, PartialColoring, RunReport};

#[derive(Parser)]
#[command(name = "deltacol", version, about = "Distributed Δ-coloring simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph with one of the algorithms.
    Run(RunArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Verify a coloring file.
    Check(CheckArgs),
    /// Brute-force oracles for small graphs.
    Oracle(OracleArgs),
    /// Shattering statistics of the randomized pipeline, one JSON line per seed.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Brooks,
    Det,
    Netcomp,
    Rand,
    RandSmall,
}

#[derive(Parser)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coloring output; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Verify the coloring and fail if it is not a proper Δ-coloring.
    #[arg(long)]
    validate: bool,
    /// Fail if the simulated round count exceeds this.
    #[arg(long)]
    max_rounds: Option<u64>,
    /// Randomized pipeline overrides: r, b, p, n-cap, c, delta-cap.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Partial coloring with one uncolored node (brooks only).
    #[arg(long)]
    partial: Option<PathBuf>,
    /// Shattering statistics output (rand and rand-small only).
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Regular,
    Torus,
    Gallai,
    CliqueMinusEdge,
    HighGirth,
    Path,
    Cycle,
    Complete,
    Petersen,
}

#[derive(Parser)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    girth: Option<usize>,
    #[arg(long, default_value_t = 8)]
    blocks: usize,
    #[arg(long, default_value_t = 4)]
    max_clique: usize,
    #[arg(long, default_value_t = 5)]
    max_cycle: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Palette size; defaults to the maximum degree.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Coloring,
    Choosable,
}

#[derive(Parser)]
struct OracleArgs {
    #[arg(long, value_enum)]
    mode: OracleMode,
    #[arg(long)]
    graph: PathBuf,
    /// Palette size for `coloring`; defaults to the maximum degree.
    #[arg(long)]
    k: Option<u32>,
    /// Color universe for `choosable`.
    #[arg(long, default_value_t = 6)]
    universe: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantName {
    Large,
    Small,
}

#[derive(Parser)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantName,
    /// `a..b` or a comma-separated list.
    #[arg(long, default_value = "0..20")]
    seeds: String,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Failed(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn failed(e: impl Display) -> Failure {
    Failure::Failed(e.to_string())
}

/// Algorithm errors print their variant name first, e.g. `NotNice: ...`.
fn algo_failed<E: Display + std::fmt::Debug>(e: E) -> Failure {
    let dbg = format!("{e:?}");
    let name: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
    Failure::Failed(format!("{name}: {e}"))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    read_graph(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| failed(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rand_config(params: &[String]) -> Result<RandConfig, Failure> {
    let mut cfg = RandConfig::default();
    for kv in params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("--param expects key=value, got {kv:?}")))?;
        let bad = |_| usage(format!("bad value for {k}: {v:?}"));
        match k {
            "r" => cfg.r = Some(v.parse().map_err(bad)?),
            "b" => cfg.b = Some(v.parse().map_err(bad)?),
            "p" => {
                cfg.p = Some(
                    v.parse()
                        .map_err(|_| usage(format!("bad value for p: {v:?}")))?,
                )
            }
            "n-cap" | "n_cap" | "N" => cfg.n_cap = Some(v.parse().map_err(bad)?),
            "c" => {
                cfg.small_c = v
                    .parse()
                    .map_err(|_| usage(format!("bad value for c: {v:?}")))?
            }
            "delta-cap" => cfg.small_delta_cap = v.parse().map_err(bad)?,
            _ => return Err(usage(format!("unknown parameter {k:?}"))),
        }
    }
    Ok(cfg)
}

fn print_violations(verdict: &Verdict) {
    for v in verdict.violations().iter().take(10) {
        eprintln!("violation: {v}");
    }
    let extra = verdict.violations().len().saturating_sub(10);
    if extra > 0 {
        eprintln!("... and {extra} more");
    }
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let is_rand = matches!(args.algo, Algo::Rand | Algo::RandSmall);
    if !is_rand && !args.params.is_empty() {
        return Err(usage("--param applies to rand and rand-small only"));
    }
    if !is_rand && args.stats.is_some() {
        return Err(usage("--stats applies to rand and rand-small only"));
    }
    if !matches!(args.algo, Algo::Brooks) && args.partial.is_some() {
        return Err(usage("--partial applies to brooks only"));
    }
    let start = Instant::now();
    let delta = g.max_degree();
    let (coloring, mut report): (PartialColoring, RunReport) = match args.algo {
        Algo::Brooks => {
            let path = args
                .partial
                .as_ref()
                .ok_or_else(|| usage("brooks needs --partial"))?;
            let partial = parse_partial_coloring(&read_text(path)?, g.n())
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let done = complete_one_uncolored(&g, &partial).map_err(algo_failed)?;
            let mut report = RunReport::new("brooks", args.seed, g.n(), delta);
            report.charge("brooks", done.rounds as u64);
            report.valid = verify(&g, &done.coloring, delta as u32, None).is_ok();
            (done.coloring, report)
        }
        Algo::Det => {
            let out = color_det_rulingforest(&g).map_err(algo_failed)?;
            (out.coloring, out.report)
        }
        Algo::Netcomp => {
            let out = color_det_netcomp(&g).map_err(algo_failed)?;
            (out.coloring, out.report)
        }
        Algo::Rand | Algo::RandSmall => {
            let variant = if matches!(args.algo, Algo::Rand) {
                Variant::Large
            } else {
                Variant::Small
            };
            let cfg = rand_config(&args.params)?;
            let out = RandomizedPipeline::new(&g, variant, &cfg)
                .and_then(|p| p.run(args.seed))
                .map_err(algo_failed)?;
            if let Some(path) = &args.stats {
                emit(Some(path), &(out.shatter_record().to_json() + "\n"))?;
            }
            (out.coloring, out.report)
        }
    };
    report.seed = args.seed;
    if args.timing {
        report.wall_ms = start.elapsed().as_millis() as u64;
    }
    emit(args.out.as_deref(), &write_coloring(&coloring))?;
    if let Some(path) = &args.report {
        emit(Some(path), &write_report(&report))?;
    }
    if let Some(max) = args.max_rounds {
        if report.total_rounds > max {
            return Err(failed(format!(
                "{} rounds exceed --max-rounds {max}",
                report.total_rounds
            )));
        }
    }
    if args.validate {
        let verdict = verify(&g, &coloring, delta as u32, None);
        if !verdict.is_ok() {
            print_violations(&verdict);
            return Err(failed("coloring is not a proper Δ-coloring"));
        }
    }
    Ok(())
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| usage(format!("this family needs --{name}")))
    };
    let family = match args.family {
        FamilyName::Regular => Family::Regular {
            n: need(args.n, "n")?,
            d: need(args.d, "d")?,
        },
        FamilyName::Torus => Family::Torus {
            w: need(args.w, "w")?,
            h: need(args.h, "h")?,
        },
        FamilyName::Gallai => Family::Gallai(GallaiSpec {
            blocks: args.blocks,
            max_clique: args.max_clique,
            max_cycle: args.max_cycle,
        }),
        FamilyName::CliqueMinusEdge => Family::CliqueMinusEdge {
            n: need(args.n, "n")?,
        },
        FamilyName::HighGirth => Family::HighGirth {
            n: need(args.n, "n")?,
            d: need(args.d, "d")?,
            girth: need(args.girth, "girth")?,
        },
        FamilyName::Path => Family::Path {
            n: need(args.n, "n")?,
        },
        FamilyName::Cycle => Family::Cycle {
            n: need(args.n, "n")?,
        },
        FamilyName::Complete => Family::Complete {
            n: need(args.n, "n")?,
        },
        FamilyName::Petersen => Family::Petersen,
    };
    let g = generate(family, args.seed).map_err(usage)?;
    emit(args.out.as_deref(), &write_graph(&g))
}

fn check(args: CheckArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let c = parse_coloring(&read_text(&args.coloring)?, g.n())
        .map_err(|e| usage(format!("{}: {e}", args.coloring.display())))?;
    let verdict = verify(&g, &c, args.k.unwrap_or(g.max_degree() as u32), None);
    if verdict.is_ok() {
        println!("ok");
        Ok(())
    } else {
        print_violations(&verdict);
        Err(failed(format!("{} violations", verdict.violations().len())))
    }
}

fn oracle(args: OracleArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    match args.mode {
        OracleMode::Coloring => {
            let k = args.k.unwrap_or(g.max_degree() as u32);
            match oracle_delta_coloring(&g, k).map_err(usage)? {
                Some(colors) => print!("{}", write_coloring(&PartialColoring::from_colors(colors))),
                None => println!("none"),
            }
        }
        OracleMode::Choosable => {
            println!(
                "{}",
                oracle_degree_choosable(&g, args.universe).map_err(usage)?
            );
        }
    }
    Ok(())
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>, Failure> {
    let bad = || usage(format!("bad seed list {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..b).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn stats(args: StatsArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let cfg = rand_config(&args.params)?;
    let seeds = parse_seeds(&args.seeds)?;
    let variant = match args.variant {
        VariantName::Large => Variant::Large,
        VariantName::Small => Variant::Small,
    };
    let pipeline = RandomizedPipeline::new(&g, variant, &cfg).map_err(algo_failed)?;
    let mut text = String::new();
    for seed in seeds {
        let out = pipeline.run(seed).map_err(algo_failed)?;
        text.push_str(&out.shatter_record().to_json());
        text.push('\n');
    }
    emit(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Gen(a) => gen(a),
        Command::Check(a) => check(a),
        Command::Oracle(a) => oracle(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
