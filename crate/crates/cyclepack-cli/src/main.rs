//! `cyclepack`: decide and certify vertex-disjoint cycle packings in
//! multigraphs.
//!
//! Exit codes: 0 = decided (and, for `verify`, the packing was valid),
//! 2 = inconclusive (budget ran out), 1 = error.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cyclepack_cli::format::{emit_graph, parse_graph};
use cyclepack_cli::gen;
use cyclepack_cli::report::{packing_to_file_ids, Report};
use cyclepack_cli::solve::{solve, Decision, SolveOptions, Strategy};
use cyclepack_core::erdos_posa::{cycles_or_fvs_with_constant, theorem2_constant, EpOutcome};
use cyclepack_core::girth::{greedy_fvs, shortest_cycle_with_fvs};
use cyclepack_core::multigraph::{ceil_log2_clamped, verify_packing, Cycle, MultiGraph, Packing};
use cyclepack_core::reduce::reduce;
use serde_json::json;

#[derive(Parser)]
#[command(name = "cyclepack", version, about = "Vertex-disjoint cycle packing solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the graph packs k disjoint cycles; print a certified
    /// packing on yes.
    Solve(SolveArgs),
    /// Like `solve`, but report the decision without the certificate.
    Decide(SolveArgs),
    /// Kernelize the graph and print the kernel.
    Reduce {
        /// Input graph file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact girth (a self-loop is a 1-cycle, a parallel pair a 2-cycle).
    Girth {
        /// Input graph file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the cycles-or-feedback-vertex-set dichotomy.
    Epfvs {
        /// Input graph file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Override the dichotomy constant (testing only; watermarked).
        #[arg(long)]
        c_override: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate an instance and print it in the graph file format.
    Gen {
        #[command(subcommand)]
        model: GenCmd,
        /// Seed for the randomized models.
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
    },
    /// Check a packing (JSON, 1-based vertex ids) against a graph.
    Verify {
        /// Input graph file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// JSON file (`-` for stdin): either `[[1,2,3], …]` or a full
        /// `solve` report with a `packing` field.
        #[arg(long)]
        packing: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Time repeated solver runs on one instance.
    Bench {
        /// Input graph file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        c_override: Option<u64>,
        /// Number of timed runs.
        #[arg(long, default_value_t = 3)]
        iters: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Input graph file (`-` for stdin).
    input: PathBuf,
    /// Number of disjoint cycles to look for.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    strategy: Strategy,
    /// Cap on enumerated instances; exhausting it yields "inconclusive".
    #[arg(long)]
    budget: Option<usize>,
    /// Accepted for interface symmetry; every strategy is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the dichotomy constant (testing only; watermarked).
    #[arg(long)]
    c_override: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GenCmd {
    /// `count` pairwise disjoint cycles of length `len`.
    DisjointCycles {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        len: usize,
    },
    /// Uniform simple graph with `n` vertices and `m` edges.
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// Two hubs joined by `strands` internally disjoint paths of `len` edges.
    Theta {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        len: usize,
    },
    /// The `rows` × `cols` grid graph.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Random graph greedily kept at girth ≥ `girth`.
    HighGirth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        girth: usize,
    },
}

fn main() -> ExitCode {
    // Usage errors must exit 1: code 2 is reserved for "inconclusive".
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::from(0);
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Solve(args) => run_solve(args, true),
        Cmd::Decide(args) => run_solve(args, false),
        Cmd::Reduce { input, json } => run_reduce(&input, json),
        Cmd::Girth { input, json } => run_girth(&input, json),
        Cmd::Epfvs { input, k, c_override, json } => run_epfvs(&input, k, c_override, json),
        Cmd::Gen { model, seed } => run_gen(model, seed),
        Cmd::Verify { input, k, packing, json } => run_verify(&input, k, &packing, json),
        Cmd::Bench { input, k, strategy, budget, c_override, iters, json } => {
            run_bench(&input, k, strategy, budget, c_override, iters, json)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn run_solve(args: SolveArgs, with_packing: bool) -> Result<u8> {
    let SolveArgs { input, k, strategy, budget, seed: _seed, c_override, json } = args;
    let g = load_graph(&input)?;
    let opts = SolveOptions { strategy, budget, c_override };
    let start = Instant::now();
    let outcome = solve(&g, k, &opts)?;
    let elapsed_ms = start.elapsed().as_millis();

    let report = Report::from_outcome(&outcome, k, c_override, elapsed_ms, with_packing);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("decision: {}", report.decision);
        if let Decision::Yes(p) = &outcome.decision {
            if with_packing {
                print_packing(p);
            }
        }
        let s = &report.stats;
        println!(
            "stats: instances_tried={} s_size={} reduce_size={} g={} elapsed_ms={}",
            s.instances_tried, s.s_size, s.reduce_size, s.g, s.elapsed_ms
        );
    }
    Ok(match outcome.decision {
        Decision::Yes(_) | Decision::No => 0,
        Decision::Inconclusive => 2,
    })
}

fn print_packing(p: &Packing) {
    for c in packing_to_file_ids(p) {
        let words: Vec<String> = c.iter().map(u32::to_string).collect();
        println!("cycle: {}", words.join(" "));
    }
}

fn run_reduce(input: &Path, json: bool) -> Result<u8> {
    let g = load_graph(input)?;
    let kernel = reduce(&g).reduced;
    if json {
        let out = json!({
            "n": g.num_vertices(),
            "m": g.num_edges(),
            "kernel_n": kernel.num_vertices(),
            "kernel_m": kernel.num_edges(),
            "kernel": emit_graph(&kernel),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        print!("{}", emit_graph(&kernel));
    }
    Ok(0)
}

fn run_girth(input: &Path, json: bool) -> Result<u8> {
    let g = load_graph(input)?;
    let shortest = shortest_cycle_with_fvs(&g, &greedy_fvs(&g))
        .expect("the greedy feedback vertex set is one by construction");
    if json {
        let out = match &shortest {
            Some(c) => json!({
                "girth": c.len(),
                "cycle": packing_to_file_ids(&vec![c.clone()])[0],
            }),
            None => json!({ "girth": null, "cycle": null }),
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        match &shortest {
            Some(c) => {
                println!("girth: {}", c.len());
                print_packing(&vec![c.clone()]);
            }
            None => println!("acyclic"),
        }
    }
    Ok(0)
}

fn run_epfvs(input: &Path, k: usize, c_override: Option<u64>, json: bool) -> Result<u8> {
    let g = load_graph(input)?;
    let c = c_override.unwrap_or_else(theorem2_constant);
    let bound = c * k as u64 * ceil_log2_clamped(k);
    match cycles_or_fvs_with_constant(&g, k, c) {
        EpOutcome::Cycles(p) => {
            assert!(verify_packing(&g, &p, k), "dichotomy packing must certify");
            if json {
                let out = json!({
                    "outcome": "cycles",
                    "k": k,
                    "packing": packing_to_file_ids(&p),
                    "c_override": c_override,
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("cycles: {k} disjoint");
                print_packing(&p);
            }
        }
        EpOutcome::Fvs(f) => {
            let ids: Vec<u32> = f.iter().map(|&v| v + 1).collect();
            if json {
                let out = json!({
                    "outcome": "fvs",
                    "k": k,
                    "fvs": ids,
                    "bound": bound,
                    "c_override": c_override,
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                let words: Vec<String> = ids.iter().map(u32::to_string).collect();
                println!("fvs: {} (size {} ≤ bound {})", words.join(" "), ids.len(), bound);
            }
        }
    }
    Ok(0)
}

fn run_gen(model: GenCmd, seed: u64) -> Result<u8> {
    let g = match model {
        GenCmd::DisjointCycles { count, len } => gen::disjoint_cycles(count, len)?,
        GenCmd::Gnm { n, m } => gen::gnm(n, m, seed)?,
        GenCmd::Theta { strands, len } => gen::theta(strands, len)?,
        GenCmd::Grid { rows, cols } => gen::grid(rows, cols)?,
        GenCmd::HighGirth { n, girth } => gen::high_girth(n, girth, seed)?,
    };
    print!("{}", emit_graph(&g));
    Ok(0)
}

fn run_verify(input: &Path, k: usize, packing: &Path, json: bool) -> Result<u8> {
    let g = load_graph(input)?;
    let p = parse_packing_json(&read_input(packing)?, &g)?;
    let valid = verify_packing(&g, &p, k);
    if json {
        println!("{}", serde_json::to_string_pretty(&json!({ "valid": valid, "k": k }))?);
    } else {
        println!("{}", if valid { "valid" } else { "invalid" });
    }
    Ok(if valid { 0 } else { 1 })
}

/// Accepts `[[1,2,3], …]` or any JSON object with such a `packing` field
/// (so a `solve --json` report can be piped straight back in).
fn parse_packing_json(text: &str, g: &MultiGraph) -> Result<Packing> {
    let value: serde_json::Value = serde_json::from_str(text).context("parsing packing JSON")?;
    let array = match &value {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(o) => match o.get("packing") {
            Some(serde_json::Value::Array(a)) => a,
            _ => bail!("report carries no packing"),
        },
        _ => bail!("expected a JSON array of cycles or a report object"),
    };
    let n = g.id_bound() as u64;
    let mut out: Packing = Vec::new();
    for cycle in array {
        let serde_json::Value::Array(verts) = cycle else {
            bail!("each cycle must be an array of 1-based vertex ids");
        };
        let mut vs: Vec<u32> = Vec::with_capacity(verts.len());
        for v in verts {
            let id = v.as_u64().context("vertex ids must be integers")?;
            if id == 0 || id > n {
                bail!("vertex {id} out of range 1..={n}");
            }
            vs.push((id - 1) as u32);
        }
        out.push(Cycle::new(vs));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    input: &Path,
    k: usize,
    strategy: Strategy,
    budget: Option<usize>,
    c_override: Option<u64>,
    iters: u32,
    json: bool,
) -> Result<u8> {
    let g = load_graph(input)?;
    let opts = SolveOptions { strategy, budget, c_override };
    let mut times_ms: Vec<u128> = Vec::with_capacity(iters as usize);
    let mut decision = "undecided";
    for _ in 0..iters.max(1) {
        let start = Instant::now();
        let outcome = solve(&g, k, &opts)?;
        times_ms.push(start.elapsed().as_millis());
        decision = match outcome.decision {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Inconclusive => "inconclusive",
        };
    }
    let min = times_ms.iter().min().copied().unwrap_or(0);
    if json {
        let out = json!({
            "k": k,
            "iters": times_ms.len(),
            "decision": decision,
            "ms": times_ms,
            "min_ms": min,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        let words: Vec<String> = times_ms.iter().map(u128::to_string).collect();
        println!("decision: {decision}");
        println!("runs_ms: {} (min {min})", words.join(" "));
    }
    Ok(0)
}
