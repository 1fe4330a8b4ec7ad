//! Batch front end: parse a graph file, run a solver / enumeration /
//! complete-set computation, or export model and instance files.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 size-gate refusal.
//! All errors go to stderr as single-line JSON.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use unssp_core::enumeration::{enumerate_alg1, enumerate_alg2, enumerate_brute, PathSink};
use unssp_core::{
    complete_set, emit_nspip, emit_unspip, gen_binary_doubling, gen_random, gen_triplet_chain,
    parse_graph, parse_lambda, parse_ratio, solve, ArcMask, Graph, PathRecord,
};

#[derive(Parser)]
#[command(
    name = "unssp",
    version,
    about = "Universal near shortest simple paths: solve, enumerate, export"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Alg1,
    Alg2,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum LpKind {
    Nspip,
    Unspip,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimal s-t path value and path for a weight family
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Stream every simple s-t path within (1+epsilon) of the optimum
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long, value_enum)]
        algorithm: Algo,
        #[arg(long, default_value_t = 1_000_000)]
        max_paths: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One representative path per achievable value within the bound
    Mincomplete {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One witness path per geometric value interval between optimum and bound
    Representatives {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimum-value simple path with value at least xi (optionally capped)
    NextUsp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        xi: i64,
        #[arg(long)]
        psi: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write an integer-program model file in LP format
    EmitLp {
        #[arg(value_enum)]
        model: LpKind,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        xi: i64,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate an instance file
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Diamond-block chain: 2^blocks equal-value s-t paths
    Triplet {
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Parallel-arc chain with doubling costs: 2^(n-1) paths, values 1..=2^(n-2)
    Doubling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded random digraph with a guaranteed s-t path
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        cost_max: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 1, kind: "usage", message: message.into() }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure { code: 2, kind: "io", message: message.into() }
    }
}

impl From<unssp_core::Error> for Failure {
    fn from(e: unssp_core::Error) -> Failure {
        match e {
            unssp_core::Error::SizeGate(_) => {
                Failure { code: 3, kind: "size_gate", message: e.to_string() }
            }
            _ => Failure { code: 2, kind: "input", message: e.to_string() },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            report(&Failure::usage(e.to_string()));
            return ExitCode::from(1);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            report(&f);
            ExitCode::from(f.code)
        }
    }
}

fn report(f: &Failure) {
    eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
}

fn load_graph(path: &FsPath) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn write_output(output: Option<&FsPath>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(|e| Failure::io(e.to_string()))
        }
    }
}

fn path_json(p: &unssp_core::Path, value: i64) -> serde_json::Value {
    serde_json::to_value(PathRecord::new(p, value)).expect("record serializes")
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Solve { graph, lambda, output } => {
            let g = load_graph(&graph)?;
            let lam = parse_lambda(&lambda, g.vertex_count())?;
            let out = solve(&g, &ArcMask::new(&g), g.source(), g.sink(), &lam)?;
            let doc = json!({
                "value": out.value,
                "path": out.path.as_ref().map(|p| path_json(p, out.value.unwrap())),
            });
            write_output(output.as_deref(), &format!("{doc}\n"))
        }
        Cmd::Enumerate { graph, lambda, epsilon, algorithm, max_paths, output } => {
            let g = load_graph(&graph)?;
            let lam = parse_lambda(&lambda, g.vertex_count())?;
            let eps = parse_ratio(&epsilon)?;
            let mut writer: Box<dyn Write> = match output.as_deref() {
                Some(path) => Box::new(std::io::BufWriter::new(
                    std::fs::File::create(path).map_err(|e| {
                        Failure::io(format!("cannot write {}: {e}", path.display()))
                    })?,
                )),
                None => Box::new(std::io::BufWriter::new(std::io::stdout())),
            };
            let started = Instant::now();
            let mut write_failure: Option<std::io::Error> = None;
            let mut sink = PathSink::new(max_paths, |p, v| {
                if write_failure.is_none() {
                    let line = PathRecord::new(p, v).to_json_line();
                    if let Err(e) = writeln!(writer, "{line}") {
                        write_failure = Some(e);
                    }
                }
            });
            let stats = match algorithm {
                Algo::Alg1 => enumerate_alg1(&g, &lam, eps, &mut sink),
                Algo::Alg2 => enumerate_alg2(&g, &lam, eps, &mut sink),
                Algo::Brute => enumerate_brute(&g, &lam, eps, &mut sink),
            }?;
            drop(sink);
            if let Some(e) = write_failure {
                return Err(Failure::io(e.to_string()));
            }
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            // the timing field stays isolated in this one trailing record
            writeln!(
                writer,
                "{{\"paths\":{},\"uspp_solves\":{},\"arcs_scanned\":{},\"backtracks\":{},\"truncated\":{},\"wall_ms\":{wall_ms:.3}}}",
                stats.paths,
                stats.uspp_solves,
                stats.arcs_scanned,
                stats.backtracks,
                stats.truncated
            )
            .map_err(|e| Failure::io(e.to_string()))?;
            writer.flush().map_err(|e| Failure::io(e.to_string()))
        }
        Cmd::Mincomplete { graph, lambda, epsilon, output } => {
            let g = load_graph(&graph)?;
            let lam = parse_lambda(&lambda, g.vertex_count())?;
            let eps = parse_ratio(&epsilon)?;
            let mcs = complete_set::minimal_complete_set(&g, &lam, eps)?;
            let arr: Vec<serde_json::Value> = mcs
                .entries
                .iter()
                .map(|(v, p)| json!({ "value": v, "path": path_json(p, *v) }))
                .collect();
            write_output(output.as_deref(), &format!("{}\n", serde_json::Value::Array(arr)))
        }
        Cmd::Representatives { graph, lambda, epsilon, delta, output } => {
            let g = load_graph(&graph)?;
            let lam = parse_lambda(&lambda, g.vertex_count())?;
            let eps = parse_ratio(&epsilon)?;
            let del = parse_ratio(&delta)?;
            let (_, witnesses) = complete_set::representatives(&g, &lam, eps, del)?;
            let arr: Vec<serde_json::Value> = witnesses
                .iter()
                .map(|w| match w {
                    Some((v, p)) => json!({ "value": v, "path": path_json(p, *v) }),
                    None => serde_json::Value::Null,
                })
                .collect();
            write_output(output.as_deref(), &format!("{}\n", serde_json::Value::Array(arr)))
        }
        Cmd::NextUsp { graph, lambda, xi, psi, output } => {
            let g = load_graph(&graph)?;
            let lam = parse_lambda(&lambda, g.vertex_count())?;
            let q = complete_set::NextUspQuery { lam, xi, mu: None, psi };
            let doc = match complete_set::next_usp(&g, &q)? {
                Some((v, p)) => json!({ "value": v, "path": path_json(&p, v) }),
                None => serde_json::Value::Null,
            };
            write_output(output.as_deref(), &format!("{doc}\n"))
        }
        Cmd::EmitLp { model, graph, xi, lambda, output } => {
            let g = load_graph(&graph)?;
            let text = match model {
                LpKind::Nspip => {
                    if lambda.is_some() {
                        return Err(Failure::usage("--lambda applies to the unspip model only"));
                    }
                    emit_nspip(&g, xi)
                }
                LpKind::Unspip => {
                    let spec =
                        lambda.ok_or_else(|| Failure::usage("the unspip model requires --lambda"))?;
                    let lam = parse_lambda(&spec, g.vertex_count())?;
                    emit_unspip(&g, &lam, xi)?
                }
            };
            write_output(output.as_deref(), &text)
        }
        Cmd::Gen { family } => {
            let (g, output) = match family {
                GenCmd::Triplet { blocks, output } => (gen_triplet_chain(blocks)?, output),
                GenCmd::Doubling { n, output } => (gen_binary_doubling(n)?, output),
                GenCmd::Random { n, m, cost_max, seed, output } => {
                    (gen_random(n, m, cost_max, seed)?, output)
                }
            };
            write_output(output.as_deref(), &g.serialize())
        }
    }
}
