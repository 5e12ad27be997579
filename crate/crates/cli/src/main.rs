use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use neutralize::{
    bellman_ford, default_max_iters, gen_alternating_path, gen_gn, gen_hard_path, gen_random_graph,
    parse_graph, run_to_fixpoint, seq_to_path_graph, serialize_graph, sssp_with_limit, verify_gn,
    Error, Graph, RecordOptions, Result, GN_MAX_N,
};
use neutralize_cli::{exit_code_for, resolve_max_iters, rows_to_csv, ExperimentRow, EXIT_MISMATCH};

#[derive(Parser)]
#[command(
    name = "neutralize",
    version,
    about = "Potential-neutralization shortest-path engine and instance harness"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Gn,
    Hardpath,
    Altpath,
    Random,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Gn => "gn",
            Family::Hardpath => "hardpath",
            Family::Altpath => "altpath",
            Family::Random => "random",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFamily {
    Gn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Elmasry,
    BellmanFord,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance and write it in the graph file format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// gn: gadget count (1..=37); random: vertex count.
        #[arg(long)]
        n: Option<u64>,
        /// hardpath: order s (1..=30); the path has 2^s edges.
        #[arg(long)]
        s: Option<u32>,
        /// altpath: number of (-1, 1) blocks.
        #[arg(long)]
        k: Option<u32>,
        /// random: edge count (at most n*(n-1)).
        #[arg(long)]
        m: Option<usize>,
        /// random: base weights and shifts are drawn from [0, max-weight].
        #[arg(long, default_value_t = 100)]
        max_weight: i64,
        /// random: RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the engine to fixpoint on a graph file.
    Run {
        graph: PathBuf,
        /// Write the iteration trace as JSON to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Iteration cap; beats NEUTRALIZE_MAX_ITERS and the default.
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Check the engine against the closed forms for n = 1..=n-max.
    Verify {
        #[arg(long, value_enum)]
        family: VerifyFamily,
        #[arg(long)]
        n_max: u32,
    },
    /// Run a family over a parameter range, one CSV row per instance.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// First parameter value (gn/hardpath/altpath: size; random: seed).
        #[arg(long)]
        from: u64,
        /// Last parameter value, inclusive; below `from` means no instances.
        #[arg(long)]
        to: u64,
        #[arg(long)]
        out: PathBuf,
        /// random: vertex count.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// random: edge count.
        #[arg(long, default_value_t = 500)]
        m: usize,
        /// random: weight bound.
        #[arg(long, default_value_t = 100)]
        max_weight: i64,
    },
    /// Single-source distances, one line per vertex.
    Sssp {
        graph: PathBuf,
        /// 1-indexed source vertex.
        #[arg(long)]
        source: usize,
        #[arg(long, value_enum, default_value = "elmasry")]
        algo: Algo,
    },
}

fn main() -> ExitCode {
    match run_cli(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run_cli(cli: Cli) -> Result<ExitCode> {
    let env_cap = std::env::var("NEUTRALIZE_MAX_ITERS").ok();
    match cli.cmd {
        Cmd::Gen {
            family,
            n,
            s,
            k,
            m,
            max_weight,
            seed,
            out,
        } => {
            let g = match family {
                Family::Gn => gen_gn(narrow(require(n, "--n", family)?)?)?.0,
                Family::Hardpath => seq_to_path_graph(&gen_hard_path(require(s, "--s", family)?)?),
                Family::Altpath => {
                    seq_to_path_graph(&gen_alternating_path(require(k, "--k", family)?)?)
                }
                Family::Random => gen_random_graph(
                    require(n, "--n", family)? as usize,
                    require(m, "--m", family)?,
                    max_weight,
                    seed,
                )?,
            };
            let text = serialize_graph(&g);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run {
            graph,
            trace,
            max_iters,
        } => {
            let g = parse_graph(&fs::read_to_string(graph)?)?;
            let cap = resolve_max_iters(max_iters, env_cap.as_deref(), default_max_iters(&g))?;
            let t = run_to_fixpoint(&g, cap, RecordOptions::default())?;
            println!("iterations: {}", t.iterations_executed);
            println!("status: neutralized");
            if let Some(path) = trace {
                fs::write(path, t.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            family: VerifyFamily::Gn,
            n_max,
        } => {
            if !(1..=GN_MAX_N).contains(&n_max) {
                return Err(Error::Range(format!(
                    "--n-max {n_max} outside 1..={GN_MAX_N}"
                )));
            }
            for n in 1..=n_max {
                match verify_gn(n)? {
                    None => println!("gn n={n}: ok"),
                    Some(mismatch) => {
                        println!("mismatch: {mismatch}");
                        return Ok(ExitCode::from(EXIT_MISMATCH));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench {
            family,
            from,
            to,
            out,
            n,
            m,
            max_weight,
        } => {
            let mut rows = Vec::new();
            for param in from..=to {
                let g = bench_instance(family, param, n, m, max_weight)?;
                let cap = resolve_max_iters(None, env_cap.as_deref(), default_max_iters(&g))?;
                let started = Instant::now();
                let t = run_to_fixpoint(&g, cap, RecordOptions::default())?;
                let wall_time_ns = started.elapsed().as_nanos();
                rows.push(ExperimentRow::from_trace(
                    family.name(),
                    param,
                    &g,
                    &t,
                    wall_time_ns,
                ));
            }
            fs::write(out, rows_to_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sssp {
            graph,
            source,
            algo,
        } => {
            let g = parse_graph(&fs::read_to_string(graph)?)?;
            if source == 0 || source > g.vertex_count() {
                return Err(Error::Range(format!(
                    "--source {source} outside 1..={}",
                    g.vertex_count()
                )));
            }
            let distances = match algo {
                Algo::Elmasry => {
                    let cap = resolve_max_iters(None, env_cap.as_deref(), default_max_iters(&g))?;
                    sssp_with_limit(&g, source - 1, cap)?
                }
                Algo::BellmanFord => bellman_ford(&g, source - 1)?,
            };
            for (v, d) in distances.values().iter().enumerate() {
                match d {
                    Some(x) => println!("v {} {}", v + 1, x),
                    None => println!("v {} UNREACHABLE", v + 1),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn require<T>(value: Option<T>, flag: &str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::Range(format!("{flag} is required for --family {}", family.name())))
}

fn narrow(param: u64) -> Result<u32> {
    u32::try_from(param).map_err(|_| Error::Range(format!("parameter {param} out of range")))
}

fn bench_instance(
    family: Family,
    param: u64,
    n: usize,
    m: usize,
    max_weight: i64,
) -> Result<Graph> {
    match family {
        Family::Gn => Ok(gen_gn(narrow(param)?)?.0),
        Family::Hardpath => Ok(seq_to_path_graph(&gen_hard_path(narrow(param)?)?)),
        Family::Altpath => Ok(seq_to_path_graph(&gen_alternating_path(narrow(param)?)?)),
        Family::Random => gen_random_graph(n, m, max_weight, param),
    }
}
