//! `loopdec`: JSON in, JSON out front end for loopdec-core.
//!
//! Results go to stdout. Failures go to stderr as
//! `{"error": {"code": "...", "message": "..."}}` with exit status 1 for
//! domain errors (including failed checks) and 2 for usage or input errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopdec_core::{
    self as core, verify_balanced, verify_block_ordering, verify_decomposition,
    verify_degree_balanced, verify_equitable_coloring, verify_orbit_balanced, Decomposition,
    LoopedGraph, NonnegativeOptions, Pbd, SignedOptions,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "loopdec",
    version,
    about = "Graph decompositions with colored loops"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct HostArgs {
    /// Block graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    /// Host order.
    #[arg(long)]
    v: usize,
    #[arg(long, default_value_t = 1)]
    lambda: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local divisibility modulus of a block graph.
    Alpha {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Loop multiplicities forced on the host.
    Mu {
        #[command(flatten)]
        host: HostArgs,
    },
    /// Necessary divisibility conditions; exits 1 when they fail.
    Admissible {
        #[command(flatten)]
        host: HostArgs,
    },
    /// Residue classes of admissible host orders.
    Residues {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long)]
        modulus: u64,
    },
    /// Cyclic construction over GF(q).
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
        /// Write the decomposition here and print a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral solution allowing negative copies.
    SolveSigned {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact search for a genuine decomposition.
    SolveNonneg {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget_nodes: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition and optional balance, coloring and ordering properties.
    Verify(VerifyArgs),
    /// Attach recipe loops or build seat cliques and equitable unions.
    Attach {
        #[arg(long, value_enum)]
        mode: AttachMode,
        /// Input graph (degree, orbit, union).
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Clique order (seats).
        #[arg(long)]
        k: Option<usize>,
        /// Number of copies (union).
        #[arg(long)]
        s: Option<usize>,
        /// Write the graph alone here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic block order chaining the image of `t` to the next image of `s`.
    Order {
        #[arg(long)]
        dec: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split an equitable-union design into a colored design.
    ExtractColoring {
        #[arg(long)]
        dec: PathBuf,
        /// Write the loopless decomposition here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the coloring (a JSON array) here.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Glue per-size decompositions along a pairwise balanced design.
    Compose {
        #[arg(long)]
        pbd: PathBuf,
        /// `SIZE=FILE`, once per block size.
        #[arg(long = "part", value_parser = parse_part)]
        parts: Vec<(usize, PathBuf)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// alpha(K) and beta(K) for a set of block sizes.
    PbdParams {
        /// Comma-separated block sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    dec: PathBuf,
    /// Every point in equally many blocks.
    #[arg(long)]
    balance: bool,
    /// Every point in each degree class equally often.
    #[arg(long)]
    degree: bool,
    /// Every point in each automorphism orbit equally often.
    #[arg(long)]
    orbit: bool,
    /// Block coloring (JSON array, colors 1..=s).
    #[arg(long, requires_all = ["s", "p"])]
    coloring: Option<PathBuf>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Cyclic block order (JSON array of block indices).
    #[arg(long, requires_all = ["s_vertex", "t_vertex"])]
    order: Option<PathBuf>,
    #[arg(long)]
    s_vertex: Option<usize>,
    #[arg(long)]
    t_vertex: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AttachMode {
    Degree,
    Orbit,
    Seats,
    Union,
}

fn parse_part(raw: &str) -> Result<(usize, PathBuf), String> {
    let (size, path) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected SIZE=FILE, got `{raw}`"))?;
    let size = size
        .parse()
        .map_err(|_| format!("block size `{size}` is not a number"))?;
    Ok((size, PathBuf::from(path)))
}

/// Why a command did not succeed.
enum Failure {
    Domain(core::Error),
    /// A check ran and did not pass; its report is already on stdout.
    CheckFailed,
    Usage {
        code: &'static str,
        message: String,
    },
}

impl From<core::Error> for Failure {
    fn from(e: core::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage {
        code: "IO_ERROR",
        message: format!("{}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage {
        code: "BAD_INPUT",
        message: format!("{}: {e}", path.display()),
    })
}

fn to_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Prints to stdout, staying quiet when the reader has gone away.
fn emit<T: Serialize>(value: &T) {
    let _ = writeln!(std::io::stdout().lock(), "{}", to_text(value));
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome {
    fs::write(path, to_text(value) + "\n").map_err(|e| Failure::Usage {
        code: "IO_ERROR",
        message: format!("{}: {e}", path.display()),
    })
}

/// Writes `value` to `out` and prints `summary`, or prints `value` when there is no `out`.
fn deliver<T: Serialize>(out: Option<&Path>, value: &T, summary: Value) -> Outcome {
    match out {
        Some(path) => {
            write_json(path, value)?;
            emit(&summary);
        }
        None => emit(value),
    }
    Ok(())
}

fn missing(flag: &str, mode: &str) -> Failure {
    Failure::Usage {
        code: "USAGE",
        message: format!("--{flag} is required with --mode {mode}"),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Alpha { graph } => {
            let g: LoopedGraph = read_json(&graph)?;
            emit(&json!({ "alpha": core::compute_alpha(&g)? }));
        }
        Command::Mu { host } => {
            let g: LoopedGraph = read_json(&host.graph)?;
            emit(&json!({ "mu": core::compute_mu(&g, host.v, host.lambda)? }));
        }
        Command::Admissible { host } => {
            let g: LoopedGraph = read_json(&host.graph)?;
            let report = core::is_admissible(&g, host.v, host.lambda)?;
            emit(&report);
            if !report.admissible {
                return Err(Failure::CheckFailed);
            }
        }
        Command::Residues {
            graph,
            lambda,
            modulus,
        } => {
            let g: LoopedGraph = read_json(&graph)?;
            emit(&core::admissible_residues(&g, lambda, modulus)?);
        }
        Command::Construct {
            graph,
            q,
            lambda,
            seed,
            timeout_ms,
            out,
        } => {
            let g: LoopedGraph = read_json(&graph)?;
            let design =
                core::construct_cyclotomic(&g, q, lambda, seed, Duration::from_millis(timeout_ms))?;
            let summary = json!({
                "base_block": design.base.placement,
                "blocks": design.decomposition.blocks.len(),
                "host": design.decomposition.host,
            });
            deliver(out.as_deref(), &design.decomposition, summary)?;
        }
        Command::SolveSigned { host, seed, out } => {
            let g: LoopedGraph = read_json(&host.graph)?;
            let options = SignedOptions {
                seed: Some(seed),
                host_bound: None,
            };
            let solution = core::solve_signed_with(&g, host.v, host.lambda, &options)?;
            let negative = solution.blocks.iter().filter(|b| b.coefficient < 0).count();
            let summary = json!({
                "blocks": solution.blocks.len(),
                "negative_blocks": negative,
                "columns": solution.column_count,
                "rows": solution.row_count,
            });
            let d = Decomposition::new(g, solution.host, solution.blocks);
            deliver(out.as_deref(), &d, summary)?;
        }
        Command::SolveNonneg {
            host,
            seed,
            budget_nodes,
            out,
        } => {
            let g: LoopedGraph = read_json(&host.graph)?;
            let options = NonnegativeOptions {
                budget: budget_nodes,
                seed: Some(seed),
                host_bound: None,
            };
            let blocks = core::solve_nonnegative(&g, host.v, host.lambda, &options)?;
            let hostspec = core::HostSpec::for_graph(&g, host.v, host.lambda)?;
            let summary = json!({ "blocks": blocks.len() });
            deliver(
                out.as_deref(),
                &Decomposition::new(g, hostspec, blocks),
                summary,
            )?;
        }
        Command::Verify(args) => return verify(args),
        Command::Attach {
            mode,
            graph,
            k,
            s,
            out,
        } => {
            let load = |name: &str| -> Result<LoopedGraph, Failure> {
                read_json(graph.as_deref().ok_or_else(|| missing("graph", name))?)
            };
            let (g, classes) = match mode {
                AttachMode::Degree => {
                    let a = core::attach_degree_loops(&load("degree")?);
                    (a.graph, Some(a.classes))
                }
                AttachMode::Orbit => {
                    let a = core::attach_orbit_loops(&load("orbit")?)?;
                    (a.graph, Some(a.classes))
                }
                AttachMode::Seats => (
                    core::seats_clique(k.ok_or_else(|| missing("k", "seats"))?)?,
                    None,
                ),
                AttachMode::Union => {
                    let copies = s.ok_or_else(|| missing("s", "union"))?;
                    (core::build_equitable_union(&load("union")?, copies)?, None)
                }
            };
            if let Some(path) = &out {
                write_json(path, &g)?;
            }
            match classes {
                Some(classes) => emit(&json!({ "graph": g, "classes": classes })),
                None => emit(&json!({ "graph": g })),
            }
        }
        Command::Order { dec, s, t, out } => {
            let d: Decomposition = read_json(&dec)?;
            let order = core::order_blocks(&d, s, t)?;
            if let Some(path) = &out {
                write_json(path, &order)?;
            }
            emit(&json!({ "order": order }));
        }
        Command::ExtractColoring {
            dec,
            out,
            coloring_out,
        } => {
            let d: Decomposition = read_json(&dec)?;
            let colored = core::extract_coloring(&d)?;
            if let Some(path) = &out {
                write_json(path, &colored.decomposition)?;
            }
            if let Some(path) = &coloring_out {
                write_json(path, &colored.coloring)?;
            }
            if out.is_some() || coloring_out.is_some() {
                emit(&json!({
                    "blocks": colored.decomposition.blocks.len(),
                    "colors": colored.coloring.iter().max(),
                }));
            } else {
                emit(&colored);
            }
        }
        Command::Compose { pbd, parts, out } => {
            let design: Pbd = read_json(&pbd)?;
            let mut loaded = BTreeMap::new();
            for (size, path) in parts {
                loaded.insert(size, read_json::<Decomposition>(&path)?);
            }
            let composed = core::compose(&design, &loaded)?;
            let summary = json!({ "blocks": composed.blocks.len(), "host": composed.host });
            deliver(out.as_deref(), &composed, summary)?;
        }
        Command::PbdParams { k } => {
            let sizes: BTreeSet<u64> = k.into_iter().collect();
            emit(&core::pbd_parameters(&sizes)?);
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let d: Decomposition = read_json(&args.dec)?;
    let report = verify_decomposition(&d)?;
    let mut pass = report.pass;
    let mut out = serde_json::Map::new();
    out.insert("decomposition".into(), json!(report));
    if args.balance {
        let r = verify_balanced(&d)?;
        pass &= r.balanced;
        out.insert("balance".into(), json!(r));
    }
    if args.degree {
        let r = verify_degree_balanced(&d)?;
        pass &= r.balanced;
        out.insert("degree".into(), json!(r));
    }
    if args.orbit {
        let r = verify_orbit_balanced(&d)?;
        pass &= r.balanced;
        out.insert("orbit".into(), json!(r));
    }
    if let (Some(path), Some(s), Some(p)) = (&args.coloring, args.s, args.p) {
        let coloring: Vec<usize> = read_json(path)?;
        let r = verify_equitable_coloring(&d, &coloring, s, p)?;
        pass &= r.pass;
        out.insert("coloring".into(), json!(r));
    }
    if let (Some(path), Some(s), Some(t)) = (&args.order, args.s_vertex, args.t_vertex) {
        let order: Vec<usize> = read_json(path)?;
        let ok = verify_block_ordering(&d, &order, s, t)?;
        pass &= ok;
        out.insert("order".into(), json!({ "pass": ok }));
    }
    out.insert("pass".into(), json!(pass));
    emit(&Value::Object(out));
    if pass {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn report_error(code: &str, message: &str) {
    eprintln!(
        "{}",
        json!({ "error": { "code": code, "message": message } })
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("USAGE", e.to_string().trim_end());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            report_error(e.code(), &e.to_string());
            ExitCode::from(1)
        }
        Err(Failure::Usage { code, message }) => {
            report_error(code, &message);
            ExitCode::from(2)
        }
    }
}
