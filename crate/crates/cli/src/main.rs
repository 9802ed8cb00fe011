//! `spg`: command-line front end for generating, checking and repairing
//! subset partition graphs.
//!
//! Exit codes: 0 success, 1 domain failure (error name on stderr), 2 usage.

use std::fs;
use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spg_core::generators::{
    gen_cube_spg, gen_cyclic_construction, gen_figure1, gen_hirsch_path_clf, gen_spindle_family,
};
use spg_core::oracle::{brute_diameter, brute_dimension_reduction, brute_max_clf_diameter};
use spg_core::oracle::{ClfVariant, OracleBudget};
use spg_core::{
    diameter, distance, parse, restriction, serialize, serialize_clf, spg_layering,
    strategy_search, DSet, Face, Move, Property, PropertyReport, SearchMode, Spg, StrategyTrace,
    Symbol, Verdict,
};

#[derive(Debug, Parser)]
#[command(name = "spg", version, about = "Subset partition graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph as canonical JSON.
    Generate {
        #[command(subcommand)]
        which: Generator,
    },
    /// Check properties; exits 1 if any requested property fails.
    Check {
        file: PathBuf,
        /// Comma separated property names, `main` or `all`.
        #[arg(long, default_value = "all")]
        properties: String,
        /// Decide dimension reduction with the brute-force oracle.
        #[arg(long)]
        brute: bool,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Print the diameter of the block graph.
    Diameter { file: PathBuf },
    /// Print the distance between the blocks holding two d-sets.
    Distance {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Read symbols as labels instead of indices.
        #[arg(long)]
        labels: bool,
    },
    /// Describe the restriction to the d-sets containing a face.
    Restrict {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        face: String,
        #[arg(long)]
        labels: bool,
    },
    /// Contract an edge and write the result.
    Contract {
        file: PathBuf,
        #[arg(long, value_parser = parse_edge)]
        edge: [usize; 2],
    },
    /// Add an edge and write the result.
    AddEdge {
        file: PathBuf,
        #[arg(long, value_parser = parse_edge)]
        edge: [usize; 2],
    },
    /// Layer the d-sets by block distance from a root d-set.
    Layer {
        file: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        labels: bool,
    },
    /// Search for moves that make the target properties hold.
    Search {
        file: PathBuf,
        #[arg(long, default_value = "main")]
        targets: String,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        /// Where to write the trace; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Greedy)]
        mode: Mode,
    },
    /// Re-apply a trace and print the final graph.
    Replay { trace: PathBuf },
    /// Brute-force reference computations on small instances.
    Oracle {
        #[command(subcommand)]
        which: Oracle,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
    },
}

#[derive(Debug, Subcommand)]
enum Generator {
    Spindle {
        #[arg(long)]
        m: usize,
    },
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Cube {
        #[arg(long)]
        dim: usize,
    },
    HirschPath {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Figure1,
}

#[derive(Debug, Subcommand)]
enum Oracle {
    DimensionReduction {
        file: PathBuf,
    },
    Diameter {
        file: PathBuf,
    },
    MaxClf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        one_subset: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Greedy,
    Beam,
}

/// A domain failure: its name goes to stderr and the process exits 1.
#[derive(Debug)]
struct Failure {
    name: String,
    message: String,
}

impl Failure {
    fn new(name: &str, message: impl Into<String>) -> Self {
        Failure {
            name: name.to_string(),
            message: message.into(),
        }
    }
}

macro_rules! named_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new(e.name(), e.to_string())
            }
        }
    )*};
}

named_error!(
    spg_core::SpgError,
    spg_core::IoError,
    spg_core::StrategyError
);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new("IoError", e.to_string())
    }
}

impl From<spg_core::strategy::ReplayError> for Failure {
    fn from(e: spg_core::strategy::ReplayError) -> Self {
        use spg_core::strategy::ReplayError;
        let name = match &e {
            ReplayError::Io(inner) => inner.name(),
            ReplayError::Move(inner) => inner.name(),
            ReplayError::Mismatch { .. } => "ReplayMismatch",
        };
        Failure::new(name, e.to_string())
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    /// A check ran but something requested did not hold.
    Fail,
}

fn parse_edge(s: &str) -> Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|_| format!("bad vertex {a:?}"))?,
            b.parse().map_err(|_| format!("bad vertex {b:?}"))?,
        ]),
        _ => Err(format!("expected i,j, got {s:?}")),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::new("IoError", format!("{}: {e}", path.display())))
    }
}

fn load(path: &PathBuf) -> Result<Spg, Failure> {
    Ok(parse(&read_input(path)?)?)
}

/// Symbols are comma separated indices, or labels when `labels` is set.
fn parse_symbols(g: &Spg, list: &str, labels: bool) -> Result<Vec<Symbol>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let symbol = if labels {
                g.symbols().symbol_for_label(t)
            } else {
                t.parse().ok()
            };
            symbol.ok_or_else(|| Failure::new("UnknownSymbol", format!("no symbol {t:?}")))
        })
        .collect()
}

fn parse_dset(g: &Spg, list: &str, labels: bool) -> Result<DSet, Failure> {
    Ok(DSet::new(parse_symbols(g, list, labels)?)?)
}

fn print_json(out: &mut impl Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn print_table(out: &mut impl Write, report: &PropertyReport) -> io::Result<()> {
    let width = report
        .iter()
        .map(|(p, _)| p.name().len())
        .max()
        .unwrap_or(0);
    for (p, verdict) in report.iter() {
        match verdict {
            Verdict::Holds => writeln!(out, "{:width$}  holds", p.name())?,
            Verdict::Fails(w) => writeln!(out, "{:width$}  FAILS  {w}", p.name())?,
        }
    }
    Ok(())
}

fn check(
    out: &mut impl Write,
    g: &Spg,
    properties: &[Property],
    brute: bool,
    as_json: bool,
) -> Result<Outcome, Failure> {
    let mut report = PropertyReport::for_properties(g, properties);
    if brute && properties.contains(&Property::DimensionReduction) {
        let verdict = brute_dimension_reduction(g, &OracleBudget::default())?;
        report.insert(Property::DimensionReduction, verdict);
    }
    if as_json {
        print_json(out, &report)?;
    } else {
        print_table(out, &report)?;
    }
    Ok(if report.all_hold() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn run(command: Command, out: &mut impl Write) -> Result<Outcome, Failure> {
    match command {
        Command::Generate { which } => {
            let text = match which {
                Generator::Spindle { m } => serialize(&gen_spindle_family(m)?),
                Generator::Cyclic { n, d } => serialize(&gen_cyclic_construction(n, d)?),
                Generator::Cube { dim } => serialize(&gen_cube_spg(dim)?),
                Generator::HirschPath { n, d } => serialize_clf(&gen_hirsch_path_clf(n, d)?),
                Generator::Figure1 => serialize(&gen_figure1()),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Check {
            file,
            properties,
            brute,
            json,
        } => {
            let g = load(&file)?;
            let properties = Property::parse_list(&properties)
                .map_err(|e| Failure::new("UnknownProperty", e))?;
            return check(out, &g, &properties, brute, json);
        }
        Command::Diameter { file } => writeln!(out, "{}", diameter(&load(&file)?).value)?,
        Command::Distance {
            file,
            from,
            to,
            labels,
        } => {
            let g = load(&file)?;
            let a = parse_dset(&g, &from, labels)?;
            let b = parse_dset(&g, &to, labels)?;
            writeln!(out, "{}", distance(&g, &a, &b)?)?;
        }
        Command::Restrict { file, face, labels } => {
            let g = load(&file)?;
            let face = Face::new(parse_symbols(&g, &face, labels)?);
            print_json(out, &restriction(&g, &face)?.summary())?;
        }
        Command::Contract { file, edge } => {
            let g = Move::contract(edge[0], edge[1]).apply(&load(&file)?)?;
            out.write_all(serialize(&g).as_bytes())?;
        }
        Command::AddEdge { file, edge } => {
            let g = Move::add_edge(edge[0], edge[1]).apply(&load(&file)?)?;
            out.write_all(serialize(&g).as_bytes())?;
        }
        Command::Layer { file, root, labels } => {
            let g = load(&file)?;
            let root = parse_dset(&g, &root, labels)?;
            let layering = spg_layering(&g, &root)?;
            print_json(
                out,
                &json!({
                    "root": layering.root,
                    "layers": layering.layers.layers(),
                    "verdict": layering.verdict,
                }),
            )?;
            if !layering.verdict.holds() {
                return Ok(Outcome::Fail);
            }
        }
        Command::Search {
            file,
            targets,
            budget,
            out: trace_path,
            mode,
        } => {
            let g = load(&file)?;
            let targets =
                Property::parse_list(&targets).map_err(|e| Failure::new("UnknownProperty", e))?;
            let mode = match mode {
                Mode::Greedy => SearchMode::Greedy,
                Mode::Beam => SearchMode::Beam,
            };
            let (trace, failure) = match strategy_search(&g, &targets, budget, mode) {
                Ok(trace) => (trace, None),
                Err(e) => (e.trace().clone(), Some(Failure::from(e))),
            };
            write_trace(out, &trace, trace_path.as_ref())?;
            if let Some(f) = failure {
                return Err(f);
            }
        }
        Command::Replay { trace } => {
            let trace: StrategyTrace = serde_json::from_str(&read_input(&trace)?)
                .map_err(|e| Failure::new("SyntaxError", e.to_string()))?;
            out.write_all(serialize(&trace.replay()?).as_bytes())?;
        }
        Command::Oracle { which } => {
            let budget = OracleBudget::default();
            match which {
                Oracle::DimensionReduction { file } => {
                    let verdict = brute_dimension_reduction(&load(&file)?, &budget)?;
                    print_json(out, &verdict)?;
                    if !verdict.holds() {
                        return Ok(Outcome::Fail);
                    }
                }
                Oracle::Diameter { file } => {
                    writeln!(out, "{}", brute_diameter(&load(&file)?, &budget)?)?
                }
                Oracle::MaxClf { n, d, one_subset } => {
                    let variant = if one_subset {
                        ClfVariant::OneSubset
                    } else {
                        ClfVariant::General
                    };
                    print_json(out, &brute_max_clf_diameter(n, d, variant, &budget)?)?;
                }
            }
        }
        Command::Serve { port, bind } => {
            let addr = SocketAddr::new(bind, port);
            let runtime = tokio::runtime::Runtime::new()?;
            eprintln!("listening on http://{addr}");
            runtime.block_on(spg_workbench::serve(addr))?;
        }
    }
    Ok(Outcome::Pass)
}

/// The trace goes to `path` when given, with a one-line summary on stdout.
fn write_trace(
    out: &mut impl Write,
    trace: &StrategyTrace,
    path: Option<&PathBuf>,
) -> Result<(), Failure> {
    match path {
        Some(path) => {
            fs::write(path, trace.to_json())?;
            writeln!(
                out,
                "{} moves, diameter {} -> {}",
                trace.steps.len(),
                trace.initial_diameter,
                trace.final_diameter
            )?;
        }
        None => out.write_all(trace.to_json().as_bytes())?,
    }
    for warning in &trace.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Pass), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::Fail), Ok(())) => ExitCode::from(1),
        (Err(f), _) => {
            let message = f.message.strip_prefix(&format!("{}: ", f.name));
            eprintln!("error: {}: {}", f.name, message.unwrap_or(&f.message));
            ExitCode::from(1)
        }
        (_, Err(e)) => {
            eprintln!("error: IoError: {e}");
            ExitCode::from(1)
        }
    }
}
