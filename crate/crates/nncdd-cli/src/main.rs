use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nncdd::bench::{dual_hypercube, DualHypercubeParams};
use nncdd::conversion::{conversion_c2g, conversion_g2c, DdState};
use nncdd::eps::{eps_c2g, eps_g2c};
use nncdd::io::{emit, parse, Body, CddFile};
use nncdd::{ConKind, Constraint, HomVec, NncPolyhedron, StatsRecord};

/// Conversions between constraint and generator descriptions of NNC
/// polyhedra.
#[derive(Parser)]
#[command(name = "nncdd", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convert an .ine file to generators or an .ext file to constraints.
    Convert {
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write operation counters as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Convert and verify the result.
    Check {
        input: PathBuf,
        /// Also compare against a reference engine.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
        /// Also convert the result back and compare with the input.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Run a benchmark workload on both engines.
    Bench {
        #[arg(value_enum)]
        workload: Workload,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Write the report as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Eps,
}

#[derive(Clone, Copy, ValueEnum)]
enum Workload {
    Dualhypercube,
}

/// Failures that are the user's input, not a failed check.
struct UsageError(anyhow::Error);

fn load(path: &Path) -> std::result::Result<CddFile, UsageError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(UsageError)?;
    parse(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(UsageError)
}

struct Converted {
    file: CddFile,
    state: Option<DdState>,
}

fn contradiction(dim: usize) -> Constraint {
    Constraint { kind: ConKind::NonStrict, row: HomVec::unit(dim + 1, 0).neg() }
}

fn convert(input: &CddFile, stats: &mut StatsRecord) -> Result<Converted> {
    let dim = input.dim;
    let (body, state) = match &input.body {
        Body::H(cs) => match conversion_c2g(dim, cs, None, stats)? {
            Some(g) => (Body::V(g.flat()), Some(g.state().clone())),
            None => (Body::V(Vec::new()), None),
        },
        Body::V(gs) => match conversion_g2c(dim, gs, None, stats)? {
            Some(c) => (Body::H(c.flat()), Some(c.state().clone())),
            None => (Body::H(vec![contradiction(dim)]), None),
        },
    };
    Ok(Converted { file: CddFile { name: input.name.clone(), dim, body }, state })
}

fn polyhedron(file: &CddFile) -> Result<NncPolyhedron> {
    Ok(match &file.body {
        Body::H(cs) => NncPolyhedron::from_constraints(file.dim, cs.clone())?,
        Body::V(gs) => NncPolyhedron::from_generators(file.dim, gs.clone())?,
    })
}

fn eps_reference(file: &CddFile) -> Result<NncPolyhedron> {
    let st = &mut StatsRecord::default();
    let d = file.dim;
    Ok(match &file.body {
        Body::H(cs) => match eps_c2g(d, cs, st) {
            Some(gs) => NncPolyhedron::from_generators(d, gs)?,
            None => NncPolyhedron::empty(d),
        },
        Body::V(gs) => match eps_g2c(d, gs, st) {
            Some(cs) => NncPolyhedron::from_constraints(d, cs)?,
            None => NncPolyhedron::empty(d),
        },
    })
}

fn write_json(path: &Path, json: serde_json::Result<String>) -> Result<()> {
    fs::write(path, json? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn run_convert(input: &Path, output: Option<&Path>, stats_path: Option<&Path>) -> Result<ExitCode> {
    let file = match load(input) {
        Ok(f) => f,
        Err(UsageError(e)) => return usage(e),
    };
    let mut stats = StatsRecord::default();
    let out = convert(&file, &mut stats)?;
    let text = emit(&out.file);
    match output {
        Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    if let Some(p) = stats_path {
        write_json(p, serde_json::to_string_pretty(&stats))?;
    }
    eprintln!(
        "{} iterations, {} vector ops, {} saturation ops, max size {}",
        stats.iterations,
        stats.vec_ops,
        stats.sat_ops,
        stats.max_size()
    );
    Ok(ExitCode::SUCCESS)
}

fn report(label: &str, ok: bool, failed: &mut bool) {
    println!("{label}: {}", if ok { "ok" } else { "FAILED" });
    *failed |= !ok;
}

fn run_check(input: &Path, oracle: Option<Oracle>, roundtrip: bool) -> Result<ExitCode> {
    let file = match load(input) {
        Ok(f) => f,
        Err(UsageError(e)) => return usage(e),
    };
    let mut stats = StatsRecord::default();
    let out = convert(&file, &mut stats)?;
    let mut failed = false;

    let invariants = out.state.as_ref().map_or(Ok(()), DdState::check_invariants);
    if let Err(msg) = &invariants {
        println!("non-redundancy detail: {msg}");
    }
    report("non-redundancy", invariants.is_ok(), &mut failed);

    let mut original = polyhedron(&file)?;
    let mut converted = polyhedron(&out.file)?;
    report("equivalence", original.equals(&mut converted)?, &mut failed);

    if let Some(Oracle::Eps) = oracle {
        let mut reference = eps_reference(&file)?;
        report("eps oracle", reference.equals(&mut converted)?, &mut failed);
    }
    if roundtrip {
        let back = convert(&out.file, &mut stats)?;
        report("round trip", polyhedron(&back.file)?.equals(&mut original)?, &mut failed);
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run_bench(dim: usize, stats_path: Option<&Path>) -> Result<ExitCode> {
    if dim == 0 {
        return usage(anyhow::anyhow!("--dim must be positive"));
    }
    let r = dual_hypercube(DualHypercubeParams::new(dim))?;
    println!("dual hypercube, dim {dim}, radius {}", r.params.radius);
    for (name, s) in [("new", &r.new_engine), ("eps", &r.eps_engine)] {
        println!(
            "{name:>4}: {:8.1} ms, {:9} vector ops, {:9} saturation ops, {:5} iterations, max size {}",
            s.time_ms,
            s.vec_ops,
            s.sat_ops,
            s.iterations,
            s.max_size()
        );
    }
    println!("results equal: {}", r.results_equal);
    if let Some(p) = stats_path {
        write_json(p, serde_json::to_string_pretty(&r))?;
    }
    Ok(if r.results_equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn usage(e: anyhow::Error) -> Result<ExitCode> {
    eprintln!("error: {e:#}");
    Ok(ExitCode::from(2))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Convert { input, output, stats } => run_convert(input, output.as_deref(), stats.as_deref()),
        Cmd::Check { input, oracle, roundtrip } => run_check(input, *oracle, *roundtrip),
        Cmd::Bench { workload: Workload::Dualhypercube, dim, stats } => run_bench(*dim, stats.as_deref()),
    };
    res.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
