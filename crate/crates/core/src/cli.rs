//! Command-line driver.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser};
use thiserror::Error;

use crate::engine::{self, EngineConfig, EngineError, EngineKind, EngineReport, InnerEngine, JsonLinesSink, NullSink, Status, TraceSink};
use crate::gf::FieldError;
use crate::midsolve;
use crate::mpoly::{MonomialOrder, PolyRing, Polynomial};
use crate::par::Execution;
use crate::systems::{self, BenchSpec, Family, GenError, OracleError, ParseError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_ORACLE_MISMATCH: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 10;
pub const EXIT_ROUND_LIMIT: u8 = 11;

#[derive(Debug, Parser)]
#[command(name = "gbsolve", version, about = "Gröbner bases over GF(q) with Middle-Solving")]
#[command(group(ArgGroup::new("source").required(true).args(["input", "gen"])))]
pub struct Args {
    /// System file (`field`, `vars`, one polynomial per line).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generate a benchmark system: cyclic, katsura or eco.
    #[arg(long, requires = "n")]
    pub gen: Option<Family>,
    /// Size parameter for --gen.
    #[arg(long)]
    pub n: Option<usize>,
    /// Field size for --gen (default 2); must match the file with --input.
    #[arg(long)]
    pub field: Option<u64>,
    #[arg(long, default_value = "f4")]
    pub engine: EngineKind,
    #[arg(long, default_value = "grevlex")]
    pub order: MonomialOrder,
    /// Solve unique-root univariates as they appear (default).
    #[arg(long, overrides_with = "no_middle_solving")]
    pub middle_solving: bool,
    #[arg(long)]
    pub no_middle_solving: bool,
    /// Adjoin x^q - x for every variable (default).
    #[arg(long, overrides_with = "no_adjoin_field_eqs")]
    pub adjoin_field_eqs: bool,
    #[arg(long)]
    pub no_adjoin_field_eqs: bool,
    /// Stop after this many rounds.
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Homogenize with a fresh least variable before solving.
    #[arg(long)]
    pub homogenize: bool,
    /// Incremental engine: consume inputs last to first.
    #[arg(long)]
    pub reverse_input_order: bool,
    /// Write the JSON-lines trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Compare against exhaustive search when the space is small enough.
    #[arg(long)]
    pub oracle_check: bool,
    /// Disable Buchberger's criteria.
    #[arg(long)]
    pub no_criteria: bool,
    /// Engine for each incremental step.
    #[arg(long, default_value = "f4")]
    pub inner: InnerEngine,
    #[arg(long, default_value = "parallel")]
    pub execution: Execution,
    /// Print the final basis.
    #[arg(long)]
    pub show_basis: bool,
}

impl Args {
    pub fn config(&self) -> EngineConfig {
        let mut c = EngineConfig::new(self.engine)
            .middle_solving(!self.no_middle_solving)
            .adjoin_field_eqs(!self.no_adjoin_field_eqs)
            .criteria(!self.no_criteria)
            .inner(self.inner)
            .reverse_input_order(self.reverse_input_order)
            .execution(self.execution);
        if let Some(limit) = self.max_rounds {
            c = c.max_rounds(limit);
        }
        c
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("reading {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("--field {given} conflicts with `field {declared}` in the input file")]
    FieldMismatch { given: u64, declared: u64 },
    #[error("--max-rounds must be positive")]
    ZeroRounds,
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::OracleMismatch(_) => EXIT_ORACLE_MISMATCH,
            _ => EXIT_ERROR,
        }
    }
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::GroebnerBasis | Status::AllVariablesSolved => EXIT_OK,
        Status::Inconsistent => EXIT_INCONSISTENT,
        Status::RoundLimit => EXIT_ROUND_LIMIT,
    }
}

/// Load or generate the system named by `args`.
pub fn load(args: &Args) -> Result<(String, PolyRing, Vec<Polynomial>), CliError> {
    let (label, ring, polys) = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
        let (ring, polys) = systems::parse_system(&text, args.order)
            .map_err(|source| CliError::Parse { path: path.clone(), source })?;
        let declared = ring.field().q() as u64;
        if let Some(given) = args.field.filter(|&g| g != declared) {
            return Err(CliError::FieldMismatch { given, declared });
        }
        (path.display().to_string(), ring, polys)
    } else {
        let family = args.gen.expect("clap enforces a source");
        let spec = BenchSpec::new(family, args.n.expect("clap enforces --n"), args.field.unwrap_or(2));
        let (ring, polys) = systems::gen_system(&spec, args.order)?;
        (format!("{family}-{}", spec.n), ring, polys)
    };
    if args.homogenize {
        let (ring, polys) = systems::homogenize(&ring, &polys);
        return Ok((format!("{label}-h"), ring, polys));
    }
    Ok((label, ring, polys))
}

/// Run per `args`, writing the summary to `out`.
pub fn run_cli(args: &Args, out: &mut dyn Write) -> Result<Status, CliError> {
    if args.max_rounds == Some(0) {
        return Err(CliError::ZeroRounds);
    }
    let (label, ring, polys) = load(args)?;
    let config = args.config();
    let report = match &args.trace {
        Some(path) => {
            let mut sink = JsonLinesSink::create(path)?;
            engine::run(&ring, &polys, &config, &mut sink)?
        }
        None => engine::run(&ring, &polys, &config, &mut NullSink as &mut dyn TraceSink)?,
    };
    summarize(out, &label, &ring, &polys, &config, &report, args.show_basis)?;
    if args.oracle_check {
        oracle_check(out, &ring, &polys, &config, &report)?;
    }
    Ok(report.status)
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

fn summarize(
    out: &mut dyn Write,
    label: &str,
    ring: &PolyRing,
    polys: &[Polynomial],
    config: &EngineConfig,
    report: &EngineReport,
    show_basis: bool,
) -> io::Result<()> {
    writeln!(
        out,
        "system:      {label} over GF({}), {} variables, {} polynomials",
        ring.field().q(),
        ring.nvars(),
        polys.len()
    )?;
    writeln!(
        out,
        "engine:      {} ({}, middle-solving {}, field equations {})",
        config.engine,
        ring.order(),
        on_off(config.middle_solving),
        on_off(config.adjoin_field_eqs)
    )?;
    writeln!(out, "status:      {}", report.status)?;
    writeln!(out, "total rounds: {}", report.total_rounds())?;
    let tuples: Vec<String> = report.solve_tuples().iter().map(|(r, s)| format!("({r},{s})")).collect();
    writeln!(out, "(Round, #Solved): {}", if tuples.is_empty() { "-".to_string() } else { tuples.join(",") })?;
    if !report.assignments.is_empty() {
        let a: Vec<String> =
            report.assignments.iter().map(|(&v, &x)| format!("{}={x}", ring.var_name(v))).collect();
        writeln!(out, "assignments: {}", a.join(" "))?;
    }
    writeln!(out, "basis size:  {}", report.basis.len())?;
    if show_basis {
        for p in &report.basis {
            writeln!(out, "  {}", ring.display(p))?;
        }
    }
    Ok(())
}

/// Check the report against exhaustive search; prints the verdict.
fn oracle_check(
    out: &mut dyn Write,
    ring: &PolyRing,
    polys: &[Polynomial],
    config: &EngineConfig,
    report: &EngineReport,
) -> Result<(), CliError> {
    let sols = match systems::brute_force_solutions(polys, ring, config.execution) {
        Ok(s) => s,
        Err(e @ OracleError::TooLarge { .. }) => {
            writeln!(out, "oracle:      skipped ({e})")?;
            return Ok(());
        }
    };
    let mut problems = Vec::new();
    if report.status == Status::Inconsistent && !sols.is_empty() {
        problems.push(format!("reported inconsistent but {} solutions exist", sols.len()));
    }
    for (&v, &x) in &report.assignments {
        if let Some(s) = sols.iter().find(|s| s[v] != x) {
            problems.push(format!("{}={x} contradicts solution {s:?}", ring.var_name(v)));
        }
    }
    if report.status != Status::Inconsistent {
        if let Some(s) = sols.iter().find(|s| report.basis.iter().any(|p| ring.eval(p, s) != 0)) {
            problems.push(format!("solution {s:?} is not a zero of the basis"));
        }
    }
    let complete = matches!(report.status, Status::GroebnerBasis | Status::AllVariablesSolved);
    if complete && config.adjoin_field_eqs && ring.order() == MonomialOrder::Lex {
        let variety = midsolve::variety_from_lex_basis(&report.basis, ring);
        if variety != sols {
            problems.push(format!("lex basis has {} zeros, exhaustive search {}", variety.len(), sols.len()));
        }
    }
    if problems.is_empty() {
        writeln!(out, "oracle:      consistent ({} solutions)", sols.len())?;
        Ok(())
    } else {
        Err(CliError::OracleMismatch(problems.join("; ")))
    }
}
