//! Command-line front end.
//!
//! Every command writes one line of JSON to stdout carrying a
//! `schema_version` field; diagnostics go to stderr. Exit status: 0 success,
//! 1 assertion failure or unsatisfiable, 2 input or parse error, 3 size
//! guard refusal.

mod instance;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use instance::{InstanceError, InstanceFile};

use crate::model::{ModelError, Symbol, VertexOrdering};
use crate::ops::associated_orientation_on;
use crate::ops::associated_matrix;
use crate::parity::{
    census_breakdown, circulant, delta_map, involution_selfcheck, triangle_free_realizations,
    CensusOptions, CheckTally, ParityError, SizeGuard, DEFAULT_MAX_EDGES,
};
use crate::model::RectangularGraph;
use crate::solver::{
    solve_rectangle, solve_square_plus_one, validate_solution, SolutionViolation, SolveError,
    SolveOptions, SolveStats, Warning,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Environment variable overriding the default edge-count guard.
pub const MAX_EDGES_ENV: &str = "DINITZ_MAX_EDGES";

#[derive(Debug, Parser)]
#[command(name = "dinitz", version, about = "Orientation parity checks and list-constrained latin rectangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderingArg {
    /// Row-major: rows ascending, columns ascending.
    Lex,
    /// Rows ascending, columns descending.
    Paper,
}

impl OrderingArg {
    fn ordering(self) -> VertexOrdering {
        match self {
            OrderingArg::Lex => VertexOrdering::Lex,
            OrderingArg::Paper => VertexOrdering::RowsAscColsDesc,
        }
    }

    fn name(self) -> &'static str {
        match self {
            OrderingArg::Lex => "lex",
            OrderingArg::Paper => "paper",
        }
    }
}

#[derive(Debug, clap::Args)]
struct Dims {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a list instance, using the square reduction when r = n and
    /// every list has at least n + 1 symbols.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Abandon an attempt after this many nodes and restart reseeded.
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long, default_value_t = 8, requires = "node_limit")]
        restarts: u32,
    },
    /// Print the circulant rectangle with entries (i + j - 2) mod n.
    Circulant {
        #[command(flatten)]
        dims: Dims,
    },
    /// Count even and odd orientations realizing the standard target and
    /// check that they differ by exactly one.
    VerifyParity {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "lex")]
        ordering: OrderingArg,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List triangle-free realizations of the standard target and check that
    /// the circulant orientation is the only one.
    Uniqueness {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Run the involution over every triangle-containing realization of the
    /// standard target.
    InvolutionSelfcheck {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "lex")]
        ordering: OrderingArg,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Check a candidate rectangle against an instance.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
}

/// A failed command: exit code plus a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<ParityError> for Failure {
    fn from(e: ParityError) -> Self {
        let code = match e {
            ParityError::GuardExceeded { .. } => EXIT_GUARD,
            ParityError::CountOverflow => EXIT_FAILED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::input(e)
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::input(e)
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit<T: Serialize>(&mut self, doc: &T) -> String {
        let line = serde_json::to_string(doc).expect("output serializes");
        let _ = writeln!(self.out, "{line}");
        line
    }

    fn note(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{msg}");
    }
}

/// Entry point for the binary: parses `args` (including the program name),
/// runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            io.note(format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            input,
            seed,
            output,
            node_limit,
            restarts,
        } => {
            let options = SolveOptions {
                seed,
                node_limit,
                restarts: if node_limit.is_some() { restarts } else { 0 },
            };
            cmd_solve(&input, output.as_deref(), &options, io)
        }
        Command::Circulant { dims } => cmd_circulant(&dims, io),
        Command::VerifyParity {
            dims,
            ordering,
            max_edges,
            jobs,
        } => cmd_verify_parity(&dims, ordering, guard(max_edges)?, jobs, io),
        Command::Uniqueness { dims, max_edges } => cmd_uniqueness(&dims, guard(max_edges)?, io),
        Command::InvolutionSelfcheck {
            dims,
            ordering,
            max_edges,
        } => cmd_involution(&dims, ordering, guard(max_edges)?, io),
        Command::Validate { input, candidate } => cmd_validate(&input, &candidate, io),
    }
}

fn guard(flag: Option<usize>) -> Result<SizeGuard, Failure> {
    if let Some(m) = flag {
        return Ok(SizeGuard::new(m));
    }
    match std::env::var(MAX_EDGES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(SizeGuard::new)
            .map_err(|_| Failure::input(format!("{MAX_EDGES_ENV}={v:?} is not an edge count"))),
        Err(_) => Ok(SizeGuard::new(DEFAULT_MAX_EDGES)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    schema_version: u32,
    command: &'static str,
    status: &'static str,
    method: &'static str,
    r: usize,
    n: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rectangle: Option<&'a [Vec<Symbol>]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extended: Option<&'a [Vec<Symbol>]>,
    stats: SolveStats,
    warnings: &'a [Warning],
}

fn cmd_solve(
    input: &Path,
    output: Option<&Path>,
    options: &SolveOptions,
    io: &mut Io<'_>,
) -> Result<i32, Failure> {
    let lists = InstanceFile::parse(&read(input)?)?.to_assignment()?;
    let (r, n) = (lists.rows(), lists.cols());
    let square = r == n && lists.min_list_len() > n;
    let method = if square { "square_plus_one" } else { "rectangle" };
    let outcome = if square {
        solve_square_plus_one(&lists, options)
    } else {
        solve_rectangle(&lists, options)
    };
    let base = |status, stats, warnings| SolveDoc {
        schema_version: SCHEMA_VERSION,
        command: "solve",
        status,
        method,
        r,
        n,
        seed: options.seed,
        rectangle: None,
        extended: None,
        stats,
        warnings,
    };
    match outcome {
        Ok(result) => {
            for w in &result.warnings {
                io.note(format!("warning: {w}"));
            }
            let doc = SolveDoc {
                rectangle: Some(&result.rectangle),
                extended: result.extended.as_deref(),
                ..base("solved", result.stats, &result.warnings)
            };
            let line = io.emit(&doc);
            if let Some(path) = output {
                fs::write(path, format!("{line}\n"))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            Ok(EXIT_OK)
        }
        Err(SolveError::Unsatisfiable { stats, warnings }) => {
            for w in &warnings {
                io.note(format!("warning: {w}"));
            }
            io.emit(&base("unsatisfiable", stats, &warnings));
            io.note("no partial latin rectangle fits these lists");
            Ok(EXIT_FAILED)
        }
        Err(SolveError::NodeLimit { stats }) => {
            io.emit(&base("node_limit", stats, &[]));
            io.note("node limit reached on every attempt");
            Ok(EXIT_FAILED)
        }
        Err(e) => Err(Failure::input(e)),
    }
}

#[derive(Serialize)]
struct CirculantDoc {
    schema_version: u32,
    command: &'static str,
    r: usize,
    n: usize,
    rectangle: Vec<Vec<usize>>,
}

fn cmd_circulant(dims: &Dims, io: &mut Io<'_>) -> Result<i32, Failure> {
    let rect = circulant(dims.r, dims.n)?;
    io.emit(&CirculantDoc {
        schema_version: SCHEMA_VERSION,
        command: "circulant",
        r: dims.r,
        n: dims.n,
        rectangle: rect.to_rows(),
    });
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ParityDoc {
    schema_version: u32,
    command: &'static str,
    r: usize,
    n: usize,
    ordering: &'static str,
    edges: usize,
    de: u64,
    #[serde(rename = "do")]
    do_: u64,
    gap: u128,
    signed_gap: i128,
    triangle_free: [u64; 2],
    with_triangle: [u64; 2],
    holds: bool,
}

fn cmd_verify_parity(
    dims: &Dims,
    ordering: OrderingArg,
    guard: SizeGuard,
    jobs: usize,
    io: &mut Io<'_>,
) -> Result<i32, Failure> {
    let target = delta_map(dims.r, dims.n)?;
    let graph = RectangularGraph::shared(dims.r, dims.n, ordering.ordering())?;
    let options = CensusOptions {
        guard,
        jobs: jobs.max(1),
    };
    let b = census_breakdown(&graph, &target, &options)?;
    let holds = b.all.gap().unsigned_abs() == 1;
    io.emit(&ParityDoc {
        schema_version: SCHEMA_VERSION,
        command: "verify-parity",
        r: dims.r,
        n: dims.n,
        ordering: ordering.name(),
        edges: graph.edge_count(),
        de: b.all.de,
        do_: b.all.do_,
        gap: b.all.gap().unsigned_abs(),
        signed_gap: b.all.gap(),
        triangle_free: [b.triangle_free.de, b.triangle_free.do_],
        with_triangle: [b.with_triangle.de, b.with_triangle.do_],
        holds,
    });
    if !holds {
        io.note(format!("|de - do| = {}, expected 1", b.all.gap().unsigned_abs()));
    }
    Ok(if holds { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct UniquenessDoc {
    schema_version: u32,
    command: &'static str,
    r: usize,
    n: usize,
    count: usize,
    matches_circulant: bool,
    /// Associated matrix of each triangle-free realization.
    realizations: Vec<Vec<Vec<usize>>>,
}

fn cmd_uniqueness(dims: &Dims, guard: SizeGuard, io: &mut Io<'_>) -> Result<i32, Failure> {
    let target = delta_map(dims.r, dims.n)?;
    let options = CensusOptions { guard, jobs: 1 };
    let found = triangle_free_realizations(&target, &VertexOrdering::Lex, &options)?;
    let expected = match found.first() {
        Some(d) => Some(
            associated_orientation_on(&circulant(dims.r, dims.n)?, d.graph().clone())
                .expect("same dimensions"),
        ),
        None => None,
    };
    let matches = found.len() == 1 && expected.as_ref() == found.first();
    io.emit(&UniquenessDoc {
        schema_version: SCHEMA_VERSION,
        command: "uniqueness",
        r: dims.r,
        n: dims.n,
        count: found.len(),
        matches_circulant: matches,
        realizations: found.iter().map(associated_matrix).collect(),
    });
    if !matches {
        io.note(format!(
            "expected exactly the circulant orientation, found {} triangle-free realizations",
            found.len()
        ));
    }
    Ok(if matches { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct InvolutionDoc<'a> {
    schema_version: u32,
    command: &'static str,
    r: usize,
    n: usize,
    ordering: &'static str,
    realizations: u64,
    triangle_containing: u64,
    even: u64,
    odd: u64,
    checks: &'a [CheckTally],
    passed: bool,
}

fn cmd_involution(
    dims: &Dims,
    ordering: OrderingArg,
    guard: SizeGuard,
    io: &mut Io<'_>,
) -> Result<i32, Failure> {
    let report = involution_selfcheck(dims.r, dims.n, &ordering.ordering(), guard)?;
    let passed = report.all_passed();
    io.emit(&InvolutionDoc {
        schema_version: SCHEMA_VERSION,
        command: "involution-selfcheck",
        r: dims.r,
        n: dims.n,
        ordering: ordering.name(),
        realizations: report.realizations,
        triangle_containing: report.triangle_containing,
        even: report.even,
        odd: report.odd,
        checks: &report.checks,
        passed,
    });
    for c in report.checks.iter().filter(|c| c.failed > 0) {
        io.note(format!("{}: {} failures", c.name, c.failed));
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

/// A candidate is either a bare 2-D array or an object with a `rectangle`
/// field (which is what `solve` prints).
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum CandidateFile {
    Bare(Vec<Vec<Symbol>>),
    Wrapped { rectangle: Vec<Vec<Symbol>> },
}

#[derive(Serialize)]
struct ValidateDoc<'a> {
    schema_version: u32,
    command: &'static str,
    valid: bool,
    violations: &'a [SolutionViolation],
}

fn cmd_validate(input: &Path, candidate: &Path, io: &mut Io<'_>) -> Result<i32, Failure> {
    let lists = InstanceFile::parse(&read(input)?)?.to_assignment()?;
    let rect = match serde_json::from_str::<CandidateFile>(&read(candidate)?) {
        Ok(CandidateFile::Bare(r)) | Ok(CandidateFile::Wrapped { rectangle: r }) => r,
        Err(e) => return Err(Failure::input(format!("malformed candidate: {e}"))),
    };
    let report = validate_solution(&rect, &lists)?;
    io.emit(&ValidateDoc {
        schema_version: SCHEMA_VERSION,
        command: "validate",
        valid: report.is_valid(),
        violations: &report.violations,
    });
    for v in &report.violations {
        io.note(format!("violation: {v}"));
    }
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_FAILED })
}
