//! Command-line front end. Exit codes: 0 success with every checked
//! inequality satisfied, 1 violation found, 2 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{run_suite_with, Execution, Field, SuiteReport, TrialConfig};
use crate::index::{Neighbor, VpIndex};
use crate::io::{parse_vectors, Format, VectorFile};
use crate::kernel::Mode;
use crate::linalg::{CVector, Tolerance};
use crate::metrics::{angle, d_p, delta_p, triangle_check, AngleKind, TriangleKind};
use crate::ntuple::{basis_max_bound, general_e_bound, mean_bound, NTupleReport, Order};
use crate::numfmt::{self, sig17};
use crate::projections::{projection_bound, Projector};
use crate::refinements::{
    det2_bound, detp_bound, quad_refinement, rs_chain, schwarz_bound, MetricParams,
};
use crate::report::BoundReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "schwarzkit",
    version,
    about = "Schwarz inequality refinements, projective metrics and a verification suite"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one inequality on vectors from a file.
    Bound(BoundArgs),
    /// Distances, angles or triangle checks on consecutive pairs or triples.
    Metrics(MetricsArgs),
    /// Build or query a vantage-point index.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Run the seeded randomized suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Schwarz,
    Projection,
    Quad,
    Rs,
    Detp,
    Det2,
    NtupleGeneral,
    NtupleBasisMax,
    NtupleMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modulus,
    Real,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Modulus => Mode::Modulus,
            ModeArg::Real => Mode::RealPart,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    P,
    Quadratic,
    P2Simple,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::P => Order::PForm,
            OrderArg::Quadratic => Order::Quadratic,
            OrderArg::P2Simple => Order::P2Simple,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Relative tolerance.
    #[arg(long = "tol", default_value_t = Tolerance::DEFAULT_REL)]
    pub rel: f64,
    /// Absolute tolerance.
    #[arg(long = "abs-tol", default_value_t = Tolerance::DEFAULT_ABS)]
    pub abs: f64,
}

impl TolArgs {
    fn tolerance(&self) -> Result<Tolerance> {
        Tolerance::new(self.rel, self.abs)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// 0-based index of x in the input file.
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub y: usize,
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long)]
    pub z: Option<usize>,
    /// Indices of an orthonormal family, for `--method projection`.
    #[arg(long, value_delimiter = ',')]
    pub basis: Vec<usize>,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Determinant order for the n-tuple methods.
    #[arg(long, value_enum, default_value = "p")]
    pub order: OrderArg,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value = "modulus")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Write reports as JSON to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Dp,
    Deltap,
    Psi,
    Phi,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Treat vectors (0,1), (2,3), ... as pairs.
    #[arg(long, conflicts_with = "triples", required_unless_present = "triples")]
    pub pairs: bool,
    /// Treat vectors (0,1,2), (3,4,5), ... as triples (x, y, z).
    #[arg(long)]
    pub triples: bool,
    /// Pairs: dp|deltap|psi|phi. Triples: a triangle kind
    /// (lin_psi, krein, wz_sin_psi, sin_phi, dp, deltap, cos_lower).
    #[arg(long, default_value = "dp")]
    pub kind: String,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum IndexCommand {
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        out: PathBuf,
    },
    Nn {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    Range {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,8")]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long = "p", value_delimiter = ',', default_value = "2,3,10")]
    pub p: Vec<f64>,
    #[arg(long, default_value = "complex")]
    pub field: Field,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    pub serial: bool,
}

/// Runs a parsed command, writing human output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Bound(a) => run_bound(a, out),
        Command::Metrics(a) => run_metrics(a, out),
        Command::Index(c) => run_index(c, out),
        Command::Check(a) => run_check(a, out),
    }
}

/// Parses `args` (including the program name) and runs; errors are
/// reported on `err` and mapped to exit code 2.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path, format: Option<FormatArg>) -> Result<VectorFile> {
    parse_vectors(path, format.map(Format::from))
}

fn need(v: Option<usize>, flag: &str, method: Method) -> Result<usize> {
    v.ok_or_else(|| Error::param(format!("--{flag} is required for method {method:?}")))
}

#[derive(Serialize)]
struct BoundOutput<'a> {
    method: String,
    reports: &'a [BoundReport],
    #[serde(skip_serializing_if = "Option::is_none")]
    ntuple: Option<&'a NTupleReport>,
}

fn run_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<i32> {
    let tol = a.tol.tolerance()?;
    let file = load(&a.input, a.format)?;
    let x = file.get(a.x)?;
    let y = file.get(a.y)?;
    let e = || -> Result<&CVector> { file.get(need(a.e, "e", a.method)?) };
    let mode = Mode::from(a.mode);
    let mut ntuple = None;
    let reports: Vec<BoundReport> = match a.method {
        Method::Schwarz => vec![schwarz_bound(x, y, &tol)?],
        Method::Projection => {
            let family = a
                .basis
                .iter()
                .map(|&i| file.get(i).cloned())
                .collect::<Result<Vec<_>>>()?;
            let r = projection_bound(&Projector::new(family)?, x, y, &tol)?;
            let floor = r.chain_floor(&tol);
            vec![r.refinement, r.chain, floor]
        }
        Method::Quad => vec![quad_refinement(
            x,
            y,
            file.get(need(a.z, "z", a.method)?)?,
            &tol,
        )?],
        Method::Rs => {
            let r = rs_chain(x, y, e()?, &tol)?;
            vec![r.upper, r.lower]
        }
        Method::Detp => vec![detp_bound(x, y, e()?, MetricParams::new(a.p, mode)?, &tol)?],
        Method::Det2 => vec![det2_bound(x, y, e()?, mode, &tol)?],
        Method::NtupleGeneral | Method::NtupleBasisMax | Method::NtupleMean => {
            let (xs, ys) = (x.entries(), y.entries());
            let order = Order::from(a.order);
            let r = match a.method {
                Method::NtupleGeneral => general_e_bound(xs, ys, e()?.entries(), a.p, order, &tol)?,
                Method::NtupleBasisMax => basis_max_bound(xs, ys, a.p, order, &tol)?,
                _ => mean_bound(xs, ys, a.p, order, &tol)?,
            };
            let base = r.base.clone();
            ntuple = Some(r);
            vec![base]
        }
    };
    for r in &reports {
        writeln!(out, "{r}").map_err(io_err)?;
    }
    if let Some(Some(m)) = ntuple.as_ref().map(|n| n.argmax_m) {
        writeln!(out, "argmax_m = {m}").map_err(io_err)?;
    }
    if let Some(path) = &a.json {
        let name = a
            .method
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        write_json(
            path,
            &BoundOutput {
                method: name,
                reports: &reports,
                ntuple: ntuple.as_ref(),
            },
        )?;
    }
    Ok(if reports.iter().all(|r| r.satisfied) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

#[derive(Serialize)]
struct PairValue {
    first: usize,
    second: usize,
    #[serde(serialize_with = "numfmt::f64_17")]
    value: f64,
}

fn run_metrics(a: &MetricsArgs, out: &mut dyn Write) -> Result<i32> {
    let tol = a.tol.tolerance()?;
    let file = load(&a.input, a.format)?;
    let vs = &file.vectors;
    if a.triples {
        let kind: TriangleKind = a.kind.parse()?;
        if vs.len() % 3 != 0 {
            return Err(Error::param(format!(
                "{} vectors do not form triples",
                vs.len()
            )));
        }
        let mut reports = Vec::new();
        for t in vs.chunks(3) {
            let r = triangle_check(kind, &t[0], &t[1], &t[2], a.p, &tol)?;
            writeln!(out, "{r}").map_err(io_err)?;
            reports.push(r);
        }
        if let Some(path) = &a.json {
            write_json(path, &reports)?;
        }
        return Ok(if reports.iter().all(|r| r.satisfied) {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        });
    }
    let kind = PairKind::from_str(&a.kind, true).map_err(|_| {
        Error::param(format!(
            "unknown pair kind '{}' (dp|deltap|psi|phi)",
            a.kind
        ))
    })?;
    if vs.len() % 2 != 0 {
        return Err(Error::param(format!(
            "{} vectors do not form pairs",
            vs.len()
        )));
    }
    let mut values = Vec::new();
    for (i, pair) in vs.chunks(2).enumerate() {
        let (x, y) = (&pair[0], &pair[1]);
        let value = match kind {
            PairKind::Dp => d_p(x, y, a.p)?,
            PairKind::Deltap => delta_p(x, y, a.p)?,
            PairKind::Psi => angle(x, y, AngleKind::Psi)?.radians,
            PairKind::Phi => angle(x, y, AngleKind::Phi)?.radians,
        };
        writeln!(out, "{:>6} {:>6} {}", 2 * i, 2 * i + 1, sig17(value)).map_err(io_err)?;
        values.push(PairValue {
            first: 2 * i,
            second: 2 * i + 1,
            value,
        });
    }
    if let Some(path) = &a.json {
        write_json(path, &values)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct QueryResult {
    query: usize,
    neighbors: Vec<Neighbor>,
}

fn run_index(c: &IndexCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        IndexCommand::Build {
            input,
            format,
            p,
            out: path,
        } => {
            let file = load(input, *format)?;
            let idx = VpIndex::build(&file.vectors, *p)?;
            idx.save(path)?;
            writeln!(
                out,
                "indexed {} points of dim {} (p = {})",
                idx.len(),
                file.dim,
                sig17(*p)
            )
            .map_err(io_err)?;
            Ok(EXIT_OK)
        }
        IndexCommand::Nn {
            index,
            query,
            k,
            json,
        } => {
            let idx = VpIndex::load(index)?;
            let qs = parse_vectors(query, None)?;
            let mut results = Vec::new();
            for (i, q) in qs.vectors.iter().enumerate() {
                results.push(QueryResult {
                    query: i,
                    neighbors: idx.query_nn(q, *k)?,
                });
            }
            print_results(&results, out, json.as_deref())
        }
        IndexCommand::Range {
            index,
            query,
            r,
            json,
        } => {
            let idx = VpIndex::load(index)?;
            let qs = parse_vectors(query, None)?;
            let mut results = Vec::new();
            for (i, q) in qs.vectors.iter().enumerate() {
                results.push(QueryResult {
                    query: i,
                    neighbors: idx.query_range(q, *r)?,
                });
            }
            print_results(&results, out, json.as_deref())
        }
    }
}

fn print_results(results: &[QueryResult], out: &mut dyn Write, json: Option<&Path>) -> Result<i32> {
    for res in results {
        for n in &res.neighbors {
            writeln!(out, "{:>6} {:>8} {}", res.query, n.id, sig17(n.distance)).map_err(io_err)?;
        }
    }
    if let Some(path) = json {
        write_json(path, results)?;
    }
    Ok(EXIT_OK)
}

fn run_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let config = TrialConfig {
        dims: a.dims.clone(),
        trials_per_dim: a.trials,
        seed: a.seed,
        p_values: a.p.clone(),
        scalar_field: a.field,
        tol: a.tol.tolerance()?,
    };
    let exec = if a.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let report = run_suite_with(&config, exec)?;
    print_suite(&report, out).map_err(io_err)?;
    if let Some(path) = &a.json {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn opt17(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), sig17)
}

pub fn print_suite(r: &SuiteReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<28} {:>9} {:>5} {:>5} {:>6} {:>8} {:>9} {:>24} {:>24}",
        "family",
        "trials",
        "viol",
        "disag",
        "errors",
        "equal",
        "degen",
        "worst_gap",
        "max_tightness"
    )?;
    for f in &r.families {
        writeln!(
            out,
            "{:<28} {:>9} {:>5} {:>5} {:>6} {:>8} {:>9} {:>24} {:>24}",
            f.family,
            f.trials,
            f.violations,
            f.disagreements,
            f.errors,
            f.equality_hits,
            f.degenerate_trials,
            opt17(f.worst_gap),
            opt17(f.max_tightness)
        )?;
    }
    writeln!(
        out,
        "trials={} confirmed_violations={} disagreements={} errors={} elapsed={:.3}s",
        r.total_trials, r.confirmed_violations, r.disagreements, r.errors, r.elapsed
    )
}
