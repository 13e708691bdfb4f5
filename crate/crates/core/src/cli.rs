//! The `srg-krein` command line.
//!
//! Every command writes to a caller-supplied sink and returns its exit code,
//! so the whole front end runs in-process under test.
//!
//! Exit codes: `0` feasible so far / all checks passed, `1` infeasible /
//! a residual breach, `2` invalid input or usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SrgError};
use crate::feasibility::{verdict, ConditionResult, ConditionSource, FeasibilityVerdict, Limits, Overall, RawParams};
use crate::jordan_oracle::{build_graph, infer_params, parse_adjacency, size_cap, VerifyOptions, VerifyReport};
use crate::krein_engine::{KreinEngine, ProductSpec};
use crate::srg_core::{
    abs_power_coords, enumerate_range_valid, enumerate_valid, spectrum, validate_params, validate_range, SrgParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "srg-krein", version, about = "Feasibility and generalized Krein parameters of strongly regular graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Largest exponent for the single-factor families.
    #[arg(long, default_value_t = 12)]
    pub k_max: u32,
    /// Largest total exponent k+l for the two-factor families.
    #[arg(long, default_value_t = 12)]
    pub kl_max: u32,
    /// Skip multiplicity integrality and classical Krein checks.
    #[arg(long)]
    pub skip_classical: bool,
    /// Also check q² and q³ of the theorem products against [0, 1].
    #[arg(long)]
    pub include_q23_conditions: bool,
    /// Do not require p(p-a-1) = (n-p-1)c.
    #[arg(long)]
    pub no_counting_identity: bool,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            k_max: self.k_max,
            kl_max: self.kl_max,
            classical: !self.skip_classical,
            q23_conditions: self.include_q23_conditions,
            enforce_counting_identity: !self.no_counting_identity,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every necessary condition for one tuple.
    #[command(allow_negative_numbers = true)]
    Check {
        n: i64,
        p: i64,
        a: i64,
        c: i64,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Check every tuple with n <= n-max, in (n, p, a, c) order.
    Scan {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Run the dense-matrix oracle suite on catalog graphs or an adjacency file.
    #[command(group(ArgGroup::new("target").required(true).multiple(true).args(["graphs", "adjacency"])))]
    Verify {
        /// Catalog names: c5, petersen, lattice-3, triangular-5, paley-q.
        graphs: Vec<String>,
        /// Whitespace-separated 0/1 matrix, first token n.
        #[arg(long)]
        adjacency: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        degree_cap: u32,
        #[arg(long)]
        kronecker_k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Exact q¹, q², q³ of one Hadamard product of idempotents.
    #[command(group(ArgGroup::new("spec").required(true).args(["jj", "uv", "plus", "jplus"])))]
    Krein {
        n: i64,
        p: i64,
        a: i64,
        c: i64,
        /// E_j^{∘k}
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        jj: Option<Vec<u32>>,
        /// E_u^{∘k} ∘ E_v^{∘l}
        #[arg(long, num_args = 4, value_names = ["U", "V", "K", "L"])]
        uv: Option<Vec<u32>>,
        /// (E_u + E_v)^{∘k}
        #[arg(long, num_args = 3, value_names = ["U", "V", "K"])]
        plus: Option<Vec<u32>>,
        /// E_j^{∘k} ∘ (E_u + E_v)^{∘l}
        #[arg(long, num_args = 5, value_names = ["J", "U", "V", "K", "L"])]
        jplus: Option<Vec<u32>>,
        #[arg(long)]
        no_counting_identity: bool,
        #[arg(long)]
        json: bool,
    },
    /// Coordinates of |A|^x in the basis {I, A, E₁}.
    #[command(allow_negative_numbers = true)]
    AbsPower {
        n: i64,
        p: i64,
        a: i64,
        c: i64,
        x: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportVerdict {
    FeasibleSoFar,
    Infeasible,
    Invalid,
}

impl ReportVerdict {
    pub fn of(v: &FeasibilityVerdict) -> ReportVerdict {
        if v.failed_validation() {
            ReportVerdict::Invalid
        } else if v.overall == Overall::Infeasible {
            ReportVerdict::Infeasible
        } else {
            ReportVerdict::FeasibleSoFar
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ReportVerdict::FeasibleSoFar => EXIT_OK,
            ReportVerdict::Infeasible => EXIT_FAILED,
            ReportVerdict::Invalid => EXIT_INVALID,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ReportVerdict::FeasibleSoFar => "feasible-so-far",
            ReportVerdict::Infeasible => "infeasible",
            ReportVerdict::Invalid => "invalid",
        }
    }
}

fn source_label(source: ConditionSource) -> &'static str {
    match source {
        ConditionSource::Validation => "validation",
        ConditionSource::PaperTheorem => "paper-theorem",
        ConditionSource::PaperLemma => "paper-lemma",
        ConditionSource::PaperCorollary => "paper-corollary",
        ConditionSource::Classical => "classical",
        ConditionSource::Extension => "extension",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub r: String,
    pub s: String,
    pub r_float: f64,
    pub s_float: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub id: String,
    pub value_exact: String,
    pub value_float: f64,
    pub satisfied: bool,
    pub source: ConditionSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&ConditionResult> for ConditionReport {
    fn from(r: &ConditionResult) -> Self {
        ConditionReport {
            id: r.condition_id.clone(),
            value_exact: r.value.to_string(),
            value_float: r.value.to_f64(),
            satisfied: r.satisfied,
            source: r.source,
            note: r.note.clone(),
        }
    }
}

/// Machine-readable result of `check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub params: RawParams,
    pub discriminant: Option<u64>,
    pub spectrum: Option<SpectrumReport>,
    pub conditions: Vec<ConditionReport>,
    pub overall: ReportVerdict,
    pub first_failure: Option<String>,
}

fn spectrum_report(params: &SrgParams) -> SpectrumReport {
    let spec = spectrum(params);
    SpectrumReport { r: spec.r.to_string(), s: spec.s.to_string(), r_float: spec.r.to_f64(), s_float: spec.s.to_f64() }
}

impl CheckReport {
    pub fn new(v: &FeasibilityVerdict) -> CheckReport {
        CheckReport {
            params: v.params,
            discriminant: v.validated.map(|p| p.discriminant()),
            spectrum: v.validated.as_ref().map(spectrum_report),
            conditions: v.results.iter().map(ConditionReport::from).collect(),
            overall: ReportVerdict::of(v),
            first_failure: v.first_failure.clone(),
        }
    }
}

/// One line of `scan` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub p: u64,
    pub a: u64,
    pub c: u64,
    pub d: u64,
    pub r_float: f64,
    pub s_float: f64,
    pub verdict: ReportVerdict,
    pub first_failure: Option<String>,
}

pub const SCAN_CSV_HEADER: &str = "n,p,a,c,d,r_float,s_float,verdict,first_failure";

impl ScanRow {
    pub fn new(params: &SrgParams, v: &FeasibilityVerdict) -> ScanRow {
        let (n, p, a, c) = params.tuple();
        let spec = spectrum(params);
        ScanRow {
            n,
            p,
            a,
            c,
            d: params.discriminant(),
            r_float: spec.r.to_f64(),
            s_float: spec.s.to_f64(),
            verdict: ReportVerdict::of(v),
            first_failure: v.first_failure.clone(),
        }
    }
}

/// The tuples `scan` visits, in output order.
pub fn scan_tuples(n_max: u64, p: Option<u64>, a: Option<u64>, c: Option<u64>, counting_identity: bool) -> Vec<SrgParams> {
    let all = if counting_identity { enumerate_valid(n_max) } else { enumerate_range_valid(n_max) };
    all.into_iter()
        .filter(|t| p.is_none_or(|p| t.p() == p) && a.is_none_or(|a| t.a() == a) && c.is_none_or(|c| t.c() == c))
        .collect()
}

/// Verdict rows for `tuples`, computed in parallel and returned in input order.
pub fn scan_rows(tuples: &[SrgParams], limits: &Limits) -> Vec<ScanRow> {
    tuples.par_iter().map(|t| ScanRow::new(t, &verdict(RawParams::from(*t), limits))).collect()
}

fn io(e: std::io::Error) -> SrgError {
    SrgError::Parse(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> SrgError {
    SrgError::Parse(format!("csv output failed: {e}"))
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| SrgError::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn json_pretty(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| SrgError::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn cmd_check(raw: RawParams, limits: &Limits, format: FormatArgs, out: &mut impl Write) -> Result<i32> {
    let v = verdict(raw, limits);
    let report = CheckReport::new(&v);
    if format.json {
        json_pretty(out, &report)?;
    } else if format.csv {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["id", "value_exact", "value_float", "satisfied", "source"]).map_err(csv_err)?;
        for c in &report.conditions {
            w.serialize((&c.id, &c.value_exact, c.value_float, c.satisfied, source_label(c.source)))
                .map_err(csv_err)?;
        }
        w.flush().map_err(io)?;
    } else {
        write_check_table(&report, out).map_err(io)?;
    }
    Ok(report.overall.exit_code())
}

fn write_check_table(report: &CheckReport, out: &mut impl Write) -> std::io::Result<()> {
    let RawParams { n, p, a, c } = report.params;
    write!(out, "({n},{p};{a},{c})")?;
    if let (Some(d), Some(s)) = (report.discriminant, &report.spectrum) {
        write!(out, "  d = {d}  r = {} ({:.6})  s = {} ({:.6})", s.r, s.r_float, s.s, s.s_float)?;
    }
    writeln!(out)?;
    let width = report.conditions.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &report.conditions {
        let status = if c.satisfied { "ok  " } else { "FAIL" };
        write!(out, "  {status}  {:<width$}  {:>16.9e}  {:<16}", c.id, c.value_float, source_label(c.source))?;
        if let Some(note) = &c.note {
            write!(out, "  {note}")?;
        }
        writeln!(out)?;
    }
    write!(out, "verdict: {}", report.overall.label())?;
    if let Some(f) = &report.first_failure {
        write!(out, " (first failure: {f})")?;
    }
    writeln!(out)
}

/// Rows are computed a chunk at a time so output starts before the scan ends.
const SCAN_CHUNK: usize = 512;

fn cmd_scan(
    tuples: &[SrgParams],
    limits: &Limits,
    pool: Option<&rayon::ThreadPool>,
    format: FormatArgs,
    out: &mut impl Write,
) -> Result<i32> {
    let compute = |chunk: &[SrgParams]| match pool {
        Some(pool) => pool.install(|| scan_rows(chunk, limits)),
        None => scan_rows(chunk, limits),
    };
    if format.json {
        for chunk in tuples.chunks(SCAN_CHUNK) {
            for row in compute(chunk) {
                json_line(out, &row)?;
            }
        }
    } else {
        // The header goes out with the first row, so an empty scan prints nothing.
        let mut w = csv::Writer::from_writer(out);
        for chunk in tuples.chunks(SCAN_CHUNK) {
            for row in compute(chunk) {
                w.serialize(&row).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_verify(report: &VerifyReport, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{} {} (kronecker k <= {})", report.graph, report.params, report.kronecker_k)?;
    for c in &report.checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        writeln!(out, "  {status}  {:<40}  residual {:.3e}  tol {:.0e}", c.name, c.residual, c.tol)?;
    }
    writeln!(out, "{}: {}", report.graph, if report.passed() { "all checks passed" } else { "residual breach" })
}

fn cmd_verify(
    graphs: &[String],
    adjacency: Option<&PathBuf>,
    opts: &VerifyOptions,
    json: bool,
    out: &mut impl Write,
) -> Result<i32> {
    let mut targets = Vec::new();
    for name in graphs {
        let (adj, params) = build_graph(name)?;
        targets.push((name.to_ascii_lowercase(), adj, params));
    }
    if let Some(path) = adjacency {
        let text = std::fs::read_to_string(path).map_err(|e| SrgError::Parse(format!("{}: {e}", path.display())))?;
        let adj = parse_adjacency(&text)?;
        let params = infer_params(&adj)?;
        targets.push((path.display().to_string(), adj, params));
    }
    let mut reports = Vec::new();
    for (name, adj, params) in &targets {
        reports.push(crate::jordan_oracle::verify_graph(name, adj, params, opts)?);
    }
    if json {
        json_pretty(out, &reports)?;
    } else {
        for r in &reports {
            write_verify(r, out).map_err(io)?;
        }
    }
    Ok(if reports.iter().all(VerifyReport::passed) { EXIT_OK } else { EXIT_FAILED })
}

/// Output of `krein --json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KreinReport {
    pub params: SrgParams,
    pub spec: String,
    pub exact: [String; 3],
    pub float: [f64; 3],
}

fn product_spec(
    jj: Option<&[u32]>,
    uv: Option<&[u32]>,
    plus: Option<&[u32]>,
    jplus: Option<&[u32]>,
) -> Result<ProductSpec> {
    let idx = |x: u32| x as usize;
    let spec = match (jj, uv, plus, jplus) {
        (Some(&[j, k]), ..) => ProductSpec::JJ { j: idx(j), k },
        (_, Some(&[u, v, k, l]), ..) => ProductSpec::UV { u: idx(u), v: idx(v), k, l },
        (_, _, Some(&[u, v, k]), _) => ProductSpec::PlusUV { u: idx(u), v: idx(v), k },
        (.., Some(&[j, u, v, k, l])) => ProductSpec::JPlusUV { j: idx(j), u: idx(u), v: idx(v), k, l },
        _ => return Err(SrgError::Parse("exactly one product spec is required".into())),
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_krein(params: SrgParams, spec: &ProductSpec, json: bool, out: &mut impl Write) -> Result<i32> {
    let triple = KreinEngine::new(params).krein(spec)?;
    let exact: Vec<String> = triple.iter().map(|q| q.to_string()).collect();
    let float = triple.to_f64();
    if json {
        let report = KreinReport {
            params,
            spec: spec.to_string(),
            exact: [exact[0].clone(), exact[1].clone(), exact[2].clone()],
            float,
        };
        json_pretty(out, &report)?;
    } else {
        writeln!(out, "{}", exact.join(", ")).map_err(io)?;
        writeln!(out, "{}, {}, {}", float[0], float[1], float[2]).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_abs_power(params: SrgParams, x: f64, json: bool, out: &mut impl Write) -> Result<i32> {
    let coords = abs_power_coords(&params, x);
    if json {
        json_pretty(out, &coords)?;
    } else {
        writeln!(out, "{}, {}, {}", coords.alpha, coords.beta, coords.gamma).map_err(io)?;
        writeln!(out, "|A|^{x} = alpha*I + beta*A + gamma*E1 for {params}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn params_for(n: i64, p: i64, a: i64, c: i64, counting_identity: bool) -> Result<SrgParams> {
    if counting_identity {
        validate_params(n, p, a, c)
    } else {
        validate_range(n, p, a, c)
    }
}

/// Runs one parsed command. `Err` means invalid input (exit code 2).
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    match &cli.command {
        Command::Check { n, p, a, c, limits, format } => {
            cmd_check(RawParams { n: *n, p: *p, a: *a, c: *c }, &limits.limits(), *format, out)
        }
        Command::Scan { n_max, p, a, c, threads, limits, format } => {
            let limits = limits.limits();
            let tuples = scan_tuples(*n_max, *p, *a, *c, limits.enforce_counting_identity);
            let pool = threads
                .map(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build())
                .transpose()
                .map_err(|e| SrgError::Parse(e.to_string()))?;
            cmd_scan(&tuples, &limits, pool.as_ref(), *format, out)
        }
        Command::Verify { graphs, adjacency, degree_cap, kronecker_k, json } => {
            let opts = VerifyOptions { degree_cap: *degree_cap, kronecker_k: *kronecker_k, tol: 1e-9, size_cap: size_cap() };
            cmd_verify(graphs, adjacency.as_ref(), &opts, *json, out)
        }
        Command::Krein { n, p, a, c, jj, uv, plus, jplus, no_counting_identity, json } => {
            let params = params_for(*n, *p, *a, *c, !no_counting_identity)?;
            let spec = product_spec(jj.as_deref(), uv.as_deref(), plus.as_deref(), jplus.as_deref())?;
            cmd_krein(params, &spec, *json, out)
        }
        Command::AbsPower { n, p, a, c, x, json } => cmd_abs_power(params_for(*n, *p, *a, *c, true)?, *x, *json, out),
    }
}

/// Parses `args` (program name first) and runs; usage errors print to
/// `err` and yield exit code 2, help and version yield 0.
pub fn run_from_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(if code == 0 { &mut *out as &mut dyn Write } else { err }, "{}", e.render());
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
