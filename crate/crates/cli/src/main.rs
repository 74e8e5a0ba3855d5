mod doc;

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arith_bertini::arithseek::{sample_multiplicativity, search_with_log, verify_certificate, ArithError, NormFamily, RunLog};
use arith_bertini::bertini::{bad_hyperplane_hypersurface, degree_bound_profile, BertiniError, DEFAULT_M_CHECK};
use arith_bertini::cnsolve::{cn_search, GridSpec, PolyFunction};
use arith_bertini::elimination::{eliminate_projection, EliminationError};
use arith_bertini::exactalg::{format_rational, make_vars};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{
    parse_m_range, poly_from_doc, problem_hash, BadLocusDoc, BiSystemDoc, CertificateDoc, CnDoc, HypersurfaceDoc,
    ProblemDoc, SchemaError,
};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NORM_BUDGET: u8 = 3;
const EXIT_BAD_LOCUS_COVERS: u8 = 4;
const EXIT_BASE_LOCUS: u8 = 5;
const EXIT_VERIFY_FAILED: u8 = 6;
const EXIT_HASH_MISMATCH: u8 = 7;
const EXIT_OTHER: u8 = 8;

const EXIT_CODES: &str = "Exit codes:
  0  success
  1  file could not be read or written
  2  document does not parse or fails validation
  3  no section reached norm < 1 in the level range
  4  the bad-hyperplane locus may cover the whole dual space
  5  a point lies in the base locus of the level
  6  certificate verification failed
  7  certificate belongs to a different problem
  8  any other computation error";

#[derive(Parser)]
#[command(name = "arith-bertini", version, about = "Small smooth sections with certificates", after_help = EXIT_CODES)]
struct Cli {
    /// Overrides the seed recorded in the document.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Inclusive level range `A..B`, overriding the document.
    #[arg(long, global = true, value_parser = parse_range_arg)]
    m_range: Option<RangeInclusive<u32>>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Prints the degree bound profile and P(m) over the level range.
    Bound { problem: PathBuf },
    /// Eliminates a bihomogeneous system, or with `--m` computes the bad
    /// hyperplane locus of a problem's series at level m.
    Badlocus {
        input: PathBuf,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finds a grid point where an oracle polynomial is nonzero.
    Cnsolve { input: PathBuf },
    /// Searches for a small smooth section and writes its certificate.
    Search {
        problem: PathBuf,
        /// Certificate path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run log path (default: stderr).
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Re-checks a certificate against its problem.
    Verify { certificate: PathBuf, problem: PathBuf },
}

fn parse_range_arg(s: &str) -> Result<RangeInclusive<u32>, String> {
    parse_m_range(s).map_err(|e| e.to_string())
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::new(EXIT_PARSE, e.0)
    }
}

fn elimination_code(e: &EliminationError) -> u8 {
    match e {
        EliminationError::ProjectionMayCoverSpace { .. } => EXIT_BAD_LOCUS_COVERS,
        _ => EXIT_OTHER,
    }
}

fn bertini_code(e: &BertiniError) -> u8 {
    match e {
        BertiniError::BadLocusCoversSpace { .. } => EXIT_BAD_LOCUS_COVERS,
        BertiniError::PointInBaseLocus { .. } => EXIT_BASE_LOCUS,
        BertiniError::Elimination(e) => elimination_code(e),
        _ => EXIT_OTHER,
    }
}

fn arith_code(e: &ArithError) -> u8 {
    match e {
        ArithError::NormBudgetNotReached { .. } => EXIT_NORM_BUDGET,
        ArithError::BadLocusCoversSpace { .. } => EXIT_BAD_LOCUS_COVERS,
        ArithError::PointInBaseLocus { .. } | ArithError::ResidueBasePoint { .. } => EXIT_BASE_LOCUS,
        ArithError::Bertini(e) => bertini_code(e),
        _ => EXIT_OTHER,
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn parse_doc<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_IO, e.to_string())),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_problem(cli: &Cli, path: &Path) -> Result<(ProblemDoc, arith_bertini::arithseek::ProblemSpec, String), Failure> {
    let value = read_json(path)?;
    let hash = problem_hash(&value);
    let doc: ProblemDoc = parse_doc(path, value)?;
    let problem = doc.load(cli.m_range.clone(), cli.seed)?;
    Ok((doc, problem, hash))
}

fn cmd_bound(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let (_, problem, _) = load_problem(cli, path)?;
    let prof = degree_bound_profile(&problem.series, DEFAULT_M_CHECK);
    let rows: Vec<(u32, String)> = problem.m_range.clone().map(|m| (m, prof.eval(m as u64).to_string())).collect();
    let out = match cli.format {
        Format::Json => pretty(&json!({
            "d1": prof.d1,
            "d2": prof.d2,
            "n1": prof.n1,
            "kappa": prof.kappa,
            "dim": prof.dim,
            "dprime": prof.dprime,
            "m_check": prof.m_check,
            "degree": prof.degree(),
            "polynomial": prof.format_polynomial(),
            "coefficients": prof.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "table": rows.iter().map(|(m, p)| json!({"m": m, "p": p})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!(
                "D1 = {}\nD2 = {}\nN1 = {}\nkappa = {}\ndim = {}\nD' = {} (checked for m <= {})\ndeg P = {}\nP(m) = {}\n\n{:>4}  P(m)\n",
                prof.d1,
                prof.d2,
                prof.n1,
                prof.kappa,
                prof.dim,
                prof.dprime,
                prof.m_check,
                prof.degree(),
                prof.format_polynomial(),
                "m"
            );
            for (m, p) in &rows {
                s.push_str(&format!("{m:>4}  {p}\n"));
            }
            s
        }
    };
    write_output(None, &out)
}

fn cmd_badlocus(cli: &Cli, path: &Path, m: Option<u32>, out: Option<&Path>) -> Result<(), Failure> {
    let value = read_json(path)?;
    let is_system = value.get("equations").is_some();
    let text = if is_system {
        let doc: BiSystemDoc = parse_doc(path, value)?;
        let sys = doc.load()?;
        let cert = eliminate_projection(&sys, cli.seed.unwrap_or(0))
            .map_err(|e| Failure::new(elimination_code(&e), e.to_string()))?;
        pretty(&HypersurfaceDoc::new(&cert))
    } else {
        let m = m.ok_or_else(|| Failure::new(EXIT_PARSE, "a problem document needs --m"))?;
        let (_, problem, hash) = load_problem(cli, path)?;
        let cert = bad_hyperplane_hypersurface(&problem.series, m, problem.seed)
            .map_err(|e| Failure::new(bertini_code(&e), e.to_string()))?;
        pretty(&BadLocusDoc::new(&cert, hash, problem.series.variety().vars()))
    };
    write_output(out, &text)
}

fn cmd_cnsolve(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let value = read_json(path)?;
    let doc: CnDoc = parse_doc(path, value)?;
    let vars = make_vars(&doc.variables);
    let u = poly_from_doc(&doc.oracle, &vars, "oracle")?;
    if doc.grids.len() != vars.len() {
        return Err(Failure::new(EXIT_PARSE, format!("grids: expected {} coordinate sets, found {}", vars.len(), doc.grids.len())));
    }
    let grid = GridSpec::new(doc.grids.iter().map(|g| g.iter().map(|r| r.0.clone()).collect()).collect());
    let point = cn_search(&PolyFunction(u), &grid, cli.seed.unwrap_or(0)).map_err(|e| Failure::new(EXIT_OTHER, e.to_string()))?;
    let coords: Vec<String> = point.iter().map(format_rational).collect();
    let out = match cli.format {
        Format::Json => pretty(&json!({ "point": coords })),
        Format::Text => format!("({})\n", coords.join(", ")),
    };
    write_output(None, &out)
}

fn log_json(log: &RunLog) -> Value {
    let levels: Vec<Value> = log
        .levels
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "basis_size": r.basis_size,
                "bound_value": r.bound_value.to_string(),
                "oracle_degree": r.oracle_degree,
                "offsets": r.offsets,
                "coefficients": r.coefficients.as_ref().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
                "norm": r.norm.as_ref().map(format_rational),
                "outcome": r.outcome,
            })
        })
        .collect();
    json!({ "levels": levels })
}

fn cmd_search(cli: &Cli, path: &Path, out: Option<&Path>, log_path: Option<&Path>) -> Result<(), Failure> {
    let (_, problem, hash) = load_problem(cli, path)?;
    if matches!(problem.norm, NormFamily::External(_)) {
        let ok = sample_multiplicativity(&problem.norm, &problem.series).map_err(|e| Failure::new(EXIT_OTHER, e.to_string()))?;
        if !ok {
            return Err(Failure::new(EXIT_PARSE, "norm: external norm is not submultiplicative on level-one products"));
        }
    }
    let mut log = RunLog::default();
    let result = search_with_log(&problem, &mut log);
    let log_text = match cli.format {
        Format::Json => pretty(&log_json(&log)),
        Format::Text => log.to_string(),
    };
    match log_path {
        Some(p) => fs::write(p, &log_text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", p.display())))?,
        None => eprint!("{log_text}"),
    }
    let cert = result.map_err(|e| Failure::new(arith_code(&e), e.to_string()))?;
    let doc = CertificateDoc::new(&cert, hash, problem.series.variety().vars());
    write_output(out, &pretty(&doc))
}

fn cmd_verify(cli: &Cli, cert_path: &Path, problem_path: &Path) -> Result<(), Failure> {
    let cert_value = read_json(cert_path)?;
    let cert_doc: CertificateDoc = parse_doc(cert_path, cert_value)?;
    let (_, problem, hash) = load_problem(cli, problem_path)?;
    if cert_doc.problem_hash != hash {
        return Err(Failure::new(
            EXIT_HASH_MISMATCH,
            format!("certificate is for problem {}, this problem is {hash}", cert_doc.problem_hash),
        ));
    }
    let cert = cert_doc.load(problem.series.variety().vars())?;
    let report = verify_certificate(&cert, &problem);
    let out = match cli.format {
        Format::Json => pretty(&json!({
            "passed": report.all_passed(),
            "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })),
        Format::Text => report.to_string(),
    };
    write_output(None, &out)?;
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::new(EXIT_VERIFY_FAILED, format!("failed checks: {}", names.join(", "))))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::new(EXIT_OTHER, e.to_string()))?;
    }
    match &cli.command {
        Cmd::Bound { problem } => cmd_bound(cli, problem),
        Cmd::Badlocus { input, m, out } => cmd_badlocus(cli, input, *m, out.as_deref()),
        Cmd::Cnsolve { input } => cmd_cnsolve(cli, input),
        Cmd::Search { problem, out, log } => cmd_search(cli, problem, out.as_deref(), log.as_deref()),
        Cmd::Verify { certificate, problem } => cmd_verify(cli, certificate, problem),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("error: internal failure: {info}")));
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(EXIT_OTHER),
    }
}
