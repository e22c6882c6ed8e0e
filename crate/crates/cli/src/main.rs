use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use isofol_core::catalog::{self, Format};
use isofol_core::liealg::{chevalley_basis, foliate_exact, FormMode};
use isofol_core::realforms::{parse_family, RealForm, Tolerances, TOLERANCE_RANGE};
use isofol_core::rootsys::{build_root_system, maximal_strongly_orthogonal_sets, parse_root, Root, Series, SigmaMethod};
use isofol_core::suites::{run_suite, Suite, SuiteConfig, Target};
use isofol_core::Error;

#[derive(Parser)]
#[command(name = "isofol", version, about = "Isotropic foliations of regular orbits of real semisimple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the orbit and foliation data tables.
    Tables(TablesArgs),
    /// Build and check the foliation of one orbit type.
    Foliate(FoliateArgs),
    /// Run a property suite and print pass/fail counts.
    Verify(VerifyArgs),
    /// List maximal sets of strongly orthogonal real roots.
    Admissible(AdmissibleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Complex,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Greedy,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Auto,
    Exact,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Isotropy,
    Darboux,
    Ruling,
    Cayley,
    SigmaOracle,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(value_enum)]
    which: Which,
    /// Largest classical rank in the complex table.
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
    /// One complex row per series, at its least rank.
    #[arg(long)]
    minimal: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// sl_R, su, so, sp_R, su_star, so_star, sp, split, or complex.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Simple type series for `split` and `complex` (A, B, C, D, E, F, G).
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Clone)]
struct TolArgs {
    #[arg(long)]
    tol_cluster: Option<f64>,
    #[arg(long)]
    tol_verify: Option<f64>,
    #[arg(long)]
    tol_closure: Option<f64>,
    #[arg(long)]
    tol_structure: Option<f64>,
}

#[derive(Args)]
struct FoliateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Orbit type: `0`, or a comma list of positive real roots such as `a1` or `a1,a1+2a2`.
    #[arg(long = "type", default_value = "0")]
    orbit_type: String,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    method: Method,
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    engine: EngineChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteName,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct AdmissibleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Stop after this many sets.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    tol: TolArgs,
}

/// `Usage` maps to exit code 2, `Failed` to 1.
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidType { .. }
            | Error::InvalidFamily(_)
            | Error::Unsupported(_)
            | Error::Membership(_)
            | Error::NotPositive(_)
            | Error::Admissibility(_)
            | Error::OracleTooLarge { .. } => Failure::Usage(e.to_string()),
            other => Failure::Failed(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn tolerances(t: &TolArgs) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    let (lo, hi) = TOLERANCE_RANGE;
    for (name, value, slot) in [
        ("--tol-cluster", t.tol_cluster, &mut tol.cluster),
        ("--tol-verify", t.tol_verify, &mut tol.verify),
        ("--tol-closure", t.tol_closure, &mut tol.closure),
        ("--tol-structure", t.tol_structure, &mut tol.structure),
    ] {
        if let Some(v) = value {
            if !(lo..=hi).contains(&v) {
                return Err(Failure::Usage(format!("{name} {v:e} is outside [{lo:e}, {hi:e}]")));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn target(f: &FamilyArgs) -> Result<Target, Failure> {
    let key = f.family.as_deref().ok_or_else(|| Failure::Usage("--family is required".into()))?;
    match key {
        "split" | "complex" => {
            let series: Series = f
                .series
                .as_deref()
                .ok_or_else(|| Failure::Usage(format!("--family {key} needs --series")))?
                .parse()?;
            let rank = f.rank.ok_or_else(|| Failure::Usage(format!("--family {key} needs --rank")))?;
            if series == Series::BC {
                return Err(Failure::Usage("BC is not the root system of a Lie algebra".into()));
            }
            build_root_system(series, rank)?;
            Ok(if key == "split" { Target::Split(series, rank) } else { Target::Complex(series, rank) })
        }
        _ => Ok(Target::Numeric(parse_family(key, f.n, f.p, f.q)?)),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn tables(a: &TablesArgs) -> Outcome {
    let table = match a.which {
        Which::Complex if a.minimal => catalog::complex_table_minimal()?,
        Which::Complex => catalog::complex_table(a.max_rank)?,
        Which::Real => catalog::real_table_default()?,
    };
    let format = match a.format {
        TableFormat::Csv => Format::Csv,
        TableFormat::Json => Format::Json,
        TableFormat::Markdown => Format::Markdown,
    };
    catalog::emit(&table, format, a.output.as_deref()).map_err(|e| Failure::Failed(e.to_string()))?;
    let unexpected = catalog::unexpected_discrepancies(&table);
    for (row, col) in &unexpected {
        eprintln!("unexpected discrepancy: {row} {}", col.header());
    }
    Ok(unexpected.is_empty())
}

fn parse_type(label: &str, rank: usize) -> Result<Vec<Root>, Failure> {
    let label = label.trim();
    if label == "0" || label.is_empty() {
        return Ok(Vec::new());
    }
    label.split(',').map(|l| parse_root(l, rank).map_err(Failure::from)).collect()
}

fn foliate(a: &FoliateArgs) -> Outcome {
    let tol = tolerances(&a.tol)?;
    let method = match a.method {
        Method::Greedy => SigmaMethod::Greedy,
        Method::Oracle => SigmaMethod::Oracle,
    };
    let mut t = target(&a.family)?;
    if let Target::Numeric(f) = t {
        if a.engine == EngineChoice::Exact {
            let (s, r) = f
                .split_type()
                .ok_or_else(|| Failure::Usage(format!("{f} is not split; the exact engine covers split forms")))?;
            t = Target::Split(s, r);
        }
    } else if a.engine == EngineChoice::Numeric {
        return Err(Failure::Usage(format!("{t} is handled by the exact engine")));
    }
    let (report, sigma) = match t {
        Target::Numeric(f) => {
            let form = RealForm::build_with(f, tol)?;
            let roots = parse_type(&a.orbit_type, form.full.system.rank())?;
            let fol = form.foliate(&roots, method, a.seed)?;
            (fol.report, fol.sigma)
        }
        Target::Split(s, r) | Target::Complex(s, r) => {
            let mode = if matches!(t, Target::Split(..)) { FormMode::Split } else { FormMode::Complexified };
            let sc = chevalley_basis(&build_root_system(s, r)?, mode);
            let roots = parse_type(&a.orbit_type, r)?;
            let fol = foliate_exact(&sc, &roots, method, a.seed)?;
            (fol.report, fol.sigma)
        }
    };
    match a.format {
        ReportFormat::Json => print_json(&json!({ "report": report, "sigma_chain": sigma })),
        ReportFormat::Text => {
            print!("{}", report.to_text());
            for (i, stage) in sigma.stages.iter().enumerate() {
                let names: Vec<String> = stage.iter().map(Root::to_string).collect();
                println!("Sigma_{i}      {{{}}}", names.join(", "));
            }
            println!("result       {}", if report.passed() { "pass" } else { "FAIL" });
        }
    }
    Ok(report.passed())
}

fn verify(a: &VerifyArgs) -> Outcome {
    let suite = match a.suite {
        SuiteName::Isotropy => Suite::Isotropy,
        SuiteName::Darboux => Suite::Darboux,
        SuiteName::Ruling => Suite::Ruling,
        SuiteName::Cayley => Suite::Cayley,
        SuiteName::SigmaOracle => Suite::SigmaOracle,
    };
    let mut cfg = match a.family.family {
        None => SuiteConfig::default_for(suite),
        Some(_) => match target(&a.family)? {
            Target::Numeric(f) => SuiteConfig::for_family(suite, f)?,
            t => SuiteConfig { targets: vec![t], ..SuiteConfig::default_for(suite) },
        },
    };
    cfg.seed = a.seed;
    cfg.tol = tolerances(&a.tol)?;
    let report = run_suite(suite, &cfg)?;
    match a.format {
        ReportFormat::Json => print_json(&json!({
            "suite": suite.to_string(),
            "seed": a.seed,
            "passed": report.passed(),
            "failed": report.failed(),
            "cases": report.cases,
        })),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
    Ok(report.all_passed())
}

fn admissible(a: &AdmissibleArgs) -> Outcome {
    let tol = tolerances(&a.tol)?;
    let t = target(&a.family)?;
    let (sys, reals) = match t {
        Target::Numeric(f) => {
            let form = RealForm::build_with(f, tol)?;
            let reals = form.full.real_positive();
            (form.full.system, reals)
        }
        Target::Split(s, r) => {
            let sys = build_root_system(s, r)?;
            let reals = sys.positives().to_vec();
            (sys, reals)
        }
        // every root of a complex algebra takes non-real values on the compact part of h
        Target::Complex(s, r) => (build_root_system(s, r)?, Vec::new()),
    };
    let (sets, truncated) = maximal_strongly_orthogonal_sets(&sys, &reals, a.limit)?;
    let names = |v: &[Root]| v.iter().map(Root::to_string).collect::<Vec<_>>();
    let f_max = sets.first().map_or(0, Vec::len);
    match a.format {
        ReportFormat::Json => print_json(&json!({
            "algebra": t.to_string(),
            "root_system": sys.name(),
            "real_positive_roots": names(&reals),
            "f_max": f_max,
            "maximal_sets": sets.iter().map(|s| names(s)).collect::<Vec<_>>(),
            "truncated": truncated,
        })),
        ReportFormat::Text => {
            println!("algebra      {t}");
            println!("roots        {}", sys.name());
            println!("real roots   {{{}}}", names(&reals).join(", "));
            println!("|F|_max      {f_max}");
            for s in &sets {
                println!("{{{}}}", names(s).join(", "));
            }
            if truncated {
                println!("(stopped after {} sets)", a.limit);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Tables(a) => tables(a),
        Command::Foliate(a) => foliate(a),
        Command::Verify(a) => verify(a),
        Command::Admissible(a) => admissible(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
