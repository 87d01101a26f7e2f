use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dcdlab::constructions::{
    convex_family, dcd_construction, e3_counterexample, is_sidon, sidon_greedy, sidon_modular,
    ConvexKind, SidonMethod,
};
use dcdlab::experiment::{
    self, parse_sizes, ExperimentConfig, Family, OutputFormat, SearchConfig, VerifyCheck,
};
use dcdlab::record::{self, Threshold, VerificationRecord};
use dcdlab::search::{AnnealSchedule, SearchMethod};
use dcdlab::setfile::{read_set_file, write_set_file};
use dcdlab::sets::{has_distinct_consecutive_differences, is_convex, GroundSet};
use dcdlab::Error;

#[derive(Parser)]
#[command(
    name = "dcdlab",
    version,
    about = "Sumsets of sets with distinct consecutive differences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a set family and write it in set-file format.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Measure sumsets, difference sets and energies of sets.
    Measure(MeasureArgs),
    /// Run a verification sweep; exits 1 if any assertion fails.
    Verify(VerifyArgs),
    /// Search for sets with distinct consecutive differences and small |A+A|.
    Search(SearchArgs),
    /// Fit power-law exponents to a JSON-lines record file.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SidonKind {
    Greedy,
    Modular,
}

#[derive(Subcommand)]
enum Construct {
    Sidon {
        #[arg(long, value_enum, default_value = "greedy")]
        method: SidonKind,
        /// Number of elements (the prime p for the modular method).
        #[arg(long)]
        size: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eulerian-circuit construction: writes A.txt, B.txt and S.txt.
    Dcd {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        method: SidonKind,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Convex {
        /// squares, power:N or random-gaps.
        #[arg(long, default_value = "squares")]
        kind: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k*[k/10] ∪ (k+1)*[k/10].
    E3 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct MeasureArgs {
    /// Set file to measure; otherwise --family and --k are used.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "squares")]
    family: String,
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// thm1, pigeonhole, thm2, thm3, prop-conv, tightness, energy-identity, theorem5.
    check: String,
    /// Instance family; defaults to random.
    #[arg(long)]
    family: Option<String>,
    /// Sizes: n, a,b,c or a..b[:step].
    #[arg(long)]
    k: Option<String>,
    /// Alias of --k for the Eulerian construction parameter.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    max_b: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Constant c for the checked inequality: p/q, or sq:n/d for c^2.
    #[arg(long)]
    threshold_c: Option<String>,
    #[arg(long)]
    good_constant: Option<u64>,
    #[arg(long)]
    budget: Option<u128>,
    /// Load the full configuration from JSON; other flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the effective configuration as JSON.
    #[arg(long)]
    save_config: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: String,
    #[arg(long)]
    max_gap: i64,
    #[arg(long, value_enum, default_value = "exhaustive")]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    restarts: Option<u32>,
    #[arg(long)]
    chains: Option<u32>,
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exhaustive,
    Anneal,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON-lines records.
    #[arg(long)]
    input: PathBuf,
    /// Quantity name, or "measured" for the headline value.
    #[arg(long, default_value = "measured")]
    quantity: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(Error::ResourceLimit { .. } | Error::BudgetExceeded { .. }) => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { what } => construct(what).map(|_| ExitCode::SUCCESS),
        Command::Measure(args) => measure(args).map(|_| ExitCode::SUCCESS),
        Command::Verify(args) => verify(args),
        Command::Search(args) => search(args).map(|_| ExitCode::SUCCESS),
        Command::Report(args) => report(args).map(|_| ExitCode::SUCCESS),
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn summarize(name: &str, set: &GroundSet) {
    eprintln!(
        "{name}: size={} min={} max={} convex={} dcd={} sidon={}",
        set.len(),
        set.min(),
        set.max(),
        is_convex(set),
        has_distinct_consecutive_differences(set),
        is_sidon(set)
    );
}

fn write_or_print(set: &GroundSet, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => write_set_file(p, set, &[])?,
        None => print!("{}", dcdlab::setfile::format_set(set, &[])),
    }
    Ok(())
}

fn construct(what: Construct) -> anyhow::Result<()> {
    match what {
        Construct::Sidon { method, size, out } => {
            let s = match method {
                SidonKind::Greedy => sidon_greedy(size as usize)?,
                SidonKind::Modular => sidon_modular(size)?,
            };
            summarize("S", &s);
            write_or_print(&s, out.as_deref())
        }
        Construct::Dcd { m, method, out } => {
            let method = match method {
                SidonKind::Greedy => SidonMethod::Greedy,
                SidonKind::Modular => SidonMethod::Modular,
            };
            let inst = dcd_construction(m, &method)?;
            summarize("A", &inst.a);
            summarize("B", &inst.b);
            summarize("S", &inst.sidon);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    write_set_file(&dir.join("A.txt"), &inst.a, &[])?;
                    write_set_file(&dir.join("B.txt"), &inst.b, &[])?;
                    write_set_file(&dir.join("S.txt"), &inst.sidon, &[])?;
                }
                None => {
                    println!("# A");
                    write_or_print(&inst.a, None)?;
                    println!("# B");
                    write_or_print(&inst.b, None)?;
                }
            }
            Ok(())
        }
        Construct::Convex { kind, k, seed, out } => {
            let kind = match kind.as_str() {
                "squares" => ConvexKind::Squares,
                "random-gaps" => ConvexKind::RandomGaps(seed),
                other => match other.strip_prefix("power:").map(str::parse) {
                    Some(Ok(a)) => ConvexKind::Power(a),
                    _ => anyhow::bail!(Error::InvalidParameter(format!(
                        "unknown convex kind {other:?}"
                    ))),
                },
            };
            let a = convex_family(kind, k)?;
            summarize("A", &a);
            write_or_print(&a, out.as_deref())
        }
        Construct::E3 { k, out } => {
            let a = e3_counterexample(k)?;
            summarize("A", &a);
            write_or_print(&a, out.as_deref())
        }
    }
}

fn render(records: &[VerificationRecord], format: Format) -> String {
    match format {
        Format::Csv => record::to_csv(records),
        Format::Jsonl => record::to_jsonl(records),
    }
}

fn measure(args: MeasureArgs) -> anyhow::Result<()> {
    let records = match &args.input {
        Some(path) => {
            let a = read_set_file(path)?;
            vec![experiment::measure_set(&a, "file")?]
        }
        None => {
            let cfg = ExperimentConfig {
                command: "measure".into(),
                family: args.family.parse()?,
                sizes: parse_sizes(args.k.as_deref().unwrap_or(""))?,
                seed: args.seed,
                ..Default::default()
            };
            experiment::run_measure(&cfg)?
        }
    };
    emit(
        args.output.out.as_deref(),
        &render(&records, args.output.format),
    )
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let check: VerifyCheck = args.check.parse()?;
    let mut cfg = match &args.config {
        Some(p) => serde_json::from_slice(&fs::read(p)?)?,
        None => ExperimentConfig::default(),
    };
    cfg.command = format!("verify {}", args.check);
    if let Some(f) = args.family.as_deref() {
        cfg.family = f.parse::<Family>()?;
    }
    if let Some(sizes) = args.k.as_deref().or(args.m.as_deref()) {
        cfg.sizes = parse_sizes(sizes)?;
    }
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.max_k {
        cfg.max_k = v;
    }
    if let Some(v) = args.max_b {
        cfg.max_b = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.good_constant {
        cfg.good_constant = v;
    }
    if let Some(v) = args.budget {
        cfg.budget = v;
    }
    if let Some(c) = args.threshold_c.as_deref() {
        let t = Threshold::parse(c)?;
        match check {
            VerifyCheck::Thm2 => cfg.thresholds.thm2 = t,
            VerifyCheck::Thm3 => cfg.thresholds.thm3 = t,
            _ => cfg.thresholds.thm1 = t,
        }
    }
    cfg.format = match args.output.format {
        Format::Csv => OutputFormat::Csv,
        Format::Jsonl => OutputFormat::Jsonl,
    };
    if let Some(p) = &args.save_config {
        fs::write(p, serde_json::to_string_pretty(&cfg)? + "\n")?;
    }
    let records = experiment::run_verify(check, &cfg)?;
    emit(
        args.output.out.as_deref(),
        &render(&records, args.output.format),
    )?;
    let failed = records.iter().filter(|r| r.failed()).count();
    eprintln!("{} records, {} failed", records.len(), failed);
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn search(args: SearchArgs) -> anyhow::Result<()> {
    let mut schedule = AnnealSchedule::default();
    if let Some(v) = args.iterations {
        schedule.iterations = v;
    }
    if let Some(v) = args.restarts {
        schedule.restarts = v;
    }
    if let Some(v) = args.chains {
        schedule.chains = v;
    }
    let mut cfg = ExperimentConfig {
        command: "search".into(),
        sizes: parse_sizes(&args.k)?,
        seed: args.seed,
        ..Default::default()
    };
    cfg.budget = match args.budget {
        Some(b) => b,
        None if std::env::var_os(dcdlab::experiment::BUDGET_ENV).is_some() => cfg.budget,
        None => dcdlab::search::DEFAULT_EXHAUSTIVE_BUDGET,
    };
    let scfg = SearchConfig {
        method: match args.method {
            Method::Exhaustive => SearchMethod::Exhaustive,
            Method::Anneal => SearchMethod::Anneal,
        },
        max_gap: args.max_gap,
        schedule,
    };
    let witnesses = experiment::run_search(&cfg, &scfg)?;
    let mut text = String::new();
    for w in &witnesses {
        eprintln!("k={} |A+A|={} A={}", w.set.len(), w.objective, w.set);
        text.push_str(&w.to_json());
        text.push('\n');
    }
    emit(args.out.as_deref(), &text)
}

fn report(args: ReportArgs) -> anyhow::Result<()> {
    let records = record::parse_jsonl(&fs::read(&args.input)?)?;
    let rows = experiment::run_report(&records, &args.quantity)?;
    let mut text = String::from("check,family,quantity,points,slope,intercept,residual\n");
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.check,
            r.family,
            r.quantity,
            r.fit.points,
            r.fit.slope,
            r.fit.intercept,
            r.fit.residual
        ));
    }
    emit(args.out.as_deref(), &text)
}
