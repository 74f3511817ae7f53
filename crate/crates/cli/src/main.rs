use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use galton_core::contact::{analyze_extremal, analyze_inner, classify_finite_support, find_contacts, FiniteClassificationRecord, DEFAULT_BUDGET};
use galton_core::fraction::format_fraction;
use galton_core::galton::{chung_feller_pvalue, empirical_index, population_index};
use galton_core::limitlaws::{LimitLawSpec, LimitTerm};
use galton_core::oracle::{enumerate_galton_distribution, exact_index_finite, tie_measure_finite};
use galton_core::samplefile::parse_sample;
use galton_core::verify::{run_convergence_experiment, ExperimentConfig, ExperimentReport};
use galton_core::{content_hash, Distribution, VERSION};

#[derive(Parser)]
#[command(name = "grank", version, about = "Galton rank statistic, dominance index, contact analysis and limit laws")]
struct Cli {
    /// Seed for every random stream; overrides the seed of a config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Replication count; overrides the count of a config file.
    #[arg(long, global = true)]
    reps: Option<usize>,
    /// Worker threads for the Monte Carlo loops.
    #[arg(long, global = true, env = "GALTON_THREADS")]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank statistic of two samples.
    #[command(subcommand)]
    Galton(GaltonCommand),
    /// Dominance index gamma(F, G) of two laws.
    Index(LawPair),
    /// Contact points between two quantile functions.
    #[command(subcommand)]
    Contact(ContactCommand),
    /// Draws from a limit law as CSV.
    LimitSample {
        /// Limit law as a JSON file or inline JSON.
        #[arg(long)]
        spec: String,
    },
    /// Convergence experiment from a JSON config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Directory for per-size scaled draws and limit draws as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum GaltonCommand {
    /// gamma_hat, ties and the rank count of two sample files.
    Compute {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
}

#[derive(clap::Args)]
struct LawPair {
    /// First law as a JSON file or inline JSON.
    #[arg(long = "F")]
    f: String,
    /// Second law as a JSON file or inline JSON.
    #[arg(long = "G")]
    g: String,
}

#[derive(Subcommand)]
enum ContactCommand {
    Analyze {
        #[command(flatten)]
        laws: LawPair,
        /// Classify this level only; 0 and 1 select the end points.
        #[arg(long)]
        t0: Option<f64>,
        /// Probe half-width around `t0`.
        #[arg(long, default_value_t = 0.25)]
        eta: f64,
        /// Grid cells for the sign scan.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact law of the rank count by enumeration.
    GaltonPmf {
        #[arg(long)]
        n: usize,
    },
    /// Exact index, ties and contact classes of two finite laws.
    Index(LawPair),
}

/// Inline JSON, or a path to a JSON file.
fn load_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {what} from {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what}"))
}

fn load_pair(pair: &LawPair) -> Result<(Distribution, Distribution)> {
    Ok((load_json(&pair.f, "F")?, load_json(&pair.g, "G")?))
}

fn read_sample(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_sample(&text).with_context(|| format!("in {}", path.display()))
}

fn header(seed: Option<u64>, hash: &str) -> String {
    match seed {
        Some(s) => format!("# grank {VERSION} seed={s} hash={hash}\n"),
        None => format!("# grank {VERSION} hash={hash}\n"),
    }
}

fn with_meta(body: impl Serialize, seed: Option<u64>, hash: &str) -> Result<String> {
    let mut value = serde_json::to_value(body)?;
    if let Value::Object(map) = &mut value {
        map.insert("version".into(), json!(VERSION));
        map.insert("seed".into(), json!(seed));
        map.insert("input_hash".into(), json!(hash));
    }
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn galton_compute(cli: &Cli, x: &Path, y: &Path) -> Result<String> {
    let (xs, ys) = (read_sample(x)?, read_sample(y)?);
    let hash = content_hash(&(&xs, &ys));
    let report = empirical_index(&xs, &ys)?;
    let p_value = report.galton_count.map(|c| chung_feller_pvalue(c, xs.len() as u64)).transpose()?;
    if cli.json {
        return with_meta(
            json!({ "index": report, "p_value": p_value.as_ref().map(format_fraction) }),
            None,
            &hash,
        );
    }
    let mut s = header(None, &hash);
    writeln!(s, "n = {}, m = {}", report.n, report.m)?;
    writeln!(s, "gamma_hat = {} ({:.6})", report.gamma_hat, report.gamma_hat.to_f64())?;
    writeln!(s, "ties = {}", report.tie_measure)?;
    writeln!(s, "reverse = {}", report.reverse_measure)?;
    if let (Some(c), Some(p)) = (report.galton_count, p_value) {
        writeln!(s, "count = {c}")?;
        writeln!(s, "p_value = {}", format_fraction(&p))?;
    }
    Ok(s)
}

fn index(cli: &Cli, pair: &LawPair) -> Result<String> {
    let (f, g) = load_pair(pair)?;
    let hash = content_hash(&(&f, &g));
    let index = population_index(&f, &g)?;
    let exact = index.exact.as_ref().map(format_fraction);
    if cli.json {
        return with_meta(json!({ "gamma": index.value, "exact": exact }), None, &hash);
    }
    let mut s = header(None, &hash);
    match exact {
        Some(e) => writeln!(s, "gamma = {e} ({:.12})", index.value)?,
        None => writeln!(s, "gamma = {:.12}", index.value)?,
    }
    Ok(s)
}

fn contact_analyze(cli: &Cli, pair: &LawPair, t0: Option<f64>, eta: f64, budget: usize) -> Result<String> {
    let (f, g) = load_pair(pair)?;
    let hash = content_hash(&(&f, &g));
    let (contacts, flat) = match t0 {
        Some(t) if t == 0.0 || t == 1.0 => (vec![analyze_extremal(&f, &g, t, eta)?], Vec::new()),
        Some(t) => (vec![analyze_inner(&f, &g, t, eta)?], Vec::new()),
        None => {
            let a = find_contacts(&f, &g, budget)?;
            (a.contacts, a.flat_segments)
        }
    };
    let terms: Vec<Option<LimitTerm>> = contacts.iter().map(|c| LimitTerm::from_contact(c).ok()).collect();
    let finite = match (f.as_finite(), g.as_finite()) {
        (Some(a), Some(b)) => Some(FiniteClassificationRecord::from(&classify_finite_support(a, b))),
        _ => None,
    };
    if cli.json {
        let body = json!({ "contacts": contacts, "limit_terms": terms, "flat_segments": flat, "finite": finite });
        return with_meta(body, None, &hash);
    }
    let mut s = header(None, &hash);
    if contacts.is_empty() {
        writeln!(s, "no contact points")?;
    }
    for c in &contacts {
        write!(s, "t0 = {:.9} {:?} {:?} {:?}", c.t0, c.position, c.class, c.source)?;
        for (name, fit) in [("left", c.left), ("right", c.right)] {
            if let Some(fit) = fit {
                write!(s, " {name}: r = {:.4}, C = {:.4}", fit.r_snapped, fit.c)?;
            }
        }
        writeln!(s)?;
    }
    for (a, b) in &flat {
        writeln!(s, "flat segment ({a}, {b})")?;
    }
    Ok(s)
}

fn limit_sample(cli: &Cli, spec: &str) -> Result<String> {
    let law: LimitLawSpec = load_json(spec, "limit law")?;
    law.validate()?;
    let seed = cli.seed.unwrap_or(0);
    let reps = cli.reps.unwrap_or(1000);
    let draws = law.sample(reps, seed)?;
    let mut s = header(Some(seed), &law.hash());
    s.push_str("value\n");
    for d in draws {
        writeln!(s, "{d}")?;
    }
    Ok(s)
}

fn write_csv(dir: &Path, report: &ExperimentReport) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let head = header(Some(report.seed), &report.config_hash);
    let mut samples = head.clone() + "n,m,rep,value\n";
    for size in &report.sizes {
        for (k, v) in size.samples.iter().enumerate() {
            writeln!(samples, "{},{},{k},{v}", size.n, size.m)?;
        }
    }
    fs::write(dir.join("samples.csv"), samples)?;
    if !report.limit_samples.is_empty() {
        let mut limit = head + "rep,value\n";
        for (k, v) in report.limit_samples.iter().enumerate() {
            writeln!(limit, "{k},{v}")?;
        }
        fs::write(dir.join("limit.csv"), limit)?;
    }
    Ok(())
}

fn verify(cli: &Cli, config: &Path, csv: Option<&Path>) -> Result<String> {
    let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(reps) = cli.reps {
        cfg.reps = reps;
    }
    let (report, timing) = run_convergence_experiment(&cfg)?;
    eprintln!(
        "timing: simulation {:.2}s, limit draws {:.2}s",
        timing.simulate_seconds, timing.limit_seconds
    );
    if let Some(dir) = csv {
        write_csv(dir, &report)?;
    }
    if cli.json || cli.out.is_some() {
        return Ok(serde_json::to_string_pretty(&report)? + "\n");
    }
    let mut s = header(Some(report.seed), &report.config_hash);
    writeln!(s, "centering gamma = {:.9}", report.centering)?;
    writeln!(s, "{:>7} {:>7} {:>10} {:>10} {:>10} {:>8} {:>8}", "n", "m", "mean", "variance", "iqr", "ks", "w1")?;
    for r in &report.sizes {
        let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
        writeln!(
            s,
            "{:>7} {:>7} {:>10.5} {:>10.5} {:>10.5} {:>8} {:>8}",
            r.n,
            r.m,
            r.summary.mean,
            r.summary.variance,
            r.raw_iqr,
            opt(r.ks),
            opt(r.wasserstein1)
        )?;
    }
    match (&report.rate, &report.rate_note) {
        (Some(rate), _) => writeln!(
            s,
            "rate slope = {:.4} (se {:.4}, 95% CI [{:.4}, {:.4}])",
            rate.slope, rate.stderr, rate.ci95.0, rate.ci95.1
        )?,
        (None, Some(note)) => writeln!(s, "no rate: {note}")?,
        (None, None) => {}
    }
    Ok(s)
}

fn oracle_pmf(cli: &Cli, n: usize) -> Result<String> {
    let pmf: Vec<String> = enumerate_galton_distribution(n)?.iter().map(format_fraction).collect();
    let hash = content_hash(&n);
    if cli.json {
        return with_meta(json!({ "n": n, "pmf": pmf }), None, &hash);
    }
    let mut s = header(None, &hash);
    for (k, p) in pmf.iter().enumerate() {
        writeln!(s, "{k} {p}")?;
    }
    Ok(s)
}

fn oracle_index(cli: &Cli, pair: &LawPair) -> Result<String> {
    let (f, g) = load_pair(pair)?;
    let (Some(a), Some(b)) = (f.as_finite(), g.as_finite()) else {
        bail!("the exact oracle needs two finite-support laws, got {} and {}", f.name(), g.name());
    };
    let hash = content_hash(&(&f, &g));
    let gamma = format_fraction(&exact_index_finite(a, b));
    let ties = format_fraction(&tie_measure_finite(a, b));
    let classes = FiniteClassificationRecord::from(&classify_finite_support(a, b));
    if cli.json {
        return with_meta(json!({ "gamma": gamma, "ties": ties, "contacts": classes }), None, &hash);
    }
    let mut s = header(None, &hash);
    writeln!(s, "gamma = {gamma}")?;
    writeln!(s, "ties = {ties}")?;
    let list = |v: &[galton_core::fraction::Fraction]| v.iter().map(|f| format_fraction(&f.0)).collect::<Vec<_>>().join(" ");
    writeln!(s, "horizontal: {}", list(&classes.horizontal))?;
    writeln!(s, "vertical: {}", list(&classes.vertical))?;
    writeln!(s, "upper: {}", list(&classes.upper))?;
    writeln!(s, "lower: {}", list(&classes.lower))?;
    Ok(s)
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let output = match &cli.command {
        Command::Galton(GaltonCommand::Compute { x, y }) => galton_compute(cli, x, y)?,
        Command::Index(pair) => index(cli, pair)?,
        Command::Contact(ContactCommand::Analyze { laws, t0, eta, budget }) => contact_analyze(cli, laws, *t0, *eta, *budget)?,
        Command::LimitSample { spec } => limit_sample(cli, spec)?,
        Command::Verify { config, csv } => verify(cli, config, csv.as_deref())?,
        Command::Oracle(OracleCommand::GaltonPmf { n }) => oracle_pmf(cli, *n)?,
        Command::Oracle(OracleCommand::Index(pair)) => oracle_index(cli, pair)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, output).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
