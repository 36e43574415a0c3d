use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cyclohecke::cache::OpCache;
use cyclohecke::combinatorics::{binomial, enumerate_multipartitions, partitions};
use cyclohecke::hecke::{HeckeError, Parameters};
use cyclohecke::ktheory::{self, verify_blocks_in, RestrictionTable};
use cyclohecke::report::{RunParams, Status, VerificationReport};
use cyclohecke::rings::{parse_scalar, Rational, Scalar};
use cyclohecke::verify::{
    check_pbw, pbw_dim, sampled_parameters, suite_hilb_fg06, suite_pairing, suite_q1_gap, ContextSource,
    DEFAULT_BUDGET, DEFAULT_MAX_LEVEL, DEFAULT_SAMPLES,
};

#[derive(Parser, Debug)]
#[command(name = "cyclohecke", version, about = "Exact checks for cyclotomic Hecke algebras and Gieseker fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the geometric and algebraic restriction tables.
    VerifyMain(Opts),
    /// dim Z = dim Z^JM at level one.
    Hilb(Opts),
    /// Central idempotents against residue classes at a root of unity.
    Blocks(Opts),
    /// Invariants of the q = 1 smash product.
    Q1Gap(Opts),
    /// Trace form, cocenter and center-cocenter pairing.
    Pairing(Opts),
    /// Dimensions of the center, JM center and cocenter.
    Center(Opts),
    /// Export the restriction table.
    Table(Opts),
    /// PBW, multipartition and tableau counts.
    Dims(Opts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    ell: Option<u32>,
    /// Multicharge, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    charge: Option<Vec<i64>>,
    /// Exact literals (`3/2`, `zeta_6^2`) or `generic`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<String>,
    #[arg(long = "Q", value_delimiter = ',', allow_hyphen_values = true)]
    big_q: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Largest allowed r^n n!.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Record wall-clock durations in reports.
    #[arg(long)]
    timings: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<HeckeError> for Failure {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::InvalidParameters(_) | HeckeError::Ring(_) => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

type Job = Box<dyn Fn() -> Result<VerificationReport, HeckeError> + Send + Sync>;

enum Spec {
    Generic,
    Exact(Scalar),
}

fn parse_spec(s: &str) -> Result<Spec, Failure> {
    if s == "generic" {
        return Ok(Spec::Generic);
    }
    parse_scalar(s).map(Spec::Exact).map_err(|e| Failure::Usage(e.to_string()))
}

impl Opts {
    fn n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| Failure::Usage("--n is required".into()))
    }

    fn nr(&self) -> Result<(usize, usize), Failure> {
        let (n, r) = (self.n()?, self.r.unwrap_or(1));
        if r == 0 {
            return Err(Failure::Usage("--r must be at least 1".into()));
        }
        self.within_budget(n, r)?;
        Ok((n, r))
    }

    fn within_budget(&self, n: usize, r: usize) -> Result<(), Failure> {
        let dim = (1..=n).try_fold(r.checked_pow(n as u32), |acc, k| Some(acc?.checked_mul(k)));
        match dim.flatten() {
            Some(d) if d <= self.budget => Ok(()),
            _ => Err(Failure::Usage(format!("r^n n! for n={n}, r={r} exceeds the dimension budget {}", self.budget))),
        }
    }

    fn source(&self) -> ContextSource {
        if self.no_cache {
            return ContextSource::uncached();
        }
        match &self.cache_dir {
            Some(dir) => ContextSource::cached(OpCache::new(dir)),
            None => ContextSource::cached(OpCache::from_env_or(default_cache_dir())),
        }
    }

    /// Explicit parameters from `--q`/`--Q`, or sampled ones (flagged `true`)
    /// if either is `generic` or missing.
    fn parameters(&self, n: usize, r: usize) -> Result<(Vec<Parameters>, bool), Failure> {
        let q = match self.q.as_slice() {
            [] => Spec::Generic,
            [one] => parse_spec(one)?,
            _ => return Err(Failure::Usage("expected a single --q value".into())),
        };
        let big_q = self.big_q.iter().map(|s| parse_spec(s)).collect::<Result<Vec<_>, _>>()?;
        let generic = matches!(q, Spec::Generic) || big_q.is_empty() || big_q.iter().any(|s| matches!(s, Spec::Generic));
        if generic {
            return Ok((sampled_parameters(n, r, self.samples, self.seed), true));
        }
        if big_q.len() != r {
            return Err(Failure::Usage(format!("expected {r} --Q values, got {}", big_q.len())));
        }
        let exact = |s: Spec| match s {
            Spec::Exact(v) => v,
            Spec::Generic => unreachable!(),
        };
        Ok((vec![Parameters::new(exact(q), big_q.into_iter().map(exact).collect())?], false))
    }
}

fn default_cache_dir() -> PathBuf {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("cyclohecke")
}

fn jobs_for(command: &Command, o: &Opts) -> Result<Vec<Job>, Failure> {
    let mut jobs: Vec<Job> = Vec::new();
    match command {
        Command::VerifyMain(_) => {
            let pairs: Vec<(usize, usize)> = match (o.n, o.r) {
                (Some(_), _) => vec![o.nr()?],
                (None, r) => {
                    let levels = r.map_or(1..=o.max_level, |r| r..=r);
                    levels.flat_map(|r| (0..).take_while(move |&n| pbw_dim(n, r) <= o.budget).map(move |n| (n, r))).collect()
                }
            };
            for (n, r) in pairs {
                jobs.push(Box::new(move || Ok(ktheory::verify_main_theorem(n, r))));
            }
        }
        Command::Hilb(_) => {
            let (n, _) = o.nr()?;
            if o.r.is_some_and(|r| r != 1) {
                return Err(Failure::Usage("hilb requires --r 1".into()));
            }
            if o.big_q.iter().any(|s| s != "1") {
                return Err(Failure::Usage("hilb specializes Q1 to 1".into()));
            }
            let literals = if o.q.is_empty() { vec!["2".into(), "-1".into(), "zeta_3".into()] } else { o.q.clone() };
            let mut qs = Vec::new();
            for s in &literals {
                if let Spec::Exact(v) = parse_spec(s)? {
                    if v.is_one() {
                        return Err(Failure::Usage("hilb requires q != 1".into()));
                    }
                    qs.push(v);
                }
            }
            let (src, samples, seed) = (o.source(), o.samples, o.seed);
            jobs.push(Box::new(move || suite_hilb_fg06(&src, n, &qs, samples, seed)));
        }
        Command::Blocks(_) => {
            let (n, r) = o.nr()?;
            let ell = o.ell.ok_or_else(|| Failure::Usage("--ell is required".into()))?;
            if ell < 2 {
                return Err(Failure::Usage("--ell must be at least 2".into()));
            }
            let charge = o.charge.clone().unwrap_or_else(|| vec![0; r]);
            if charge.len() != r {
                return Err(Failure::Usage(format!("multicharge has length {}, expected {r}", charge.len())));
            }
            let (src, seed) = (o.source(), o.seed);
            jobs.push(Box::new(move || {
                let ctx = src.build(n, r, Parameters::root_of_unity(ell, &charge))?;
                let mut rep = verify_blocks_in(&ctx, ell, &charge, seed)?;
                rep.absorb(&ctx.check_relations(seed)?);
                Ok(rep)
            }));
        }
        Command::Q1Gap(_) => {
            let n = o.n()?;
            let mut big_q = Vec::new();
            for s in &o.big_q {
                match parse_spec(s)? {
                    Spec::Exact(Scalar::Rat(v)) => big_q.push(v),
                    _ => return Err(Failure::Usage(format!("q1-gap needs rational --Q values, got `{s}`"))),
                }
            }
            if big_q.is_empty() {
                let r = o.r.unwrap_or(2);
                big_q = (0..r as i64).map(|k| Rational::from_integer((k + 2).into())).collect();
            }
            if o.r.is_some_and(|r| r != big_q.len()) {
                return Err(Failure::Usage("--r disagrees with the number of --Q values".into()));
            }
            o.within_budget(n, big_q.len())?;
            let src = o.source();
            jobs.push(Box::new(move || suite_q1_gap(&src, n, &big_q)));
        }
        Command::Pairing(_) => {
            let (n, r) = o.nr()?;
            let (src, trials, samples, seed) = (o.source(), o.trials, o.samples, o.seed);
            jobs.push(Box::new(move || suite_pairing(&src, n, r, trials, samples, seed)));
        }
        Command::Center(_) => {
            let (n, r) = o.nr()?;
            let (all, sampled) = o.parameters(n, r)?;
            for params in all {
                let (src, seed) = (o.source(), o.seed);
                jobs.push(Box::new(move || center_report(&src, n, r, params.clone(), seed, sampled)));
            }
        }
        Command::Dims(_) => {
            let (n, r) = (o.n()?, o.r.unwrap_or(1));
            jobs.push(Box::new(move || Ok(dims_report(n, r))));
        }
        Command::Table(_) => unreachable!("handled separately"),
    }
    Ok(jobs)
}

fn center_report(
    src: &ContextSource,
    n: usize,
    r: usize,
    params: Parameters,
    seed: u64,
    sampled: bool,
) -> Result<VerificationReport, HeckeError> {
    let mut rp = RunParams::nr(n, r);
    rp.specializations.push(params.describe());
    rp.seed = Some(seed);
    let mode = if sampled { "generic (sampled)" } else { "specialized" };
    let mut rep = VerificationReport::new("center", rp).with_mode(mode);
    let ctx = src.build(n, r, params)?;
    rep.absorb(&ctx.check_relations(seed)?);
    rep.set("center_dim", ctx.center_basis()?.len());
    let jm = ctx.jm_center()?;
    rep.set("jm_rank", jm.rank());
    rep.set("cocenter_dim", ctx.cocenter_dim()?);
    rep.set("multipartitions", enumerate_multipartitions(n, r).len());
    Ok(rep)
}

fn dims_report(n: usize, r: usize) -> VerificationReport {
    let mut rep = check_pbw(n, r);
    rep.check = "dims".into();
    rep.set("pbw_dim", pbw_dim(n, r));
    rep.set("multipartitions", enumerate_multipartitions(n, r).len());
    rep.set("partitions", partitions(n).len());
    rep.set("q1_invariant_dim", binomial((n + r).saturating_sub(1) as u64, n as u64));
    rep
}

fn render_table(t: &RestrictionTable) -> String {
    let mut rows = vec![std::iter::once("multipartition".to_string()).chain(t.columns()).collect::<Vec<_>>()];
    for (mp, entries) in t.rows.iter().zip(&t.entries) {
        rows.push(std::iter::once(mp.to_string()).chain(entries.iter().map(|e| e.to_string())).collect());
    }
    aligned(&rows)
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn report_rows(reports: &[VerificationReport]) -> String {
    let mut rows = vec![vec!["status".into(), "check".into(), "n".into(), "r".into(), "mode".into(), "data".into()]];
    for rep in reports {
        let status = match rep.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        let show = |v: Option<usize>| v.map_or("-".into(), |x| x.to_string());
        let data: Vec<String> = rep.data.iter().map(|(k, v)| format!("{k}={v}")).collect();
        rows.push(vec![
            status.into(),
            rep.check.clone(),
            show(rep.params.n),
            show(rep.params.r),
            rep.mode.clone().unwrap_or_else(|| "-".into()),
            data.join(" "),
        ]);
    }
    aligned(&rows)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let o = match &cli.command {
        Command::VerifyMain(o)
        | Command::Hilb(o)
        | Command::Blocks(o)
        | Command::Q1Gap(o)
        | Command::Pairing(o)
        | Command::Center(o)
        | Command::Table(o)
        | Command::Dims(o) => o,
    };
    if let Command::Table(_) = cli.command {
        let (n, r) = o.nr()?;
        let table = ktheory::restriction_table(n, r);
        match o.format {
            Format::Json => println!("{}", table.to_json()),
            Format::Csv => print!("{}", table.to_csv()),
            Format::Table => print!("{}", render_table(&table)),
        }
        return Ok(true);
    }
    if o.format == Format::Csv {
        return Err(Failure::Usage("csv output is only available for `table`".into()));
    }
    let jobs = jobs_for(&cli.command, o)?;
    let timed = |job: &Job| -> Result<VerificationReport, HeckeError> {
        let start = Instant::now();
        let mut rep = job()?;
        if o.timings {
            rep.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(rep)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.jobs.max(1))
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let reports = pool.install(|| jobs.par_iter().map(timed).collect::<Result<Vec<_>, _>>())?;
    match o.format {
        Format::Json => {
            for rep in &reports {
                println!("{}", rep.to_json_line());
            }
        }
        _ => print!("{}", report_rows(&reports)),
    }
    Ok(reports.iter().all(|r| r.status != Status::Fail))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
