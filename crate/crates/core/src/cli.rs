//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure / I/O / malformed input,
//! 2 bad configuration, 3 size or work cap exceeded, 4 search or sampling
//! budget exhausted.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::codes::{plan_random, plan_rs, RandomPlanConfig, DEFAULT_ATTEMPTS};
use crate::error::{invalid, Error, Result};
use crate::hash::{HashFunction, HashOptions, ReplacementMode};
use crate::oa::{
    build_oa, build_oa_streaming, bush_oa, product_oa, rao_bound, read_oa_csv, read_oa_text,
    BuildPlan, ExportFormat, OaWriter, OrthogonalArray, DEFAULT_CELL_CAP,
};
use crate::primes::{factorize, prime_in_ap, prime_power, PrimeSearchConfig, SearchMode};
use crate::verify::{verify_oa, DEFAULT_WORK_CAP};

#[derive(Debug, Parser)]
#[command(name = "orthoarray", version, about = "Orthogonal arrays and t-universal hashing for any alphabet size")]
pub struct Cli {
    /// Worker threads for parallel construction and verification (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct an orthogonal array and write it to a file.
    Build(BuildArgs),
    /// Check an array file exhaustively at a given strength.
    Verify(VerifyArgs),
    /// Print the Rao lower bound on the number of rows.
    Rao(RaoArgs),
    /// Create and evaluate t-universal hash functions.
    #[command(subcommand)]
    Hash(HashCommand),
    /// Find a prime in an arithmetic progression.
    Prime(PrimeArgs),
    /// Compare array sizes across constructions.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeChoice {
    Rs,
    Random,
    Bush,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatChoice {
    Text,
    Csv,
}

impl From<FormatChoice> for ExportFormat {
    fn from(f: FormatChoice) -> Self {
        match f {
            FormatChoice::Text => ExportFormat::Text,
            FormatChoice::Csv => ExportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    /// Alphabet size.
    #[arg(long)]
    pub n: u64,
    /// Number of columns.
    #[arg(long)]
    pub m: usize,
    /// Strength.
    #[arg(long)]
    pub t: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum, default_value = "rs")]
    pub code: CodeChoice,
    /// Seed for the random-code path.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Field prime for the random-code path instead of the (me/t)^3 bound.
    #[arg(long)]
    pub p_override: Option<u64>,
    /// Attempt budget for each rejection-sampling loop.
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
    pub max_attempts: u32,
    /// Output file; standard output when absent (the summary then goes to standard error).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatChoice,
    /// Write 0-based symbols (CSV only).
    #[arg(long)]
    pub zero_based: bool,
    /// Emit a column header line (CSV only).
    #[arg(long)]
    pub csv_header: bool,
    /// Print the plan and predicted size without building.
    #[arg(long)]
    pub dry_run: bool,
    /// Refuse arrays with more than this many cells.
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    pub max_cells: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportChoice {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub report: ReportChoice,
    /// Input format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatChoice,
    /// Alphabet size for CSV input (default: largest entry).
    #[arg(long)]
    pub n: Option<u64>,
    /// CSV input uses 0-based symbols.
    #[arg(long)]
    pub zero_based: bool,
    #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
    pub max_work: u128,
}

#[derive(Debug, Clone, Args)]
pub struct RaoArgs {
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    Scan,
    Sample,
}

impl From<ModeChoice> for SearchMode {
    fn from(m: ModeChoice) -> Self {
        match m {
            ModeChoice::Scan => SearchMode::Scan,
            ModeChoice::Sample => SearchMode::Sample,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReplacementChoice {
    Lazy,
    Derived,
}

#[derive(Debug, Subcommand)]
pub enum HashCommand {
    /// Draw a new function and serialize it.
    New {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; hex on standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "scan")]
        prime_search: ModeChoice,
        #[arg(long, value_enum, default_value = "lazy")]
        replacement: ReplacementChoice,
    },
    /// Evaluate a stored function at one input (the file is updated if a replacement is drawn).
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: u64,
    },
    /// Evaluate a stored function at every input listed in a file.
    Batch {
        #[arg(long = "in")]
        input: PathBuf,
        /// Whitespace-separated inputs.
        #[arg(long)]
        inputs: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PrimeArgs {
    #[arg(long)]
    pub eta: u64,
    /// Exclusive lower bound.
    #[arg(long, default_value_t = 0)]
    pub min: u64,
    #[arg(long, default_value_t = 1)]
    pub residue: u64,
    /// Search up to eta^nu.
    #[arg(long, default_value_t = PrimeSearchConfig::DEFAULT_EXPONENT_CAP)]
    pub nu: f64,
    #[arg(long, value_enum, default_value = "scan")]
    pub mode: ModeChoice,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub params: Params,
}

/// Parses, runs and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return 2;
        }
        // Ignore "already initialized" when called repeatedly in-process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build(args) => cmd_build(&args, out).map(|_| 0),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Rao(args) => {
            let Params { n, m, t } = args.params;
            check_params(n, m, t)?;
            writeln!(out, "{}", rao_bound(m, n, t))?;
            Ok(0)
        }
        Command::Hash(cmd) => cmd_hash(cmd, out).map(|_| 0),
        Command::Prime(args) => {
            let mut cfg = PrimeSearchConfig::new(args.eta, args.min)
                .residue(args.residue)
                .exponent_cap(args.nu);
            if args.mode == ModeChoice::Sample {
                cfg = cfg.sampled(args.seed);
            }
            writeln!(out, "{}", prime_in_ap(&cfg)?)?;
            Ok(0)
        }
        Command::Compare(args) => cmd_compare(&args.params, out).map(|_| 0),
    }
}

fn check_params(n: u64, m: usize, t: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid("--n must be at least 2"));
    }
    if t < 1 || t > m {
        return Err(invalid(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    Ok(())
}

/// `s / rao` as a reduced fraction plus a decimal rendering.
pub fn rao_ratio(s: &BigUint, rao: &BigUint) -> String {
    if rao.is_zero() {
        return "inf".into();
    }
    let g = num_integer_gcd(s.clone(), rao.clone());
    let (num, den) = (s / &g, rao / &g);
    let approx = s.to_f64().unwrap_or(f64::INFINITY) / rao.to_f64().unwrap_or(f64::INFINITY);
    if den == BigUint::from(1u32) {
        format!("{num} ({approx})")
    } else {
        format!("{num}/{den} ({approx})")
    }
}

fn num_integer_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Strength-`t` array over a prime-power alphabet: Bush when `m <= n`, the RS
/// construction otherwise.
fn prime_power_factor(n: u64, m: usize, t: usize, cap: u128) -> Result<OrthogonalArray> {
    if m as u64 <= n {
        bush_oa(n, m, t)
    } else {
        build_oa(&plan_rs(n, m, t)?, cap)
    }
}

fn prime_power_factor_size(n: u64, m: usize, t: usize) -> Result<BigUint> {
    if m as u64 <= n {
        Ok(BigUint::from(n).pow(t as u32))
    } else {
        Ok(plan_rs(n, m, t)?.rows())
    }
}

fn product_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect()
}

/// What `build` resolved before emitting rows.
#[derive(Debug, Clone)]
pub struct BuildSummary {
    pub s: BigUint,
    pub m: usize,
    pub n: u64,
    pub t: usize,
    pub q: Option<u64>,
    pub tau: Option<usize>,
    pub k: Option<usize>,
}

impl BuildSummary {
    fn from_plan(plan: &BuildPlan) -> Self {
        BuildSummary {
            s: plan.rows(),
            m: plan.m,
            n: plan.n,
            t: plan.t,
            q: Some(plan.q),
            tau: Some(plan.tau),
            k: Some(plan.code.dimension()),
        }
    }

    fn from_array(oa: &OrthogonalArray) -> Self {
        BuildSummary {
            s: BigUint::from(oa.rows()),
            m: oa.columns(),
            n: oa.alphabet(),
            t: oa.strength(),
            q: None,
            tau: None,
            k: None,
        }
    }

    pub fn line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let lambda = &self.s / BigUint::from(self.n).pow(self.t as u32);
        let rao = rao_bound(self.m, self.n, self.t);
        format!(
            "s={} m={} n={} t={} lambda={} q={} tau={} k={} rao={} s/rao={}",
            self.s,
            self.m,
            self.n,
            self.t,
            lambda,
            opt(self.q.map(|q| q.to_string())),
            opt(self.tau.map(|x| x.to_string())),
            opt(self.k.map(|x| x.to_string())),
            rao,
            rao_ratio(&self.s, &rao)
        )
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn cmd_build(args: &BuildArgs, summary_out: &mut dyn Write) -> Result<BuildSummary> {
    let Params { n, m, t } = args.params;
    check_params(n, m, t)?;
    if args.format == FormatChoice::Text && (args.zero_based || args.csv_header) {
        return Err(invalid("--zero-based and --csv-header apply to --format csv only"));
    }
    if args.p_override.is_some() && args.code != CodeChoice::Random {
        return Err(invalid("--p-override applies to --code random only"));
    }
    let plan = match args.code {
        CodeChoice::Rs => Some(plan_rs(n, m, t)?),
        CodeChoice::Random => Some(plan_random(
            n,
            m,
            t,
            &RandomPlanConfig {
                p_override: args.p_override,
                seed: args.seed,
                max_attempts: args.max_attempts,
            },
        )?),
        CodeChoice::Bush | CodeChoice::Product => None,
    };
    let array = match (&plan, args.code) {
        (None, CodeChoice::Bush) if !args.dry_run => Some(bush_oa(n, m, t)?),
        (None, CodeChoice::Product) if !args.dry_run => {
            let factors = product_factors(n);
            if factors.len() < 2 {
                return Err(invalid(format!("{n} is a prime power; use --code bush or rs")));
            }
            let mut acc = OrthogonalArray::trivial(m, t);
            for f in factors {
                acc = product_oa(&acc, &prime_power_factor(f, m, t, args.max_cells)?)?;
            }
            Some(acc)
        }
        _ => None,
    };

    let summary = match (&plan, &array) {
        (Some(plan), _) => BuildSummary::from_plan(plan),
        (None, Some(oa)) => BuildSummary::from_array(oa),
        (None, None) => {
            let s = match args.code {
                CodeChoice::Bush => {
                    prime_power(n).ok_or_else(|| invalid(format!("{n} is not a prime power")))?;
                    if m as u64 > n {
                        return Err(invalid("Bush construction needs m <= n"));
                    }
                    BigUint::from(n).pow(t as u32)
                }
                _ => product_factors(n)
                    .into_iter()
                    .map(|f| prime_power_factor_size(f, m, t))
                    .product::<Result<BigUint>>()?,
            };
            BuildSummary {
                s,
                m,
                n,
                t,
                q: None,
                tau: None,
                k: None,
            }
        }
    };

    if args.dry_run {
        writeln!(summary_out, "plan {}", summary.line())?;
        return Ok(summary);
    }

    let mut writer = OaWriter::new(open_output(args.out.as_deref())?, args.format.into(), args.zero_based);
    match (&plan, &array) {
        (Some(plan), _) => {
            let s = u128::try_from(&plan.rows()).unwrap_or(u128::MAX);
            let cells = s.saturating_mul(m as u128);
            if cells > args.max_cells {
                return Err(Error::CapExceeded {
                    what: "orthogonal array cells",
                    needed: cells,
                    cap: args.max_cells,
                });
            }
            writer.header(s, m, n, t, args.csv_header)?;
            build_oa_streaming(plan, args.max_cells, |row| writer.row(row))?;
        }
        (None, Some(oa)) => {
            writer.header(oa.rows() as u128, m, oa.alphabet(), oa.strength(), args.csv_header)?;
            for row in oa.iter_rows() {
                writer.row(row)?;
            }
        }
        (None, None) => unreachable!("non-dry-run builds always resolve an array or plan"),
    }
    writer.finish()?;
    if args.out.is_some() {
        writeln!(summary_out, "{}", summary.line())?;
    } else {
        eprintln!("{}", summary.line());
    }
    Ok(summary)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let reader = BufReader::new(File::open(&args.input)?);
    let oa = match args.format {
        FormatChoice::Text => read_oa_text(reader)?,
        FormatChoice::Csv => read_oa_csv(reader, args.n, 0, args.zero_based)?,
    };
    let report = verify_oa(&oa, args.t, args.max_work)?;
    match args.report {
        ReportChoice::Json => writeln!(out, "{}", report.to_json())?,
        ReportChoice::Text => writeln!(out, "{}", report.to_text())?,
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn load_hash(path: &Path) -> Result<HashFunction> {
    HashFunction::from_bytes(&std::fs::read(path)?)
}

fn store_if_changed(path: &Path, before: &[u8], h: &HashFunction) -> Result<()> {
    let after = h.to_bytes();
    if after != before {
        std::fs::write(path, after)?;
    }
    Ok(())
}

pub fn cmd_hash(cmd: HashCommand, out: &mut dyn Write) -> Result<()> {
    match cmd {
        HashCommand::New {
            n,
            m,
            t,
            seed,
            out: path,
            prime_search,
            replacement,
        } => {
            let opts = HashOptions {
                prime_search: prime_search.into(),
                replacement: match replacement {
                    ReplacementChoice::Lazy => ReplacementMode::LazyCache,
                    ReplacementChoice::Derived => ReplacementMode::Derived,
                },
            };
            let h = HashFunction::with_options(n, m, t, seed, opts)?;
            let bytes = h.to_bytes();
            match path {
                Some(p) => {
                    std::fs::write(&p, &bytes)?;
                    writeln!(out, "n={n} m={m} t={t} p={} bytes={}", h.p(), bytes.len())?;
                }
                None => {
                    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
                    writeln!(out, "{hex}")?;
                }
            }
        }
        HashCommand::Eval { input, x } => {
            let before = std::fs::read(&input)?;
            let mut h = HashFunction::from_bytes(&before)?;
            writeln!(out, "{}", h.eval(x)?)?;
            store_if_changed(&input, &before, &h)?;
        }
        HashCommand::Batch { input, inputs } => {
            let before = std::fs::read(&input)?;
            let mut h = load_hash(&input)?;
            let reader = BufReader::new(File::open(&inputs)?);
            for line in reader.lines() {
                for tok in line?.split_whitespace() {
                    let x: u64 = tok
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad input {tok:?}")))?;
                    writeln!(out, "{}", h.eval(x)?)?;
                }
            }
            store_if_changed(&input, &before, &h)?;
        }
    }
    Ok(())
}

/// One row of the `compare` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub path: &'static str,
    pub size: Option<BigUint>,
    pub note: String,
}

pub fn compare_sizes(n: u64, m: usize, t: usize) -> Result<Vec<CompareRow>> {
    check_params(n, m, t)?;
    let mut rows = Vec::new();
    rows.push(CompareRow {
        path: "rao",
        size: Some(rao_bound(m, n, t)),
        note: "lower bound".into(),
    });
    rows.push(match plan_rs(n, m, t) {
        Ok(plan) => CompareRow {
            path: "rs",
            size: Some(plan.rows()),
            note: format!("q={} tau={} k={}", plan.q, plan.tau, plan.code.dimension()),
        },
        Err(e) => CompareRow {
            path: "rs",
            size: None,
            note: format!("n/a: {e}"),
        },
    });
    rows.push(match prime_power(n) {
        Some(_) if m as u64 <= n => CompareRow {
            path: "bush",
            size: Some(BigUint::from(n).pow(t as u32)),
            note: "lambda=1".into(),
        },
        Some(_) => CompareRow {
            path: "bush",
            size: None,
            note: format!("n/a: m={m} > n={n}"),
        },
        None => CompareRow {
            path: "bush",
            size: None,
            note: format!("n/a: {n} is not a prime power"),
        },
    });
    let factors = product_factors(n);
    rows.push(if factors.len() < 2 {
        CompareRow {
            path: "product",
            size: None,
            note: "n/a: n is a prime power".into(),
        }
    } else {
        let parts = factors
            .iter()
            .map(|&f| prime_power_factor_size(f, m, t).map(|s| (f, s)))
            .collect::<Result<Vec<_>>>()?;
        let size: BigUint = parts.iter().map(|(_, s)| s.clone()).product();
        let note = parts
            .iter()
            .map(|(f, s)| format!("{s} (n={f}, {})", if m as u64 <= *f { "bush" } else { "rs" }))
            .collect::<Vec<_>>()
            .join(" x ");
        CompareRow {
            path: "product",
            size: Some(size),
            note,
        }
    });
    Ok(rows)
}

pub fn cmd_compare(params: &Params, out: &mut dyn Write) -> Result<()> {
    let rows = compare_sizes(params.n, params.m, params.t)?;
    let rao = rows[0].size.clone().expect("rao always applies");
    writeln!(out, "n={} m={} t={}", params.n, params.m, params.t)?;
    writeln!(out, "{:<8} {:>24} {:>24}  note", "path", "rows", "rows/rao")?;
    for r in rows {
        let (size, ratio) = match &r.size {
            Some(s) => (s.to_string(), rao_ratio(s, &rao)),
            None => ("-".into(), "-".into()),
        };
        writeln!(out, "{:<8} {:>24} {:>24}  {}", r.path, size, ratio, r.note)?;
    }
    Ok(())
}
