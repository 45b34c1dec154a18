//! The `uncert-frames` command line front end.
//!
//! Every command prints `{version, config, records}`; the exit code is 0
//! when all checked inequalities hold, 1 on a violation and 2 on a usage or
//! input error.

pub mod matrix_file;
pub mod output;
pub mod specs;

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{check_disc_norm_axioms, complex_gaussian, dirac_comb};
use crate::quasinorm::{
    continuous_garling_counterexample, garling_check, CoeffSeq, ContinuousGarlingWitness,
    GarlingCheck, PExponent, SupportPolicy,
};
use crate::search::{
    min_uncertainty_product, tao_minor_check, tightness_sweep, MinorReport, SearchOutcome,
    SearchStrategy, SweepRow,
};
use crate::uncertainty::{
    bound_holds, compare_bounds, verify_mt, verify_rt_chain, BoundTable, RtChainReport,
    UncertaintyReport, UncertaintySetup,
};
use crate::{DiscNormAxiomReport, Error, Result};
pub use output::OutputFormat;

/// Environment variable capping the worker threads used by searches.
pub const THREADS_ENV: &str = "UNCERT_FRAMES_THREADS";

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "uncert-frames", version, about = "Support uncertainty checks for frame pairs")]
pub struct RunConfig {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "format", global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output_format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// Evaluate one uncertainty inequality on a vector.
    Verify(VerifyArgs),
    /// Check (Σ|a|)ᵖ ≤ Σ|a|ᵖ on given or random sequences.
    Garling(GarlingArgs),
    /// Evaluate the constant-function witness on a finite measure space.
    Counterexample(CounterexampleArgs),
    /// Build a pair, a Dirac comb, or run the disc-norm axiom sampler.
    Construct(ConstructArgs),
    /// Smallest support product over a candidate family.
    Search(SearchArgs),
    /// Identity-versus-DFT search against the disc bound over n and p.
    Sweep(SweepArgs),
    /// Look for singular square minors of the DFT matrix.
    Minors(MinorsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Discup,
    Fi,
    Si,
    Uup,
    Mt,
    Rt,
    Bounds,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolicyArgs {
    /// Entries at most this fraction of the largest are treated as zero.
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub abs_floor: f64,
}

impl PolicyArgs {
    fn policy(&self) -> Result<SupportPolicy> {
        SupportPolicy::new(self.rel_tol, self.abs_floor)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    /// identity:d, dft:n, random:d:seed[:m] or file:PATH
    #[arg(long)]
    pub pair_f: String,
    #[arg(long)]
    pub pair_g: String,
    /// comb:n:s[:o], spike:n:i, ones:n, random:n:seed or values:a;b;...
    #[arg(long)]
    pub x: Option<String>,
    /// Exponents, comma separated; "inf" is accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent)]
    pub p: Vec<PExponent>,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GarlingArgs {
    /// Sequence length for random trials.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent, default_value = "0.5")]
    pub p: Vec<PExponent>,
    /// Explicit real entries, semicolon separated; overrides random trials.
    #[arg(long)]
    pub values: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CounterexampleArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent, default_value = "0.5")]
    pub p: Vec<PExponent>,
    /// Measure of the set carrying the constant function.
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    #[arg(long, default_value_t = 1.0)]
    pub value: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(skip)]
#[command(group = ArgGroup::new("target").required(true).args(["pair", "comb", "disc_axioms"]))]
pub struct ConstructArgs {
    /// Pair specifier to build and summarise.
    #[arg(long)]
    pub pair: Option<String>,
    /// Also write the pair in the hex-float matrix format.
    #[arg(long, requires = "pair")]
    pub write: Option<String>,
    /// Dirac comb n:spacing[:offset].
    #[arg(long)]
    pub comb: Option<String>,
    #[arg(long)]
    pub disc_axioms: bool,
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent, default_value = "0.5")]
    pub p: Vec<PExponent>,
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub pair_f: String,
    #[arg(long)]
    pub pair_g: String,
    /// combs, exhaustive[:max_support] or random
    #[arg(long, default_value = "combs", value_parser = parse_strategy)]
    pub strategy: SearchStrategy,
    #[arg(long)]
    pub budget: Option<usize>,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    pub p: Vec<f64>,
    #[arg(long, default_value = "combs", value_parser = parse_strategy)]
    pub strategy: SearchStrategy,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MinorsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_size: usize,
}

fn parse_exponent(s: &str) -> std::result::Result<PExponent, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s == "∞" {
        return Ok(PExponent::infinity());
    }
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number or \"inf\""))?;
    PExponent::new(v).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> std::result::Result<SearchStrategy, String> {
    match s.split_once(':') {
        None if s == "combs" => Ok(SearchStrategy::Combs),
        None if s == "random" => Ok(SearchStrategy::RandomRestarts),
        None if s == "exhaustive" => Ok(SearchStrategy::ExhaustiveSupports {
            max_support: crate::search::MAX_EXHAUSTIVE_SUPPORT,
        }),
        Some(("exhaustive", cap)) => cap
            .parse()
            .map(|max_support| SearchStrategy::ExhaustiveSupports { max_support })
            .map_err(|_| format!("bad support cap {cap:?}")),
        _ => Err(format!(
            "unknown strategy {s:?}; expected combs, exhaustive[:cap] or random"
        )),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub spec: String,
    pub d: usize,
    pub m: usize,
    pub reconstruction_residual: f64,
    pub reconstructs: bool,
    pub parseval: bool,
    pub condition_estimate: f64,
    pub written_to: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CombSummary {
    pub n: usize,
    pub spacing: usize,
    pub offset: usize,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GarlingRecord {
    pub trial: usize,
    pub len: usize,
    pub nonzeros: usize,
    #[serde(flatten)]
    pub check: GarlingCheck,
}

/// One output record; `kind` names the variant in JSON.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Uncertainty(UncertaintyReport),
    RtChain(RtChainReport),
    Bounds(BoundTable),
    Garling(GarlingRecord),
    Counterexample(ContinuousGarlingWitness),
    Pair(PairSummary),
    Comb(CombSummary),
    DiscAxioms(DiscNormAxiomReport),
    Search(SearchOutcome),
    Sweep(SweepRow),
    Minors(MinorReport),
}

impl Record {
    /// True when the record contradicts a statement that should always hold.
    pub fn violation(&self) -> bool {
        match self {
            Record::Uncertainty(r) => !r.holds,
            Record::RtChain(r) => !r.all_hold,
            Record::Bounds(t) => t.coherence.product() < 1.0 && !t.ordering_holds(),
            Record::Garling(g) => !g.check.holds || g.check.equality != (g.nonzeros == 1),
            Record::Counterexample(_) | Record::Pair(_) | Record::Comb(_) => false,
            Record::DiscAxioms(r) => r.failures() > 0,
            Record::Search(s) => !bound_holds(s.min_product as f64, s.bound),
            Record::Sweep(r) => !bound_holds(r.min_product_found as f64, r.discup_bound),
            // Every minor of a prime-order DFT matrix is nonsingular.
            Record::Minors(r) => crate::search::is_prime(r.n) && r.singular_minor_found,
        }
    }
}

#[derive(Serialize)]
struct Document<'a> {
    version: &'static str,
    config: &'a RunConfig,
    records: &'a [Record],
}

/// Serialises records as the top-level JSON document.
pub fn to_json(config: &RunConfig, records: &[Record]) -> String {
    let doc = Document {
        version: env!("CARGO_PKG_VERSION"),
        config,
        records,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("records serialise");
    s.push('\n');
    s
}

/// Runs a parsed configuration, writing the report to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let records = match with_thread_cap(|| execute(config)) {
        Ok(records) => records,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = match config.output_format {
        OutputFormat::Json => to_json(config, &records),
        OutputFormat::Csv => output::to_csv(&records),
        OutputFormat::Human => output::to_human(&records),
    };
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 2;
    }
    let violations = records.iter().filter(|r| r.violation()).count();
    if violations > 0 {
        let _ = writeln!(err, "{violations} record(s) violate a checked inequality");
        1
    } else {
        0
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn main_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            e.exit_code()
        }
    }
}

fn with_thread_cap<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return f();
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidInput(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}")))?
        .install(f)
}

fn execute(config: &RunConfig) -> Result<Vec<Record>> {
    match &config.command {
        Command::Verify(a) => verify(a),
        Command::Garling(a) => garling(a, config.seed),
        Command::Counterexample(a) => a
            .p
            .iter()
            .map(|&p| {
                let w = if a.measure == 0.5 && a.value == 1.0 {
                    continuous_garling_counterexample(p)?
                } else {
                    ContinuousGarlingWitness::evaluate(p, a.measure, a.value)?
                };
                Ok(Record::Counterexample(w))
            })
            .collect(),
        Command::Construct(a) => construct(a, config.seed),
        Command::Search(a) => {
            let f = specs::parse_pair(&a.pair_f)?;
            let g = specs::parse_pair(&a.pair_g)?;
            let budget = a.budget.unwrap_or_else(|| a.strategy.default_budget());
            let outcome =
                min_uncertainty_product(&f, &g, a.strategy, budget, config.seed, a.policy.policy()?)?;
            Ok(vec![Record::Search(outcome)])
        }
        Command::Sweep(a) => Ok(tightness_sweep(&a.n, &a.p, a.strategy, config.seed)?
            .into_iter()
            .map(Record::Sweep)
            .collect()),
        Command::Minors(a) => Ok(vec![Record::Minors(tao_minor_check(a.n, a.max_size)?)]),
    }
}

fn require_x(a: &VerifyArgs) -> Result<crate::CVector> {
    let spec = a
        .x
        .as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("--x is required for --theorem {:?}", a.theorem)))?;
    specs::parse_vector(spec)
}

fn verify(a: &VerifyArgs) -> Result<Vec<Record>> {
    let f = specs::parse_pair(&a.pair_f)?;
    let g = specs::parse_pair(&a.pair_g)?;
    let policy = a.policy.policy()?;
    let need_p = || {
        if a.p.is_empty() {
            Err(Error::InvalidInput(format!("--p is required for --theorem {:?}", a.theorem)))
        } else {
            Ok(a.p.clone())
        }
    };
    let mut records = Vec::new();
    match a.theorem {
        Theorem::Discup | Theorem::Fi | Theorem::Si => {
            let x = require_x(a)?;
            let setup = UncertaintySetup::new(&f, &g)?;
            for p in need_p()? {
                p.require_sub_unit()?;
                let report = match a.theorem {
                    Theorem::Discup => setup.discup(&x, p, policy)?,
                    Theorem::Fi => setup.fi(&x, p, policy)?,
                    _ => setup.si(&x, p, policy)?,
                };
                records.push(Record::Uncertainty(report));
            }
        }
        Theorem::Uup => {
            let x = require_x(a)?;
            let setup = UncertaintySetup::new(&f, &g)?;
            let ps = if a.p.is_empty() { vec![PExponent::new(1.0)?] } else { a.p.clone() };
            for p in ps {
                records.push(Record::Uncertainty(setup.uup(&x, p, policy)?));
            }
        }
        Theorem::Mt => {
            let x = require_x(a)?;
            for p in need_p()? {
                records.extend(verify_mt(&f, &g, &x, p, policy)?.map(Record::Uncertainty));
            }
        }
        Theorem::Rt => {
            let x = require_x(a)?;
            records.push(Record::RtChain(verify_rt_chain(&f, &g, &x, policy)?));
        }
        Theorem::Bounds => {
            let grid: Vec<f64> = if a.p.is_empty() {
                (1..10).map(|k| k as f64 / 10.0).collect()
            } else {
                a.p.iter().map(PExponent::value).collect()
            };
            records.push(Record::Bounds(compare_bounds(&f, &g, &grid)?));
        }
    }
    Ok(records)
}

fn garling(a: &GarlingArgs, seed: u64) -> Result<Vec<Record>> {
    let sequences: Vec<CoeffSeq> = match &a.values {
        Some(list) => vec![CoeffSeq::new(
            specs::parse_vector(&format!("values:{list}"))?.iter().copied().collect(),
        )?],
        None => {
            if a.n == 0 {
                return Err(Error::InvalidInput("--n must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..a.trials)
                .map(|_| CoeffSeq::new((0..a.n).map(|_| complex_gaussian(&mut rng)).collect()))
                .collect::<Result<_>>()?
        }
    };
    let mut records = Vec::new();
    for (trial, seq) in sequences.iter().enumerate() {
        let nonzeros = seq.as_slice().iter().filter(|z| z.norm() != 0.0).count();
        for &p in &a.p {
            records.push(Record::Garling(GarlingRecord {
                trial,
                len: seq.len(),
                nonzeros,
                check: garling_check(seq, p)?,
            }));
        }
    }
    Ok(records)
}

fn construct(a: &ConstructArgs, seed: u64) -> Result<Vec<Record>> {
    if let Some(spec) = &a.pair {
        let pair = specs::parse_pair(spec)?;
        if let Some(path) = &a.write {
            std::fs::write(path, matrix_file::write_pair(&pair))
                .map_err(|e| Error::Io(format!("cannot write {path}: {e}")))?;
        }
        return Ok(vec![Record::Pair(PairSummary {
            spec: spec.clone(),
            d: pair.ambient_dim(),
            m: pair.count(),
            reconstruction_residual: pair.reconstruction_residual(),
            reconstructs: pair.reconstructs(),
            parseval: pair.is_parseval(),
            condition_estimate: pair.condition_estimate(),
            written_to: a.write.clone(),
        })]);
    }
    if let Some(spec) = &a.comb {
        let fields: Vec<usize> = spec
            .split(':')
            .map(|f| f.parse().map_err(|_| Error::InvalidInput(format!("bad comb {spec:?}"))))
            .collect::<Result<_>>()?;
        let (n, spacing, offset) = match fields.as_slice() {
            [n, s] => (*n, *s, 0),
            [n, s, o] => (*n, *s, *o),
            _ => return Err(Error::InvalidInput(format!("comb needs n:spacing[:offset], got {spec:?}"))),
        };
        let v = dirac_comb(n, spacing, offset)?;
        let support = (0..n).filter(|&i| v[i].norm() != 0.0).collect();
        return Ok(vec![Record::Comb(CombSummary { n, spacing, offset, support })]);
    }
    a.p.iter()
        .enumerate()
        .map(|(i, &p)| {
            let report = check_disc_norm_axioms(p, a.d, a.samples, seed.wrapping_add(i as u64))?;
            Ok(Record::DiscAxioms(report))
        })
        .collect()
}
