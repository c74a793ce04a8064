//! Command-line driver: one JSON config per run, JSON or CSV output.
//!
//! Exit codes: 0 on success, 1 when a requested check fails or a computation
//! errors, 2 on a configuration error.

mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde::Serialize;

use crate::bernoulli::{numbers, polynomial, power_sum, TwistSpec};
use crate::characters::CharacterSpec;
use crate::error::Error;
use crate::exact::{format_rational, CycloElem, RootOfUnity, Valuation};
use crate::identities::{sweep, IdentityReport, SweepResult};
use crate::volkenborn::{convergence_check, default_level_cap, shift_trace, ConvergenceTrace, IntegrandSpec};

pub use config::{
    Command, ConfigError, Format, NumbersParams, OneOrMany, PolynomialParams, PowerSumParams, RunConfig,
    VerifyParams, VolkenbornParams,
};

/// Environment variable read for `--jobs` when the flag is absent.
pub const JOBS_ENV: &str = "TWISTED_BERNOULLI_JOBS";

#[derive(Debug, Parser)]
#[command(name = "twisted-bernoulli", version, about = "Exact twisted Bernoulli numbers, identity sweeps and Volkenborn traces")]
pub struct Args {
    /// JSON config file
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (default: the config's `output`, else stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default: the config's `format`, else json)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
}

/// Exit status and rendered output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

/// Anything that stops a run before output is produced.
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Compute(Error),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Compute(_) | RunError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Compute(e) => write!(f, "computation failed: {e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Compute(e)
    }
}

fn twist(
    d: Option<u64>,
    character: &Option<CharacterSpec>,
    xi: RootOfUnity,
) -> Result<TwistSpec, ConfigError> {
    let spec = character.clone().unwrap_or(CharacterSpec::Principal { modulus: None });
    let d = d.or(spec.modulus()).unwrap_or(1);
    let chi = spec.build(Some(d)).map_err(|e| ConfigError::at("character", e.to_string()))?;
    TwistSpec::new(chi, xi).map_err(|e| ConfigError::at("xi", e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn xi_label(r: RootOfUnity) -> String {
    format!("zeta_{}^{}", r.order(), r.exponent())
}

fn elem_cell(v: &CycloElem) -> String {
    v.to_rational().map_or_else(|| v.to_string(), |q| format_rational(&q))
}

#[derive(Serialize)]
struct TraceRecord {
    p: u64,
    level: u32,
    valuation: Valuation,
}

#[derive(Serialize)]
struct TraceOutput {
    p: u64,
    n: u64,
    xi: RootOfUnity,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<u64>,
    passes: bool,
    records: Vec<TraceRecord>,
}

#[derive(Serialize)]
struct VolkenbornOutput {
    passes: bool,
    traces: Vec<TraceOutput>,
}

fn run_volkenborn(p: &VolkenbornParams, format: Format) -> Result<Outcome, RunError> {
    let spec = twist(p.d, &p.character, p.xi)?;
    let primes = p.p.to_vec();
    let moments = p.n.to_vec();
    let base = IntegrandSpec::new(spec.chi().clone(), p.xi, 0).map_err(|e| ConfigError::at("character", e.to_string()))?;
    for &prime in &primes {
        base.check_prime(prime).map_err(|e| ConfigError::at("p", e.to_string()))?;
    }
    if let Some(l) = p.levels {
        if l < 2 {
            return Err(ConfigError::at("levels", "need at least two levels").into());
        }
    }
    if p.shift == Some(0) || (p.shift.is_some() && moments.contains(&0)) {
        return Err(ConfigError::at("shift", "shift traces need shift >= 1 and every n >= 1").into());
    }
    let mut traces = Vec::new();
    for &prime in &primes {
        for &n in &moments {
            let s = base.with_moment(n);
            let levels = p.levels.unwrap_or_else(|| default_level_cap(prime));
            let t: ConvergenceTrace = match p.shift {
                Some(shift) => shift_trace(&s, prime, shift, levels)?,
                None => convergence_check(&s, prime, levels)?,
            };
            traces.push(TraceOutput {
                p: prime,
                n,
                xi: s.xi(),
                shift: p.shift,
                passes: t.passes,
                records: t
                    .levels
                    .iter()
                    .zip(t.valuations)
                    .map(|(&level, valuation)| TraceRecord { p: prime, level, valuation })
                    .collect(),
            });
        }
    }
    let passes = traces.iter().all(|t| t.passes);
    let body = match format {
        Format::Json => to_json(&VolkenbornOutput { passes, traces }),
        Format::Csv => csv_rows(
            &["p", "n", "xi", "level", "valuation", "passes"],
            traces
                .iter()
                .flat_map(|t| {
                    t.records.iter().map(move |r| {
                        vec![
                            r.p.to_string(),
                            t.n.to_string(),
                            xi_label(t.xi),
                            r.level.to_string(),
                            r.valuation.to_string(),
                            t.passes.to_string(),
                        ]
                    })
                })
                .collect(),
        ),
    };
    Ok(Outcome {
        code: if passes { 0 } else { 1 },
        body,
    })
}

fn verify_csv(reports: &[IdentityReport]) -> String {
    csv_rows(
        &[
            "identity", "n", "m", "k", "d", "character", "xi", "w1", "w2", "order", "holds", "reading",
            "alternate_reading", "alternate_holds", "error",
        ],
        reports
            .iter()
            .map(|r| {
                let p = &r.params;
                vec![
                    r.identity.name().to_string(),
                    p.n.to_string(),
                    opt(p.m),
                    opt(p.k),
                    p.d.to_string(),
                    p.character.clone(),
                    xi_label(p.xi),
                    opt(p.w1),
                    opt(p.w2),
                    opt(p.order),
                    r.holds.to_string(),
                    r.reading.clone().unwrap_or_default(),
                    opt(r.alternate.as_ref().map(|a| a.reading.clone())),
                    opt(r.alternate.as_ref().map(|a| a.holds)),
                    r.error.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    )
}

fn elem_rows(values: &[CycloElem]) -> Vec<Vec<String>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), elem_cell(v)])
        .collect()
}

/// Runs a parsed config. `jobs` bounds the worker pool; `None` uses all cores.
pub fn execute(config: &RunConfig, format: Format, jobs: Option<usize>) -> Result<Outcome, RunError> {
    if jobs == Some(0) {
        return Err(ConfigError::at("jobs", "must be at least 1").into());
    }
    let run = || -> Result<Outcome, RunError> {
        match &config.command {
            Command::ComputeNumbers(p) => {
                let spec = twist(p.d, &p.character, p.xi)?;
                let fam = numbers(&spec, p.k, p.n_max as usize)?;
                let values = &fam.numbers()[..=p.n_max as usize];
                Ok(Outcome {
                    code: 0,
                    body: match format {
                        Format::Json => to_json(&values),
                        Format::Csv => csv_rows(&["n", "value"], elem_rows(values)),
                    },
                })
            }
            Command::ComputePolynomial(p) => {
                let spec = twist(p.d, &p.character, p.xi)?;
                let poly = polynomial(&spec, p.k, p.n as usize)?;
                Ok(Outcome {
                    code: 0,
                    body: match format {
                        Format::Json => to_json(&poly.coeffs()),
                        Format::Csv => csv_rows(&["power", "coefficient"], elem_rows(poly.coeffs())),
                    },
                })
            }
            Command::PowerSum(p) => {
                let spec = twist(p.d, &p.character, p.xi)?;
                let v = power_sum(&spec, p.k, p.n);
                Ok(Outcome {
                    code: 0,
                    body: match format {
                        Format::Json => to_json(&v),
                        Format::Csv => csv_rows(&["k", "n", "value"], vec![vec![p.k.to_string(), p.n.to_string(), elem_cell(&v)]]),
                    },
                })
            }
            Command::Verify(p) => {
                let result: SweepResult = sweep(&p.grids, None).map_err(|e| ConfigError::at("grids", e.to_string()))?;
                let code = if result.summary.all_hold() { 0 } else { 1 };
                Ok(Outcome {
                    code,
                    body: match format {
                        Format::Json => to_json(&result),
                        Format::Csv => verify_csv(&result.reports),
                    },
                })
            }
            Command::Volkenborn(p) => run_volkenborn(p, format),
        }
    };
    match jobs {
        None => run(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| RunError::Io(format!("thread pool: {e}")))?
            .install(run),
    }
}

/// Parses `text` and runs it; format defaults to the config's, else JSON.
pub fn run_config_text(text: &str, format: Option<Format>, jobs: Option<usize>) -> Result<(RunConfig, Outcome), RunError> {
    let config = RunConfig::parse(text)?;
    let format = format.or(config.format).unwrap_or(Format::Json);
    let outcome = execute(&config, format, jobs)?;
    Ok((config, outcome))
}

fn write_output(path: Option<PathBuf>, body: &str) -> Result<(), RunError> {
    match path {
        Some(p) => std::fs::write(&p, body).map_err(|e| RunError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| RunError::Io(format!("cannot write stdout: {e}")))
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("config error: cannot read {}: {e}", args.config.display());
            return 2;
        }
    };
    let result = run_config_text(&text, args.format, args.jobs).and_then(|(config, outcome)| {
        let path = args.out.or(config.output.map(PathBuf::from));
        write_output(path, &outcome.body)?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
