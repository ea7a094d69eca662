//! Command-line front end.
//!
//! Exit status: 0 success, 1 computational error (degenerate body, ...),
//! 2 usage or validation error, 3 verification or oracle failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bodyspec::BodySpec;
use crate::error::Error;
use crate::format::{num, opt_num, JsonObject};
use crate::geometry::{convex_hull, Body};
use crate::grassmann::haar_sample;
use crate::mixedvol::{mixed_volume, mixed_volume_oracle};
use crate::querm::{phi, phi_exact_2d, phi_ith, phi_ith_mixed, phi_mixed, phi_pair, Estimate};
use crate::rng::{derive_seed, SampleStream};
use crate::verify::{
    random_polytope, run_suite, InequalityKind, InequalityReport, SuiteConfig, SuiteReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Column order of `verify --format csv`.
pub const VERIFY_CSV_HEADER: &str =
    "name,n,j,r,i,epsilon,samples,master_seed,lhs,rhs,margin,noise_bound,satisfied,equality_expected";

const VERIFY_AFTER_HELP: &str = "CSV columns (fixed order):
  name,n,j,r,i,epsilon,samples,master_seed,lhs,rhs,margin,noise_bound,satisfied,equality_expected
Empty cells mark parameters that do not apply. Exit status 3 when any instance
has margin < -noise_bound (or, for sl, |margin| > noise_bound).";

#[derive(Debug, Parser)]
#[command(
    name = "affquerm",
    version,
    about = "Affine and mixed affine quermassintegrals of convex bodies"
)]
struct Cli {
    /// Worker threads for sample evaluation; never changes results.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate Phi_{n-j} of one body, or the mixed version of several.
    Compute(ComputeArgs),
    /// Check the inequalities on a seeded corpus of random polytopes.
    #[command(after_help = VERIFY_AFTER_HELP)]
    Verify(VerifyArgs),
    /// Cross-check an implementation path against an independent oracle.
    Oracle(OracleArgs),
    /// Write a body file.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Body files, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    bodies: Vec<PathBuf>,
    /// Subspace dimension j (defaults to the number of bodies when several are given).
    #[arg(short = 'j')]
    j: Option<usize>,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Points of the polytope standing in for the unit ball in --ith.
    #[arg(long, default_value_t = 200)]
    ball_points: usize,
    /// Two files K, L: Phi_{n-j}(K, L) with K in j-1 slots.
    #[arg(long)]
    pair: bool,
    /// i-th mixed quermassintegral: one file K or two files K, L.
    #[arg(long)]
    ith: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Minkowski,
    Af,
    Product,
    Bm,
    Sl,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteName::All)]
    suite: SuiteName,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(short = 'n', default_value_t = 3)]
    n: usize,
    #[arg(short = 'j', default_value_t = 2)]
    j: usize,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Brunn-Minkowski only; must be positive.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    epsilon: f64,
    /// Aleksandrov-Fenchel only.
    #[arg(short = 'r', default_value_t = 2)]
    r: usize,
    /// Make every instance a homothetic (equality) instance.
    #[arg(long)]
    homothetic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleCheck {
    Mixedvol,
    Phi2d,
    Haar,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    check: OracleCheck,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo draws (phi2d: 2000, haar: 100000 by default).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("kind").required(true).args(["random", "cube", "simplex", "ball", "ball_approx"])))]
struct GenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    random: bool,
    #[arg(long)]
    cube: bool,
    #[arg(long)]
    simplex: bool,
    #[arg(long)]
    ball: bool,
    #[arg(long)]
    ball_approx: bool,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 10)]
    vertices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    side: f64,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
        _ => EXIT_COMPUTE,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(error_code(&e), e)
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let exec = move || match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Gen(a) => gen(a),
    };
    match cli.threads {
        Some(0) => Outcome::fail(EXIT_USAGE, "--threads must be positive"),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Outcome::fail(EXIT_COMPUTE, e),
        },
        None => exec(),
    }
}

/// Entry point for the binary: runs on `std::env::args_os`, prints, and
/// returns the exit status.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn estimate_output(e: &Estimate, format: Format) -> String {
    match format {
        Format::Json => {
            let o = JsonObject::default()
                .num("value", e.value)
                .num("std_error", e.std_error)
                .int("samples", e.samples)
                .int("n", e.ambient)
                .int("j", e.subspace_dim)
                .int("seed", e.master_seed);
            format!("{}\n", o.build())
        }
        Format::Csv => format!(
            "value,std_error,samples,n,j,seed\n{},{},{},{},{},{}\n",
            num(e.value),
            num(e.std_error),
            e.samples,
            e.ambient,
            e.subspace_dim,
            e.master_seed
        ),
    }
}

fn compute(a: ComputeArgs) -> Outcome {
    let mut bodies = Vec::with_capacity(a.bodies.len());
    for path in &a.bodies {
        match BodySpec::read(path).and_then(|s| s.to_body()) {
            Ok(b) => bodies.push(b),
            Err(e) => return Outcome::fail(EXIT_USAGE, e),
        }
    }
    let n = bodies[0].dim();
    if let Some(b) = bodies.iter().find(|b| b.dim() != n) {
        return Outcome::fail(
            EXIT_USAGE,
            format!("bodies live in different dimensions ({n} and {})", b.dim()),
        );
    }
    let count = bodies.len();
    let need_j = || {
        a.j.ok_or_else(|| Error::InvalidArgument("-j is required here".into()))
    };
    let result = (|| -> Result<Estimate, Error> {
        if let Some(i) = a.ith {
            let j = need_j()?;
            match count {
                1 => phi_ith(&bodies[0], i, j, a.ball_points, a.samples, a.seed),
                2 => phi_ith_mixed(
                    &bodies[0],
                    &bodies[1],
                    i,
                    j,
                    a.ball_points,
                    a.samples,
                    a.seed,
                ),
                _ => Err(Error::InvalidArgument(
                    "--ith takes one or two body files".into(),
                )),
            }
        } else if a.pair {
            if count != 2 {
                return Err(Error::InvalidArgument(
                    "--pair takes exactly two body files".into(),
                ));
            }
            phi_pair(&bodies[0], &bodies[1], need_j()?, a.samples, a.seed)
        } else if count == 1 {
            phi(&bodies[0], need_j()?, a.samples, a.seed)
        } else {
            if let Some(j) = a.j.filter(|&j| j != count) {
                return Err(Error::InvalidArgument(format!(
                    "-j {j} does not match the {count} bodies given"
                )));
            }
            if count > n {
                return Err(Error::InvalidArgument(format!(
                    "{count} bodies exceed the dimension {n}"
                )));
            }
            phi_mixed(&bodies, a.samples, a.seed)
        }
    })();
    match result {
        Ok(e) => Outcome::ok(estimate_output(&e, a.format)),
        Err(e) => e.into(),
    }
}

fn report_json(r: &InequalityReport) -> String {
    let p = &r.parameters;
    JsonObject::default()
        .str("name", r.kind.name())
        .int("n", p.n)
        .int("j", p.j)
        .opt_int("r", p.r)
        .opt_int("i", p.i)
        .opt_num("epsilon", p.epsilon)
        .int("samples", p.samples)
        .int("master_seed", p.master_seed)
        .num("lhs", r.lhs)
        .num("rhs", r.rhs)
        .num("margin", r.margin)
        .num("noise_bound", r.noise_bound)
        .raw("satisfied", r.satisfied.to_string())
        .raw("equality_expected", r.equality_expected.to_string())
        .build()
}

fn report_csv(r: &InequalityReport) -> String {
    let p = &r.parameters;
    let opt_int = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    [
        r.kind.name().to_owned(),
        p.n.to_string(),
        p.j.to_string(),
        opt_int(p.r),
        opt_int(p.i),
        opt_num(p.epsilon),
        p.samples.to_string(),
        p.master_seed.to_string(),
        num(r.lhs),
        num(r.rhs),
        num(r.margin),
        num(r.noise_bound),
        r.satisfied.to_string(),
        r.equality_expected.to_string(),
    ]
    .join(",")
}

fn suite_output(report: &SuiteReport, format: Format) -> (String, String) {
    let errors: Vec<String> = report
        .errors
        .iter()
        .map(|e| format!("{} instance {}: {}", e.kind.name(), e.instance, e.error))
        .collect();
    match format {
        Format::Json => {
            let reports: Vec<String> = report.reports.iter().map(report_json).collect();
            let errs: Vec<String> = errors
                .iter()
                .map(|e| crate::format::json_string(e))
                .collect();
            let o = JsonObject::default()
                .int("corpus_seed", report.corpus_seed)
                .int("satisfied", report.satisfied)
                .int("violated", report.violated)
                .raw("errors", format!("[{}]", errs.join(",")))
                .raw("reports", format!("[\n{}\n]", reports.join(",\n")));
            (format!("{}\n", o.build()), String::new())
        }
        Format::Csv => {
            let mut out = String::from(VERIFY_CSV_HEADER);
            out.push('\n');
            for r in &report.reports {
                out.push_str(&report_csv(r));
                out.push('\n');
            }
            let err: String = errors.iter().map(|e| format!("error: {e}\n")).collect();
            (out, err)
        }
    }
}

fn verify(a: VerifyArgs) -> Outcome {
    let suites = match a.suite {
        SuiteName::Minkowski => vec![InequalityKind::Minkowski],
        SuiteName::Af => vec![InequalityKind::AleksandrovFenchel],
        SuiteName::Product => vec![InequalityKind::Product],
        SuiteName::Bm => vec![InequalityKind::BrunnMinkowski],
        SuiteName::Sl => vec![InequalityKind::SlInvariance],
        SuiteName::All => InequalityKind::ALL.to_vec(),
    };
    let defaults = SuiteConfig::default();
    let config = SuiteConfig {
        suites,
        instances: a.instances,
        n: a.n,
        j: a.j,
        samples: a.samples,
        master_seed: a.seed,
        epsilons: vec![a.epsilon],
        r: a.r,
        homothetic_every: if a.homothetic {
            1
        } else {
            defaults.homothetic_every
        },
        vertex_range: (a.n + 1, a.n + 7),
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => return e.into(),
    };
    let (stdout, stderr) = suite_output(&report, a.format);
    let code = if !report.errors.is_empty() {
        EXIT_COMPUTE
    } else if report.violated > 0 {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

struct OracleResult {
    check: &'static str,
    primary: f64,
    oracle: f64,
    tolerance: f64,
}

impl OracleResult {
    fn discrepancy(&self) -> f64 {
        (self.primary - self.oracle).abs()
    }

    fn passed(&self) -> bool {
        self.discrepancy() <= self.tolerance
    }
}

/// Convex pentagon with seeded jittered angles on the unit circle, under a
/// seeded diagonal stretch.
pub fn seeded_pentagon(seed: u64) -> Body {
    use rand::Rng;
    let mut rng = SampleStream::new(seed, 0).rng();
    let (sx, sy): (f64, f64) = (rng.random_range(0.6..1.6), rng.random_range(0.6..1.6));
    let pts: Vec<Vec<f64>> = (0..5)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + rng.random_range(-0.3..0.3)) / 5.0;
            vec![sx * t.cos(), sy * t.sin()]
        })
        .collect();
    convex_hull(&pts, 2).expect("five points in the plane")
}

/// Relative tolerance between the polarization and polynomial-fit mixed volumes.
pub const MIXEDVOL_ORACLE_TOL: f64 = 1e-6;

fn oracle(a: OracleArgs) -> Outcome {
    let res = (|| -> Result<OracleResult, Error> {
        match a.check {
            OracleCheck::Mixedvol => {
                let bodies: Vec<Body> = (0..3)
                    .map(|t| random_polytope(SampleStream::new(a.seed, t), 3, 6 + t as usize))
                    .collect::<Result<_, _>>()?;
                let primary = mixed_volume(&bodies)?;
                let oracle = mixed_volume_oracle(&bodies, 5)?;
                Ok(OracleResult {
                    check: "mixedvol",
                    primary,
                    oracle,
                    tolerance: MIXEDVOL_ORACLE_TOL * oracle.abs(),
                })
            }
            OracleCheck::Phi2d => {
                let k = seeded_pentagon(a.seed);
                let est = phi(&k, 1, a.samples.unwrap_or(2000), derive_seed(a.seed, 1))?;
                let exact = phi_exact_2d(&k, 1024)?;
                Ok(OracleResult {
                    check: "phi2d",
                    primary: est.value,
                    oracle: exact,
                    tolerance: 3.0 * est.std_error,
                })
            }
            OracleCheck::Haar => {
                let (mean, se) =
                    haar_first_coordinate_moment(a.samples.unwrap_or(100_000), a.seed)?;
                Ok(OracleResult {
                    check: "haar",
                    primary: mean,
                    oracle: 1.0 / 3.0,
                    tolerance: 3.0 * se,
                })
            }
        }
    })();
    let r = match res {
        Ok(r) => r,
        Err(e) => return e.into(),
    };
    let stdout = match a.format {
        Format::Json => {
            let o = JsonObject::default()
                .str("check", r.check)
                .num("primary", r.primary)
                .num("oracle", r.oracle)
                .num("discrepancy", r.discrepancy())
                .num("tolerance", r.tolerance)
                .raw("passed", r.passed().to_string());
            format!("{}\n", o.build())
        }
        Format::Csv => format!(
            "check,primary,oracle,discrepancy,tolerance,passed\n{},{},{},{},{},{}\n",
            r.check,
            num(r.primary),
            num(r.oracle),
            num(r.discrepancy()),
            num(r.tolerance),
            r.passed()
        ),
    };
    Outcome {
        code: if r.passed() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        },
        stdout,
        stderr: String::new(),
    }
}

/// Mean and standard error of the squared first coordinate of `samples`
/// Haar-random lines in `R^3`. The exact mean is `1/3`.
pub fn haar_first_coordinate_moment(samples: usize, seed: u64) -> Result<(f64, f64), Error> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let xs: Vec<f64> = (0..samples as u64)
        .map(|i| haar_sample(SampleStream::new(seed, i), 3, 1).map(|s| s.basis_entry(0, 0).powi(2)))
        .collect::<Result<_, _>>()?;
    let nf = samples as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0);
    Ok((mean, (var / nf).sqrt()))
}

fn gen(a: GenArgs) -> Outcome {
    if a.dim == 0 || a.dim > crate::geometry::MAX_DIM {
        return Outcome::fail(
            EXIT_USAGE,
            format!(
                "--dim must be in 1..={}, got {}",
                crate::geometry::MAX_DIM,
                a.dim
            ),
        );
    }
    let spec = if a.random {
        BodySpec::Random {
            dim: a.dim,
            vertices: a.vertices,
            seed: a.seed,
        }
    } else if a.cube {
        BodySpec::Cube {
            dim: a.dim,
            side: a.side,
        }
    } else if a.simplex {
        BodySpec::Simplex { dim: a.dim }
    } else if a.ball {
        BodySpec::Ball {
            dim: a.dim,
            radius: a.radius,
            center: None,
        }
    } else {
        BodySpec::BallApprox {
            dim: a.dim,
            radius: a.radius,
            points: a.points,
            seed: a.seed,
        }
    };
    let body = match spec.to_body() {
        Ok(b) => b,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let text = BodySpec::from_body(&body).to_json();
    match std::fs::write(&a.out, text) {
        Ok(()) => Outcome::ok(String::new()),
        Err(e) => Outcome::fail(EXIT_USAGE, format!("{}: {e}", a.out.display())),
    }
}
