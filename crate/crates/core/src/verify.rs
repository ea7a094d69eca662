//! Numerical checks of the inequalities satisfied by mixed affine
//! quermassintegrals, on single instances and on seeded corpora.
//!
//! Every term of a one-sided inequality is estimated on one shared subspace
//! sequence, and the margin's standard error is propagated through the full
//! covariance of the paired integrands. A check is violated only when the
//! margin falls below minus its noise bound (three standard errors plus a
//! floating-point floor).

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Body, LinearMap};
use crate::grassmann::haar_orthogonal;
use crate::querm::{pair_tuple, paired_batch, Estimate};
use crate::rng::{derive_seed, SampleStream};

/// Relative allowance for floating-point error in the two sides, added to
/// the statistical noise bound.
pub const ROUNDING_FLOOR: f64 = 1e-9;
/// Number of standard errors in a noise bound.
pub const SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    Minkowski,
    AleksandrovFenchel,
    Product,
    BrunnMinkowski,
    SlInvariance,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 5] = [
        InequalityKind::Minkowski,
        InequalityKind::AleksandrovFenchel,
        InequalityKind::Product,
        InequalityKind::BrunnMinkowski,
        InequalityKind::SlInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityKind::Minkowski => "minkowski",
            InequalityKind::AleksandrovFenchel => "aleksandrov_fenchel",
            InequalityKind::Product => "product",
            InequalityKind::BrunnMinkowski => "brunn_minkowski",
            InequalityKind::SlInvariance => "sl_invariance",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl std::fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub n: usize,
    pub j: usize,
    pub r: Option<usize>,
    pub i: Option<usize>,
    pub epsilon: Option<f64>,
    pub samples: usize,
    pub master_seed: u64,
}

/// One checked inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub noise_bound: f64,
    pub satisfied: bool,
    pub equality_expected: bool,
    pub parameters: Parameters,
}

impl InequalityReport {
    fn one_sided(
        kind: InequalityKind,
        lhs: f64,
        rhs: f64,
        std_error: f64,
        equality_expected: bool,
        parameters: Parameters,
    ) -> Self {
        let margin = lhs - rhs;
        let noise_bound = noise_bound(std_error, lhs, rhs);
        InequalityReport {
            kind,
            lhs,
            rhs,
            margin,
            noise_bound,
            satisfied: margin >= -noise_bound,
            equality_expected,
            parameters,
        }
    }

    /// `|margin| <= noise_bound`.
    pub fn within_noise(&self) -> bool {
        self.margin.abs() <= self.noise_bound
    }
}

fn noise_bound(std_error: f64, lhs: f64, rhs: f64) -> f64 {
    SIGMAS * std_error + ROUNDING_FLOOR * (lhs.abs() + rhs.abs())
}

/// `((1 * x_1) * x_2) * ...`, left to right, so equal inputs give equal results.
fn fold_product(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(1.0, |acc, x| acc * x)
}

/// Geometric mean; returns the common value exactly when all inputs agree.
fn geometric_mean(values: &[f64]) -> f64 {
    if values.iter().all(|&v| v == values[0]) {
        return values[0];
    }
    let logs: f64 = values.iter().map(|v| v.ln()).sum();
    (logs / values.len() as f64).exp()
}

fn ambient(bodies: &[Body]) -> Result<usize> {
    bodies
        .first()
        .map(Body::dim)
        .ok_or_else(|| invalid("need at least one body"))
}

fn params(n: usize, j: usize, samples: usize, master_seed: u64) -> Parameters {
    Parameters {
        n,
        j,
        r: None,
        i: None,
        epsilon: None,
        samples,
        master_seed,
    }
}

/// `Phi(K, L)^j >= Phi(K)^(j-1) Phi(L)`, equality iff `K` and `L` are homothetic.
pub fn check_minkowski(
    k: &Body,
    l: &Body,
    j: usize,
    samples: usize,
    master_seed: u64,
) -> Result<InequalityReport> {
    let tuples = vec![pair_tuple(k, l, j)?, vec![k.clone(); j], vec![l.clone(); j]];
    let batch = paired_batch(&tuples, j, samples, master_seed)?;
    let v = batch.values();
    let (p, a, b) = (v[0], v[1], v[2]);
    let lhs = fold_product(std::iter::repeat_n(p, j));
    let rhs = fold_product(std::iter::repeat_n(a, j - 1).chain([b]));
    let jf = j as f64;
    let grad = [
        jf * p.powi(j as i32 - 1),
        -(jf - 1.0) * if j >= 2 { a.powi(j as i32 - 2) } else { 0.0 } * b,
        -a.powi(j as i32 - 1),
    ];
    let se = batch.std_error_of(&grad);
    Ok(InequalityReport::one_sided(
        InequalityKind::Minkowski,
        lhs,
        rhs,
        se,
        k.is_homothetic_to(l),
        params(k.dim(), j, samples, master_seed),
    ))
}

/// `Phi(K_1..K_j) >= prod_{i<=r} Phi(K_i[r times], K_{r+1}..K_j)^(1/r)`.
pub fn check_af(
    bodies: &[Body],
    r: usize,
    samples: usize,
    master_seed: u64,
) -> Result<InequalityReport> {
    let n = ambient(bodies)?;
    let j = bodies.len();
    if r == 0 || r > j {
        return Err(invalid(format!("need 0 < r <= j, got r={r}, j={j}")));
    }
    let mut tuples = vec![bodies.to_vec()];
    for i in 0..r {
        let mut t = vec![bodies[i].clone(); r];
        t.extend_from_slice(&bodies[r..]);
        tuples.push(t);
    }
    let batch = paired_batch(&tuples, j, samples, master_seed)?;
    let v = batch.values();
    let lhs = v[0];
    let rhs = geometric_mean(&v[1..]);
    let mut grad = vec![1.0];
    grad.extend(v[1..].iter().map(|&f| -rhs / (r as f64 * f)));
    let se = batch.std_error_of(&grad);
    let mut p = params(n, j, samples, master_seed);
    p.r = Some(r);
    Ok(InequalityReport::one_sided(
        InequalityKind::AleksandrovFenchel,
        lhs,
        rhs,
        se,
        false,
        p,
    ))
}

/// `Phi(K_1..K_j)^j >= Phi(K_1) ... Phi(K_j)`, equality iff all are homothetic.
pub fn check_product(
    bodies: &[Body],
    samples: usize,
    master_seed: u64,
) -> Result<InequalityReport> {
    let n = ambient(bodies)?;
    let j = bodies.len();
    let mut tuples = vec![bodies.to_vec()];
    tuples.extend(bodies.iter().map(|b| vec![b.clone(); j]));
    let batch = paired_batch(&tuples, j, samples, master_seed)?;
    let v = batch.values();
    let m = v[0];
    let lhs = fold_product(std::iter::repeat_n(m, j));
    let rhs = fold_product(v[1..].iter().copied());
    let mut grad = vec![j as f64 * m.powi(j as i32 - 1)];
    grad.extend(v[1..].iter().map(|&f| -rhs / f));
    let se = batch.std_error_of(&grad);
    let homothetic = bodies.iter().all(|b| bodies[0].is_homothetic_to(b));
    Ok(InequalityReport::one_sided(
        InequalityKind::Product,
        lhs,
        rhs,
        se,
        homothetic,
        params(n, j, samples, master_seed),
    ))
}

/// `Phi(K + eps L)^(1/j) >= Phi(K)^(1/j) + eps Phi(L)^(1/j)` for `eps > 0`.
pub fn check_bm(
    k: &Body,
    l: &Body,
    epsilon: f64,
    j: usize,
    samples: usize,
    master_seed: u64,
) -> Result<InequalityReport> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let sum = k.minkowski_sum(&l.scale(epsilon)?)?;
    let tuples = vec![vec![sum; j], vec![k.clone(); j], vec![l.clone(); j]];
    let batch = paired_batch(&tuples, j, samples, master_seed)?;
    let v = batch.values();
    let inv = 1.0 / j as f64;
    let (s, a, b) = (v[0].powf(inv), v[1].powf(inv), v[2].powf(inv));
    let lhs = s;
    let rhs = a + epsilon * b;
    let grad = [inv * s / v[0], -inv * a / v[1], -epsilon * inv * b / v[2]];
    let se = batch.std_error_of(&grad);
    let mut p = params(k.dim(), j, samples, master_seed);
    p.epsilon = Some(epsilon);
    Ok(InequalityReport::one_sided(
        InequalityKind::BrunnMinkowski,
        lhs,
        rhs,
        se,
        k.is_homothetic_to(l),
        p,
    ))
}

/// `Phi(g K_1, .., g K_j) = Phi(K_1, .., K_j)` for unimodular `g`, with the two
/// sides estimated on independent seeds derived from `master_seed`.
pub fn check_sl_invariance(
    bodies: &[Body],
    g: &LinearMap,
    samples: usize,
    master_seed: u64,
) -> Result<InequalityReport> {
    check_sl_invariance_with_seeds(
        bodies,
        g,
        samples,
        derive_seed(master_seed, 1),
        derive_seed(master_seed, 2),
    )
    .map(|mut r| {
        r.parameters.master_seed = master_seed;
        r
    })
}

/// As [`check_sl_invariance`], with explicit seeds for the transformed
/// (`lhs_seed`) and original (`rhs_seed`) side.
pub fn check_sl_invariance_with_seeds(
    bodies: &[Body],
    g: &LinearMap,
    samples: usize,
    lhs_seed: u64,
    rhs_seed: u64,
) -> Result<InequalityReport> {
    let n = ambient(bodies)?;
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular(g.det()));
    }
    let j = bodies.len();
    let moved: Vec<Body> = bodies
        .iter()
        .map(|b| b.linear_image(g))
        .collect::<Result<_>>()?;
    let lhs_est = paired_batch(&[moved], j, samples, lhs_seed)?
        .into_estimates()
        .remove(0);
    let rhs_est = paired_batch(&[bodies.to_vec()], j, samples, rhs_seed)?
        .into_estimates()
        .remove(0);
    Ok(sl_report(lhs_est, rhs_est, n, j, samples, lhs_seed))
}

fn sl_report(
    lhs: Estimate,
    rhs: Estimate,
    n: usize,
    j: usize,
    samples: usize,
    seed: u64,
) -> InequalityReport {
    let se = lhs.std_error.hypot(rhs.std_error);
    let margin = lhs.value - rhs.value;
    let nb = noise_bound(se, lhs.value, rhs.value);
    InequalityReport {
        kind: InequalityKind::SlInvariance,
        lhs: lhs.value,
        rhs: rhs.value,
        margin,
        noise_bound: nb,
        satisfied: margin.abs() <= nb,
        equality_expected: true,
        parameters: params(n, j, samples, seed),
    }
}

const MAX_RETRIES: usize = 32;

/// Hull of `vertex_count` standard normal points, re-drawn until full-dimensional.
pub fn random_polytope(stream: SampleStream, dim: usize, vertex_count: usize) -> Result<Body> {
    if vertex_count < dim + 1 {
        return Err(invalid(format!(
            "need at least {} vertices in dimension {dim}, got {vertex_count}",
            dim + 1
        )));
    }
    let mut rng = stream.rng();
    for _ in 0..MAX_RETRIES {
        let pts: Vec<Vec<f64>> = (0..vertex_count)
            .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        let body = crate::geometry::convex_hull(&pts, dim)?;
        if body.is_full_dimensional() {
            return Ok(body);
        }
    }
    Err(Error::RetryExhausted(MAX_RETRIES))
}

/// `Q D U`: a Haar rotation, a diagonal factor with log-entries summing to
/// zero, and a unit upper-triangular shear.
pub fn random_sl_matrix(stream: SampleStream, n: usize) -> Result<LinearMap> {
    if n == 0 || n > crate::geometry::MAX_DIM {
        return Err(invalid(format!(
            "dimension must be in 1..={}, got {n}",
            crate::geometry::MAX_DIM
        )));
    }
    let mut rng = stream.rng();
    let q = haar_orthogonal(&mut rng, n);
    let mut logs: Vec<f64> = (0..n).map(|_| rng.random_range(-0.4..0.4)).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    logs.iter_mut().for_each(|x| *x -= mean);
    let mut du = vec![0.0; n * n];
    for row in 0..n {
        let d = logs[row].exp();
        du[row * n + row] = d;
        for col in row + 1..n {
            du[row * n + col] = d * rng.random_range(-0.5..0.5);
        }
    }
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            g[i * n + k] = (0..n).map(|m| q[i * n + m] * du[m * n + k]).sum();
        }
    }
    Ok(LinearMap::from_row_major(n, g))
}

/// Corpus description for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<InequalityKind>,
    /// Instances per suite (and per epsilon for Brunn-Minkowski).
    pub instances: usize,
    pub n: usize,
    pub j: usize,
    pub samples: usize,
    pub master_seed: u64,
    pub epsilons: Vec<f64>,
    pub r: usize,
    /// Every `k`-th instance (starting with the first) pairs homothetic
    /// bodies; 0 disables.
    pub homothetic_every: usize,
    /// Vertex counts of random polytopes are drawn from this inclusive range.
    pub vertex_range: (usize, usize),
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: InequalityKind::ALL.to_vec(),
            instances: 100,
            n: 3,
            j: 2,
            samples: 2000,
            master_seed: 0,
            epsilons: vec![1.0],
            r: 2,
            homothetic_every: 4,
            vertex_range: (4, 10),
        }
    }
}

impl SuiteConfig {
    pub fn empty() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            instances: 0,
            ..SuiteConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > crate::geometry::MAX_DIM {
            return Err(invalid(format!(
                "n must be in 1..={}, got {}",
                crate::geometry::MAX_DIM,
                self.n
            )));
        }
        if self.j == 0 || self.j > self.n {
            return Err(invalid(format!(
                "need 1 <= j <= n, got j={}, n={}",
                self.j, self.n
            )));
        }
        if self.suites.contains(&InequalityKind::AleksandrovFenchel)
            && (self.r == 0 || self.r > self.j)
        {
            return Err(invalid(format!(
                "need 0 < r <= j, got r={}, j={}",
                self.r, self.j
            )));
        }
        if self.suites.contains(&InequalityKind::BrunnMinkowski)
            && self.epsilons.iter().any(|e| !(*e > 0.0))
        {
            return Err(invalid("epsilon must be positive"));
        }
        let (lo, hi) = self.vertex_range;
        if lo < self.n + 1 || hi < lo {
            return Err(invalid(format!(
                "vertex range {lo}..={hi} invalid for n={}",
                self.n
            )));
        }
        if self.samples < 2 && self.j < self.n {
            return Err(invalid("need at least 2 samples"));
        }
        Ok(())
    }
}

/// An instance that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceError {
    pub kind: InequalityKind,
    pub instance: usize,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub reports: Vec<InequalityReport>,
    pub satisfied: usize,
    pub violated: usize,
    pub errors: Vec<InstanceError>,
    pub corpus_seed: u64,
}

impl SuiteReport {
    pub fn all_satisfied(&self) -> bool {
        self.violated == 0 && self.errors.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Instance {
    kind: InequalityKind,
    index: usize,
    epsilon: Option<f64>,
}

struct Corpus<'a> {
    config: &'a SuiteConfig,
    stream: SampleStream,
}

impl Corpus<'_> {
    fn polytope(&self, tag: u64) -> Result<Body> {
        let s = self.stream.child(tag);
        let (lo, hi) = self.config.vertex_range;
        let count = lo + (derive_seed(s.master_seed, 0xC0DE) % (hi - lo + 1) as u64) as usize;
        random_polytope(s, self.config.n, count)
    }

    /// A random homothet `a K + v` with `a` in `[0.5, 2]`.
    fn homothet(&self, k: &Body, tag: u64) -> Result<Body> {
        let mut rng = self.stream.child(tag).rng();
        let a: f64 = rng.random_range(0.5..2.0);
        let v: Vec<f64> = (0..self.config.n)
            .map(|_| rng.sample(StandardNormal))
            .collect();
        k.scale(a)?.translate(&v)
    }

    fn bodies(&self, count: usize, homothetic: bool) -> Result<Vec<Body>> {
        let first = self.polytope(100)?;
        let mut out = vec![first];
        for t in 1..count as u64 {
            let b = if homothetic {
                self.homothet(&out[0], 200 + t)?
            } else {
                self.polytope(100 + t)?
            };
            out.push(b);
        }
        Ok(out)
    }
}

fn run_instance(config: &SuiteConfig, inst: Instance) -> Result<InequalityReport> {
    let stream = SampleStream::new(config.master_seed, inst.index as u64).child(inst.kind.tag());
    let corpus = Corpus { config, stream };
    let seed = derive_seed(stream.master_seed, 0xE57);
    let homothetic =
        config.homothetic_every > 0 && inst.index.is_multiple_of(config.homothetic_every);
    let (j, samples) = (config.j, config.samples);
    match inst.kind {
        InequalityKind::Minkowski => {
            let b = corpus.bodies(2, homothetic)?;
            check_minkowski(&b[0], &b[1], j, samples, seed)
        }
        InequalityKind::Product => {
            let b = corpus.bodies(j, homothetic)?;
            check_product(&b, samples, seed)
        }
        InequalityKind::BrunnMinkowski => {
            let b = corpus.bodies(2, homothetic)?;
            let eps = inst.epsilon.unwrap_or(1.0);
            check_bm(&b[0], &b[1], eps, j, samples, seed)
        }
        InequalityKind::AleksandrovFenchel => {
            let b = corpus.bodies(j, false)?;
            check_af(&b, config.r, samples, seed)
        }
        InequalityKind::SlInvariance => {
            let b = corpus.bodies(j, false)?;
            let g = random_sl_matrix(stream.child(300), config.n)?;
            check_sl_invariance(&b, &g, samples, seed)
        }
    }
}

/// Run every configured checker over its seeded corpus. Deterministic in the
/// configuration; output is ordered by suite, then epsilon, then instance.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut plan = Vec::new();
    for &kind in &config.suites {
        let eps: Vec<Option<f64>> = if kind == InequalityKind::BrunnMinkowski {
            config.epsilons.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for e in eps {
            for index in 0..config.instances {
                plan.push(Instance {
                    kind,
                    index,
                    epsilon: e,
                });
            }
        }
    }
    let results: Vec<Result<InequalityReport>> = plan
        .par_iter()
        .map(|&inst| run_instance(config, inst))
        .collect();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (inst, res) in plan.iter().zip(results) {
        match res {
            Ok(r) => reports.push(r),
            Err(error) => errors.push(InstanceError {
                kind: inst.kind,
                instance: inst.index,
                error,
            }),
        }
    }
    let satisfied = reports.iter().filter(|r| r.satisfied).count();
    Ok(SuiteReport {
        violated: reports.len() - satisfied,
        satisfied,
        reports,
        errors,
        corpus_seed: config.master_seed,
    })
}
