//! Affine quermassintegrals `Phi_{n-j}(K)` and mixed affine quermassintegrals
//! `Phi_{n-j}(K_1, ..., K_j)`.
//!
//! Both are `-n`-th power means over the Grassmannian:
//!
//! ```text
//! Phi_{n-j}(K_1..K_j) = omega_n * [ E_xi (V(K_1|xi, .., K_j|xi) / omega_j)^(-n) ]^(-1/n)
//! ```
//!
//! with `xi` Haar-distributed on `G(n, j)`. The expectation is estimated from
//! `N` replayable subspace draws; the standard error comes from the sample
//! variance of the integrand pushed through the `-1/n` power (delta method).
//!
//! Every term of a batch ([`paired_batch`]) sees the same subspaces, so the
//! noise common to the terms of an inequality cancels.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{ball_approx, Body, Polytope};
use crate::grassmann::{haar_sample, project_polytope};
use crate::linalg::{compensated_sum, CompensatedSum};
use crate::mixedvol::{mixed_volume, mixed_volume_of};
use crate::rng::{derive_seed, SampleStream};

pub use crate::geometry::unit_ball_volume;

/// Tag mixed into the master seed to place the ball approximant used by the
/// `i`-th mixed quermassintegrals.
const BALL_SEED_TAG: u64 = 0xB411;

/// A Monte Carlo estimate of a (mixed) affine quermassintegral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    /// Number of subspace draws; 0 when the value was obtained without sampling.
    pub samples: usize,
    pub ambient: usize,
    pub subspace_dim: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    /// All slots hold the same analytic ball of this radius.
    Ball(f64),
    /// All slots hold the same polytope: the projection volume is used directly.
    Same(usize),
    Mixed,
}

struct Term {
    kernel: Kernel,
    slots: Vec<usize>,
}

/// A common-random-number batch: one estimate per tuple plus the per-sample
/// integrand values needed to propagate errors of functions of several terms.
#[derive(Debug, Clone)]
pub struct PairedBatch {
    estimates: Vec<Estimate>,
    /// `integrands[t][m]` is `(V_m / omega_j)^(-n)` for tuple `t`, sample `m`.
    integrands: Vec<Vec<f64>>,
    means: Vec<f64>,
}

impl PairedBatch {
    pub fn estimates(&self) -> &[Estimate] {
        &self.estimates
    }

    pub fn into_estimates(self) -> Vec<Estimate> {
        self.estimates
    }

    pub fn values(&self) -> Vec<f64> {
        self.estimates.iter().map(|e| e.value).collect()
    }

    /// Delta-method standard error of `f(Phi_1, ..., Phi_T)` given the
    /// gradient `d f / d Phi_t`, using the full sample covariance of the
    /// paired integrands.
    pub fn std_error_of(&self, gradient: &[f64]) -> f64 {
        assert_eq!(
            gradient.len(),
            self.estimates.len(),
            "one partial derivative per term"
        );
        let sampled: Vec<usize> = (0..self.estimates.len())
            .filter(|&t| self.estimates[t].samples > 0)
            .collect();
        let Some(&first) = sampled.first() else {
            return 0.0;
        };
        let n_samples = self.integrands[first].len();
        // d Phi / d mean = -Phi / (n * mean)
        let weights: Vec<(usize, f64)> = sampled
            .iter()
            .map(|&t| {
                let e = &self.estimates[t];
                (
                    t,
                    -gradient[t] * e.value / (e.ambient as f64 * self.means[t]),
                )
            })
            .collect();
        let combined: Vec<f64> = (0..n_samples)
            .map(|m| compensated_sum(weights.iter().map(|&(t, w)| w * self.integrands[t][m])))
            .collect();
        sample_std_error(&combined)
    }
}

/// Standard error of the mean; exactly zero when all values are identical.
fn sample_std_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 || values.iter().all(|&v| v == values[0]) {
        return 0.0;
    }
    let mean = compensated_sum(values.iter().copied()) / n as f64;
    let var = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean))) / (n - 1) as f64;
    (var / n as f64).sqrt()
}

fn classify(tuple: &[Body], unique: &mut Vec<Polytope>) -> Result<Term> {
    let first = &tuple[0];
    let all_same = tuple.iter().all(|b| b == first);
    if let Body::Ball(b) = first {
        if all_same {
            return Ok(Term {
                kernel: Kernel::Ball(b.radius),
                slots: Vec::new(),
            });
        }
    }
    let mut slots = Vec::with_capacity(tuple.len());
    for body in tuple {
        let p = body.as_polytope().ok_or(Error::UnsupportedOperand(
            "a ball mixed with other bodies must be replaced by ball_approx",
        ))?;
        let idx = match unique.iter().position(|u| u == p) {
            Some(i) => i,
            None => {
                unique.push(p.clone());
                unique.len() - 1
            }
        };
        slots.push(idx);
    }
    let kernel = if all_same {
        Kernel::Same(slots[0])
    } else {
        Kernel::Mixed
    };
    Ok(Term { kernel, slots })
}

fn validate(tuples: &[Vec<Body>], j: usize) -> Result<usize> {
    let n = tuples[0]
        .first()
        .map(Body::dim)
        .ok_or_else(|| invalid("a tuple must hold at least one body"))?;
    if j == 0 || j > n {
        return Err(invalid(format!("need 1 <= j <= n, got j={j}, n={n}")));
    }
    for tuple in tuples {
        if tuple.len() != j {
            return Err(invalid(format!(
                "expected {j} bodies per tuple, got {}",
                tuple.len()
            )));
        }
        for b in tuple {
            if b.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.dim(),
                });
            }
            let ad = b.affine_dim();
            if ad < n {
                return Err(Error::DegenerateBody {
                    affine_dim: ad,
                    dim: n,
                });
            }
        }
    }
    Ok(n)
}

/// Evaluate every tuple against the same subspace sequence `xi_0 .. xi_{N-1}`.
pub fn paired_batch(
    tuples: &[Vec<Body>],
    j: usize,
    samples: usize,
    master_seed: u64,
) -> Result<PairedBatch> {
    if tuples.is_empty() {
        return Ok(PairedBatch {
            estimates: Vec::new(),
            integrands: Vec::new(),
            means: Vec::new(),
        });
    }
    let n = validate(tuples, j)?;
    let mut unique = Vec::new();
    let terms: Vec<Term> = tuples
        .iter()
        .map(|t| classify(t, &mut unique))
        .collect::<Result<_>>()?;
    let omega_n = unit_ball_volume(n);
    let omega_j = unit_ball_volume(j);

    if j == n {
        // G(n, n) is a single point: Phi_0 is the (mixed) volume itself.
        let mut estimates = Vec::with_capacity(tuples.len());
        for (tuple, term) in tuples.iter().zip(&terms) {
            let value = match term.kernel {
                Kernel::Ball(r) => omega_n * r.powi(n as i32),
                Kernel::Same(i) => unique[i].volume(),
                Kernel::Mixed => mixed_volume(tuple)?,
            };
            estimates.push(Estimate {
                value,
                std_error: 0.0,
                samples: 0,
                ambient: n,
                subspace_dim: j,
                master_seed,
            });
        }
        return Ok(PairedBatch {
            estimates,
            integrands: vec![Vec::new(); tuples.len()],
            means: vec![1.0; tuples.len()],
        });
    }

    if samples < 2 {
        return Err(invalid(format!("need at least 2 samples, got {samples}")));
    }

    let per_sample: Vec<Result<Vec<f64>>> = (0..samples as u64)
        .into_par_iter()
        .map(|m| {
            let xi = haar_sample(SampleStream::new(master_seed, m), n, j)?;
            let projected: Vec<Polytope> =
                unique.iter().map(|p| project_polytope(p, &xi)).collect();
            terms
                .iter()
                .map(|term| {
                    let v = match term.kernel {
                        Kernel::Ball(r) => omega_j * r.powi(j as i32),
                        Kernel::Same(i) => projected[i].volume(),
                        Kernel::Mixed => {
                            let refs: Vec<&Polytope> =
                                term.slots.iter().map(|&i| &projected[i]).collect();
                            mixed_volume_of(&refs).value
                        }
                    };
                    if !(v > 0.0) || !v.is_finite() {
                        return Err(Error::DegenerateSample { index: m, value: v });
                    }
                    Ok((omega_j / v).powi(n as i32))
                })
                .collect()
        })
        .collect();

    let mut integrands = vec![Vec::with_capacity(samples); tuples.len()];
    for row in per_sample {
        for (t, x) in row?.into_iter().enumerate() {
            integrands[t].push(x);
        }
    }

    let mut estimates = Vec::with_capacity(tuples.len());
    let mut means = Vec::with_capacity(tuples.len());
    for xs in &integrands {
        let mut acc = CompensatedSum::default();
        for &x in xs {
            acc.add(x);
        }
        let mean = acc.value() / samples as f64;
        let value = omega_n * mean.powf(-1.0 / n as f64);
        let std_error = value / (n as f64 * mean) * sample_std_error(xs);
        estimates.push(Estimate {
            value,
            std_error,
            samples,
            ambient: n,
            subspace_dim: j,
            master_seed,
        });
        means.push(mean);
    }
    Ok(PairedBatch {
        estimates,
        integrands,
        means,
    })
}

/// Estimates for several body tuples on one shared subspace sequence, in
/// input order.
pub fn paired_phi_batch(
    tuples: &[Vec<Body>],
    j: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Vec<Estimate>> {
    Ok(paired_batch(tuples, j, samples, master_seed)?.into_estimates())
}

/// Mixed affine quermassintegral `Phi_{n-j}(K_1, ..., K_j)` with `j = bodies.len()`.
pub fn phi_mixed(bodies: &[Body], samples: usize, master_seed: u64) -> Result<Estimate> {
    if bodies.is_empty() {
        return Err(invalid("phi_mixed needs at least one body"));
    }
    let mut batch = paired_phi_batch(&[bodies.to_vec()], bodies.len(), samples, master_seed)?;
    Ok(batch.remove(0))
}

/// Affine quermassintegral `Phi_{n-j}(K)`. `j = 0` gives `omega_n` and `j = n`
/// gives `vol(K)`, both without sampling.
pub fn phi(body: &Body, j: usize, samples: usize, master_seed: u64) -> Result<Estimate> {
    let n = body.dim();
    if j > n {
        return Err(invalid(format!("need 0 <= j <= n, got j={j}, n={n}")));
    }
    if j == 0 {
        return Ok(Estimate {
            value: unit_ball_volume(n),
            std_error: 0.0,
            samples: 0,
            ambient: n,
            subspace_dim: 0,
            master_seed,
        });
    }
    phi_mixed(&vec![body.clone(); j], samples, master_seed)
}

/// `Phi_{n-j}(K, L)`: `K` in the first `j - 1` slots, `L` in the last.
pub fn phi_pair(
    k: &Body,
    l: &Body,
    j: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Estimate> {
    phi_mixed(&pair_tuple(k, l, j)?, samples, master_seed)
}

pub(crate) fn pair_tuple(k: &Body, l: &Body, j: usize) -> Result<Vec<Body>> {
    if j == 0 {
        return Err(invalid("phi_pair needs j >= 1"));
    }
    let mut t = vec![k.clone(); j - 1];
    t.push(l.clone());
    Ok(t)
}

/// The polytope standing in for the unit ball `B` in [`phi_ith`] and
/// [`phi_ith_mixed`] for a given master seed.
pub fn ith_ball(n: usize, ball_points: usize, master_seed: u64) -> Result<Body> {
    ball_approx(n, 1.0, ball_points, derive_seed(master_seed, BALL_SEED_TAG))
}

fn check_ith(n: usize, i: usize, j: usize) -> Result<()> {
    if !(i < j && j <= n) {
        return Err(invalid(format!(
            "need 0 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(())
}

/// `i`-th mixed affine quermassintegral of `K` and `L`: `j - i - 1` copies of
/// `K`, one `L`, then `i` copies of the ball approximant.
pub fn phi_ith_mixed(
    k: &Body,
    l: &Body,
    i: usize,
    j: usize,
    ball_points: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Estimate> {
    let n = k.dim();
    check_ith(n, i, j)?;
    let mut t = vec![k.clone(); j - i - 1];
    t.push(l.clone());
    if i > 0 {
        let b = ith_ball(n, ball_points, master_seed)?;
        t.extend(std::iter::repeat_n(b, i));
    }
    phi_mixed(&t, samples, master_seed)
}

/// `i`-th mixed affine quermassintegral of `K`: `j - i` copies of `K`, then
/// `i` copies of the ball approximant.
pub fn phi_ith(
    k: &Body,
    i: usize,
    j: usize,
    ball_points: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Estimate> {
    let n = k.dim();
    check_ith(n, i, j)?;
    let mut t = vec![k.clone(); j - i];
    if i > 0 {
        let b = ith_ball(n, ball_points, master_seed)?;
        t.extend(std::iter::repeat_n(b, i));
    }
    phi_mixed(&t, samples, master_seed)
}

/// `Phi_1(K)` for a planar body by deterministic quadrature over the angle of
/// the projection line:
///
/// ```text
/// omega_2 * [ (1/pi) int_0^pi (w_K(t) / omega_1)^(-2) dt ]^(-1/2)
/// ```
///
/// `w_K` is the width in direction `t`. The interval is split at every angle
/// where `w_K` has a kink and composite Simpson is applied on each piece, with
/// `quadrature_points` intervals distributed by length.
pub fn phi_exact_2d(body: &Body, quadrature_points: usize) -> Result<f64> {
    if body.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: body.dim(),
        });
    }
    if quadrature_points < 16 {
        return Err(invalid(format!(
            "need at least 16 quadrature points, got {quadrature_points}"
        )));
    }
    let p = match body {
        Body::Ball(b) if b.radius > 0.0 => return Ok(PI * b.radius),
        Body::Ball(_) => {
            return Err(Error::DegenerateBody {
                affine_dim: 0,
                dim: 2,
            })
        }
        Body::Polytope(p) => p,
    };
    if p.affine_dim() < 2 {
        return Err(Error::DegenerateBody {
            affine_dim: p.affine_dim(),
            dim: 2,
        });
    }
    let verts: Vec<&[f64]> = p.vertices().collect();
    let width = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &verts {
            let x = v[0] * c + v[1] * s;
            lo = lo.min(x);
            hi = hi.max(x);
        }
        hi - lo
    };
    // w has kinks where the direction is orthogonal to a vertex difference.
    let mut breaks = vec![0.0, PI];
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            let e = [verts[b][0] - verts[a][0], verts[b][1] - verts[a][1]];
            let t = (e[1].atan2(e[0]) + PI / 2.0).rem_euclid(PI);
            breaks.push(t);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let f = |t: f64| {
        let r = 2.0 / width(t);
        r * r
    };
    let mut total = CompensatedSum::default();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = b - a;
        if len <= 0.0 {
            continue;
        }
        let mut intervals = ((quadrature_points as f64 * len / PI).round() as usize).max(2);
        if intervals % 2 == 1 {
            intervals += 1;
        }
        let h = len / intervals as f64;
        let mut acc = CompensatedSum::default();
        acc.add(f(a));
        acc.add(f(b));
        for k in 1..intervals {
            let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc.add(weight * f(a + k as f64 * h));
        }
        total.add(acc.value() * h / 3.0);
    }
    let mean = total.value() / PI;
    Ok(PI / mean.sqrt())
}
