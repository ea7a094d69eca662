//! Haar-distributed subspaces of `R^n` and orthogonal projection onto them.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Ball, Body, Polytope};
use crate::rng::SampleStream;

/// A `j`-dimensional linear subspace of `R^n` with an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    /// Row-major `n x j`; column `c` is the `c`-th basis vector.
    basis: Vec<f64>,
}

impl Subspace {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(row, col)` of the `n x j` basis matrix.
    pub fn basis_entry(&self, row: usize, col: usize) -> f64 {
        self.basis[row * self.dim + col]
    }

    pub fn basis_vector(&self, col: usize) -> Vec<f64> {
        (0..self.ambient)
            .map(|r| self.basis_entry(r, col))
            .collect()
    }

    /// Coordinates of `x` in the basis, i.e. `basis^T x`.
    pub fn coordinates(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.coordinates_into(x, &mut out);
        out
    }

    fn coordinates_into(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (r, xr) in x.iter().enumerate() {
            let row = &self.basis[r * self.dim..(r + 1) * self.dim];
            for (o, b) in out.iter_mut().zip(row) {
                *o += b * xr;
            }
        }
    }

    /// Largest entry of `|basis^T basis - I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.dim {
            for b in 0..self.dim {
                let g: f64 = (0..self.ambient)
                    .map(|r| self.basis_entry(r, a) * self.basis_entry(r, b))
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        worst
    }
}

/// Orthonormalize an `n x j` Gaussian matrix with the sign convention that
/// the triangular factor has a positive diagonal. Returns row-major `n x j`.
fn orthonormalize_gaussian<R: Rng>(rng: &mut R, n: usize, j: usize) -> Vec<f64> {
    // column-major fill so the draw order is column by column
    let g = DMatrix::<f64>::from_fn(n, j, |_, _| 0.0);
    let mut g = g;
    for c in 0..j {
        for r in 0..n {
            g[(r, c)] = rng.sample(StandardNormal);
        }
    }
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = vec![0.0; n * j];
    for c in 0..j {
        let sign = if r[(c, c)] < 0.0 { -1.0 } else { 1.0 };
        for row in 0..n {
            out[row * j + c] = sign * q[(row, c)];
        }
    }
    out
}

/// A Haar-random rotation of `R^n` (determinant `+1`), row-major.
pub(crate) fn haar_orthogonal<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut q = orthonormalize_gaussian(rng, n, n);
    let det = crate::linalg::det(&q, n);
    if det < 0.0 {
        for row in 0..n {
            q[row * n] = -q[row * n];
        }
    }
    q
}

/// Draw from the normalized Haar measure on `G(n, j)` using the substream
/// `stream`.
pub fn haar_sample(stream: SampleStream, n: usize, j: usize) -> Result<Subspace> {
    if j == 0 || j > n {
        return Err(invalid(format!(
            "subspace dimension must satisfy 1 <= j <= n, got j={j}, n={n}"
        )));
    }
    let mut rng = stream.rng();
    Ok(Subspace {
        ambient: n,
        dim: j,
        basis: orthonormalize_gaussian(&mut rng, n, j),
    })
}

pub(crate) fn project_polytope(p: &Polytope, s: &Subspace) -> Polytope {
    let j = s.dim;
    let mut coords = vec![0.0; p.vertex_count() * j];
    for (v, out) in p.vertices().zip(coords.chunks_exact_mut(j)) {
        s.coordinates_into(v, out);
    }
    Polytope::from_flat(&coords, j)
}

/// Orthogonal projection `K|xi`, in the coordinates of the subspace basis.
pub fn project(body: &Body, s: &Subspace) -> Result<Body> {
    if body.dim() != s.ambient {
        return Err(Error::DimensionMismatch {
            expected: s.ambient,
            found: body.dim(),
        });
    }
    Ok(match body {
        Body::Polytope(p) => Body::Polytope(project_polytope(p, s)),
        Body::Ball(b) => Body::Ball(Ball {
            dim: s.dim,
            radius: b.radius,
            center: s.coordinates(&b.center),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coordinate_subspace(n: usize, axes: &[usize]) -> Subspace {
        let j = axes.len();
        let mut basis = vec![0.0; n * j];
        for (c, &a) in axes.iter().enumerate() {
            basis[a * j + c] = 1.0;
        }
        Subspace {
            ambient: n,
            dim: j,
            basis,
        }
    }

    #[test]
    fn orthonormal_columns() {
        for (n, j) in [(3, 1), (3, 2), (3, 3), (5, 2), (8, 4)] {
            for i in 0..20 {
                let s = haar_sample(SampleStream::new(9, i), n, j).unwrap();
                assert!(s.orthonormality_residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn full_dimension_gives_a_rotation() {
        let s = haar_sample(SampleStream::new(1, 2), 3, 3).unwrap();
        let m: Vec<f64> = (0..9).map(|k| s.basis_entry(k / 3, k % 3)).collect();
        assert!((crate::linalg::det(&m, 3).abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(haar_sample(SampleStream::new(0, 0), 3, 0).is_err());
        assert!(haar_sample(SampleStream::new(0, 0), 3, 4).is_err());
    }

    #[test]
    fn deterministic_per_index() {
        let a = haar_sample(SampleStream::new(5, 17), 4, 2).unwrap();
        let b = haar_sample(SampleStream::new(5, 17), 4, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, haar_sample(SampleStream::new(5, 18), 4, 2).unwrap());
    }

    #[test]
    fn projection_examples() {
        let cube = Body::cube(3, 1.0).unwrap();
        let sq = project(&cube, &coordinate_subspace(3, &[0, 1])).unwrap();
        assert_eq!(sq, Body::cube(2, 1.0).unwrap());

        let ball = Body::unit_ball(3).unwrap();
        let s = haar_sample(SampleStream::new(3, 3), 3, 2).unwrap();
        let disk = project(&ball, &s).unwrap();
        assert!(matches!(&disk, Body::Ball(b) if b.radius == 1.0 && b.dim == 2));
        assert!((disk.volume() - std::f64::consts::PI).abs() < 1e-15);

        let simplex = Body::simplex(3).unwrap();
        let seg = project(&simplex, &coordinate_subspace(3, &[0])).unwrap();
        assert_eq!(seg.volume(), 1.0);

        assert!(project(&Body::cube(2, 1.0).unwrap(), &s).is_err());
    }
}
