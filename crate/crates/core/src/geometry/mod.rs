//! Convex bodies: V-polytopes with hull-reduced vertex lists, and analytic
//! Euclidean balls.

mod hull;

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::linalg;
use crate::rng::SampleStream;

/// Largest ambient dimension the hull kernel accepts.
pub const MAX_DIM: usize = 8;

/// Volume of the `d`-dimensional unit ball, `pi^(d/2) / Gamma(d/2 + 1)`.
pub fn unit_ball_volume(d: usize) -> f64 {
    // omega_d = omega_{d-2} * 2 pi / d
    let mut w = if d.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if d.is_multiple_of(2) { 2 } else { 3 };
    while k <= d {
        w *= 2.0 * PI / k as f64;
        k += 2;
    }
    w
}

/// A convex polytope stored by its extreme points.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    coords: Vec<f64>,
    affine_dim: usize,
    volume: f64,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Row-major vertex coordinates.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Hull of row-major coordinates. The caller guarantees a nonempty,
    /// well-shaped buffer.
    pub(crate) fn from_flat(coords: &[f64], dim: usize) -> Polytope {
        let h = hull::convex_hull(coords, dim);
        let mut kept = Vec::with_capacity(h.vertices.len() * dim);
        for &i in &h.vertices {
            kept.extend_from_slice(&coords[i * dim..(i + 1) * dim]);
        }
        Polytope {
            dim,
            coords: kept,
            affine_dim: h.affine_dim,
            volume: h.volume,
        }
    }

    fn vertex_centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for v in self.vertices() {
            for (a, x) in c.iter_mut().zip(v) {
                *a += x;
            }
        }
        let m = self.vertex_count() as f64;
        c.iter_mut().for_each(|x| *x /= m);
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub dim: usize,
    pub radius: f64,
    pub center: Vec<f64>,
}

impl Ball {
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim) * self.radius.powi(self.dim as i32)
    }
}

/// A convex body in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Polytope(Polytope),
    Ball(Ball),
}

impl Body {
    pub fn ball(dim: usize, radius: f64, center: Vec<f64>) -> Result<Body> {
        check_dim(dim)?;
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(invalid(format!(
                "ball radius must be a finite nonnegative number, got {radius}"
            )));
        }
        if center.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: center.len(),
            });
        }
        Ok(Body::Ball(Ball {
            dim,
            radius,
            center,
        }))
    }

    pub fn unit_ball(dim: usize) -> Result<Body> {
        Body::ball(dim, 1.0, vec![0.0; dim])
    }

    /// The cube `[0, side]^dim`.
    pub fn cube(dim: usize, side: f64) -> Result<Body> {
        check_dim(dim)?;
        if !(side >= 0.0) || !side.is_finite() {
            return Err(invalid(format!(
                "cube side must be a finite nonnegative number, got {side}"
            )));
        }
        let mut pts = Vec::with_capacity((1 << dim) * dim);
        for mask in 0..(1usize << dim) {
            for b in 0..dim {
                pts.push(if (mask >> b) & 1 == 1 { side } else { 0.0 });
            }
        }
        Ok(Body::Polytope(Polytope::from_flat(&pts, dim)))
    }

    /// The standard simplex `conv{0, e_1, ..., e_dim}`.
    pub fn simplex(dim: usize) -> Result<Body> {
        check_dim(dim)?;
        let mut pts = vec![0.0; dim];
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            pts.extend(e);
        }
        Ok(Body::Polytope(Polytope::from_flat(&pts, dim)))
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.dim,
            Body::Ball(b) => b.dim,
        }
    }

    pub fn is_ball(&self) -> bool {
        matches!(self, Body::Ball(_))
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Body::Polytope(p) => Some(p),
            Body::Ball(_) => None,
        }
    }

    /// `d`-dimensional Lebesgue volume; zero for lower-dimensional bodies.
    /// Number of vertices; `None` for a ball.
    pub fn vertex_count(&self) -> Option<usize> {
        self.as_polytope().map(Polytope::vertex_count)
    }

    pub fn volume(&self) -> f64 {
        match self {
            Body::Polytope(p) => p.volume,
            Body::Ball(b) => b.volume(),
        }
    }

    pub fn affine_dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.affine_dim,
            Body::Ball(b) if b.radius > 0.0 => b.dim,
            Body::Ball(_) => 0,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim()
    }

    pub fn minkowski_sum(&self, other: &Body) -> Result<Body> {
        let (a, b) = match (self, other) {
            (Body::Polytope(a), Body::Polytope(b)) => (a, b),
            _ => {
                return Err(Error::UnsupportedOperand(
                    "Minkowski sums need polytopes; use ball_approx for balls",
                ))
            }
        };
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch {
                expected: a.dim,
                found: b.dim,
            });
        }
        Ok(Body::Polytope(minkowski_sum_polytopes(a, b)))
    }

    pub fn scale(&self, factor: f64) -> Result<Body> {
        if !(factor >= 0.0) || !factor.is_finite() {
            return Err(invalid(format!(
                "scale factor must be a finite nonnegative number, got {factor}"
            )));
        }
        Ok(match self {
            Body::Ball(b) => Body::Ball(Ball {
                dim: b.dim,
                radius: b.radius * factor,
                center: b.center.iter().map(|x| x * factor).collect(),
            }),
            Body::Polytope(p) if factor == 0.0 => Body::Polytope(Polytope {
                dim: p.dim,
                coords: vec![0.0; p.dim],
                affine_dim: 0,
                volume: 0.0,
            }),
            Body::Polytope(p) => Body::Polytope(Polytope {
                dim: p.dim,
                coords: p.coords.iter().map(|x| x * factor).collect(),
                affine_dim: p.affine_dim,
                volume: p.volume * factor.powi(p.dim as i32),
            }),
        })
    }

    pub fn translate(&self, v: &[f64]) -> Result<Body> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(match self {
            Body::Ball(b) => Body::Ball(Ball {
                dim: b.dim,
                radius: b.radius,
                center: b.center.iter().zip(v).map(|(c, t)| c + t).collect(),
            }),
            Body::Polytope(p) => Body::Polytope(Polytope {
                dim: p.dim,
                coords: p
                    .coords
                    .chunks_exact(p.dim)
                    .flat_map(|q| q.iter().zip(v).map(|(x, t)| x + t))
                    .collect(),
                affine_dim: p.affine_dim,
                volume: p.volume,
            }),
        })
    }

    pub fn linear_image(&self, map: &LinearMap) -> Result<Body> {
        if map.dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: map.dim,
            });
        }
        match self {
            Body::Polytope(p) => {
                let mut out = Vec::with_capacity(p.coords.len());
                for v in p.vertices() {
                    out.extend(map.apply(v));
                }
                Ok(Body::Polytope(Polytope::from_flat(&out, p.dim)))
            }
            Body::Ball(b) => match map.similarity_ratio() {
                Some(ratio) => Ok(Body::Ball(Ball {
                    dim: b.dim,
                    radius: b.radius * ratio,
                    center: map.apply(&b.center),
                })),
                None => Err(Error::UnsupportedOperand(
                    "the image of a ball under a non-similarity is not a ball",
                )),
            },
        }
    }

    /// Whether `other` equals `a * self + v` for some `a > 0`, decided on the
    /// vertex sets after centroid centering and scale normalization, with
    /// matching tolerance `1e-9`.
    pub fn is_homothetic_to(&self, other: &Body) -> bool {
        match (self, other) {
            (Body::Ball(a), Body::Ball(b)) => a.dim == b.dim && a.radius > 0.0 && b.radius > 0.0,
            (Body::Polytope(a), Body::Polytope(b)) => polytopes_homothetic(a, b, 1e-9),
            _ => false,
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(invalid(format!(
            "dimension must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

pub(crate) fn minkowski_sum_polytopes(a: &Polytope, b: &Polytope) -> Polytope {
    let d = a.dim;
    let mut pts = Vec::with_capacity(a.vertex_count() * b.vertex_count() * d);
    for u in a.vertices() {
        for v in b.vertices() {
            pts.extend(u.iter().zip(v).map(|(x, y)| x + y));
        }
    }
    Polytope::from_flat(&pts, d)
}

fn polytopes_homothetic(a: &Polytope, b: &Polytope, tol: f64) -> bool {
    if a.dim != b.dim || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let normalize = |p: &Polytope| -> Option<Vec<Vec<f64>>> {
        let c = p.vertex_centroid();
        let pts: Vec<Vec<f64>> = p
            .vertices()
            .map(|v| v.iter().zip(&c).map(|(x, y)| x - y).collect())
            .collect();
        let rms = (pts.iter().map(|q| linalg::dot(q, q)).sum::<f64>() / pts.len() as f64).sqrt();
        if rms == 0.0 {
            return None;
        }
        Some(
            pts.into_iter()
                .map(|q| q.into_iter().map(|x| x / rms).collect())
                .collect(),
        )
    };
    let (Some(pa), Some(pb)) = (normalize(a), normalize(b)) else {
        // two single points are homothetic only in the degenerate sense
        return a.vertex_count() == 1;
    };
    // Greedy nearest matching; with tolerance far below the vertex separation
    // this coincides with the optimal pairing.
    let mut used = vec![false; pb.len()];
    for u in &pa {
        let mut best = (f64::INFINITY, usize::MAX);
        for (i, v) in pb.iter().enumerate() {
            if used[i] {
                continue;
            }
            let d: f64 = u
                .iter()
                .zip(v)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            if d < best.0 {
                best = (d, i);
            }
        }
        if best.0 > tol {
            return false;
        }
        used[best.1] = true;
    }
    true
}

/// Hull of a list of points in `R^dim`.
pub fn convex_hull(points: &[Vec<f64>], dim: usize) -> Result<Body> {
    check_dim(dim)?;
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut flat = Vec::with_capacity(points.len() * dim);
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(invalid("point coordinates must be finite"));
        }
        flat.extend_from_slice(p);
    }
    Ok(Body::Polytope(Polytope::from_flat(&flat, dim)))
}

/// Polytope inscribed in the radius-`radius` ball: the hull of `points`
/// quasi-uniform points on the sphere, deterministic in `seed`.
///
/// In the plane the points form a regular polygon with a seeded phase; in
/// `R^3` a Fibonacci lattice under a seeded rotation; in higher dimensions
/// seeded Gaussian directions (re-drawn until full-dimensional).
pub fn ball_approx(dim: usize, radius: f64, points: usize, seed: u64) -> Result<Body> {
    check_dim(dim)?;
    if points < dim + 1 {
        return Err(invalid(format!(
            "ball_approx needs at least {} points in dimension {dim}, got {points}",
            dim + 1
        )));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(invalid(format!(
            "ball_approx radius must be positive, got {radius}"
        )));
    }
    let mut rng = SampleStream::new(seed, 0).rng();
    let mut pts = Vec::with_capacity(points * dim);
    match dim {
        1 => pts.extend([-radius, radius]),
        2 => {
            let phase: f64 = rng.random::<f64>() * 2.0 * PI / points as f64;
            for i in 0..points {
                let t = phase + 2.0 * PI * i as f64 / points as f64;
                pts.extend([radius * t.cos(), radius * t.sin()]);
            }
        }
        3 => {
            let rot = crate::grassmann::haar_orthogonal(&mut rng, 3);
            let golden = PI * (3.0 - 5f64.sqrt());
            for i in 0..points {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / points as f64;
                let r = (1.0 - z * z).sqrt();
                let t = golden * i as f64;
                let p = [r * t.cos(), r * t.sin(), z];
                for row in 0..3 {
                    let s: f64 = (0..3).map(|c| rot[row * 3 + c] * p[c]).sum();
                    pts.push(radius * s);
                }
            }
        }
        _ => {
            for attempt in 0..64 {
                pts.clear();
                for _ in 0..points {
                    let g: Vec<f64> = (0..dim)
                        .map(|_| rng.sample::<f64, _>(StandardNormal))
                        .collect();
                    let n = linalg::dot(&g, &g).sqrt();
                    pts.extend(g.iter().map(|x| radius * x / n));
                }
                if hull::affine_dim(&pts, dim) == dim {
                    break;
                }
                if attempt == 63 {
                    return Err(Error::RetryExhausted(64));
                }
            }
        }
    }
    Ok(Body::Polytope(Polytope::from_flat(&pts, dim)))
}

/// An invertible-or-not linear map of `R^n` with its determinant cached.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    dim: usize,
    matrix: Vec<f64>,
    det: f64,
}

impl LinearMap {
    /// `rows[i][j]` is the entry in row `i`, column `j`.
    pub fn new(rows: &[Vec<f64>]) -> Result<LinearMap> {
        let n = rows.len();
        check_dim(n)?;
        let mut matrix = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            matrix.extend_from_slice(r);
        }
        Ok(Self::from_row_major(n, matrix))
    }

    pub(crate) fn from_row_major(dim: usize, matrix: Vec<f64>) -> LinearMap {
        let det = linalg::det(&matrix, dim);
        LinearMap { dim, matrix, det }
    }

    pub fn identity(dim: usize) -> LinearMap {
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1.0;
        }
        LinearMap {
            dim,
            matrix: m,
            det: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.dim + col]
    }

    pub fn is_unimodular(&self) -> bool {
        (self.det - 1.0).abs() <= 1e-9
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .chunks_exact(self.dim)
            .map(|row| linalg::dot(row, v))
            .collect()
    }

    /// `c` with `g^T g = c^2 I` (to relative `1e-12`), if the map is a similarity.
    pub fn similarity_ratio(&self) -> Option<f64> {
        let n = self.dim;
        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                gram[i * n + j] = (0..n).map(|k| self.entry(k, i) * self.entry(k, j)).sum();
            }
        }
        let c2 = gram[0];
        let tol = 1e-12 * c2.abs().max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { c2 } else { 0.0 };
                if (gram[i * n + j] - want).abs() > tol {
                    return None;
                }
            }
        }
        Some(c2.sqrt())
    }

    pub fn compose(&self, rhs: &LinearMap) -> LinearMap {
        let n = self.dim;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| self.entry(i, k) * rhs.entry(k, j)).sum();
            }
        }
        LinearMap::from_row_major(n, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vol(b: &Body) -> f64 {
        b.volume()
    }

    #[test]
    fn unit_ball_volumes() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert_eq!(unit_ball_volume(2), PI);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn hull_examples() {
        let sq = convex_hull(
            &[
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
                vec![0.5, 0.5],
            ],
            2,
        )
        .unwrap();
        assert_eq!(sq.as_polytope().unwrap().vertex_count(), 4);

        let single = convex_hull(&[vec![1.0, 2.0, 3.0]], 3).unwrap();
        assert_eq!(
            single.as_polytope().unwrap().vertices().next().unwrap(),
            &[1.0, 2.0, 3.0]
        );

        let mut pts = Vec::new();
        for mask in 0..8 {
            pts.push(
                (0..3)
                    .map(|b| f64::from((mask >> b) & 1))
                    .collect::<Vec<_>>(),
            );
        }
        for axis in 0..3 {
            for side in [0.0, 1.0] {
                let mut c = vec![0.5; 3];
                c[axis] = side;
                pts.push(c);
            }
        }
        let cube = convex_hull(&pts, 3).unwrap();
        assert_eq!(cube.as_polytope().unwrap().vertex_count(), 8);
        assert!((vol(&cube) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hull_rejects_ragged_input() {
        assert_eq!(
            convex_hull(&[vec![0.0, 0.0], vec![1.0]], 2),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(convex_hull(&[], 2), Err(Error::EmptyPointSet));
    }

    #[test]
    fn volume_examples() {
        assert!((vol(&Body::cube(3, 1.0).unwrap()) - 1.0).abs() < 1e-14);
        assert!((vol(&Body::simplex(3).unwrap()) - 1.0 / 6.0).abs() < 1e-15);
        let seg = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0]], 2).unwrap();
        assert_eq!(vol(&seg), 0.0);
        let disk = Body::ball(2, 2.0, vec![0.0, 0.0]).unwrap();
        assert!((vol(&disk) - 4.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn minkowski_examples() {
        let sq = Body::cube(2, 1.0).unwrap();
        let two = sq.minkowski_sum(&sq).unwrap();
        assert_eq!(two, Body::cube(2, 2.0).unwrap());

        let seg = convex_hull(&[vec![0.0, 0.0], vec![0.0, 1.0]], 2).unwrap();
        let rect = sq.minkowski_sum(&seg).unwrap();
        assert!((vol(&rect) - 2.0).abs() < 1e-14);
        assert_eq!(rect.as_polytope().unwrap().vertex_count(), 4);

        let pt = convex_hull(&[vec![3.0, -1.0]], 2).unwrap();
        assert_eq!(
            sq.minkowski_sum(&pt).unwrap(),
            sq.translate(&[3.0, -1.0]).unwrap()
        );

        let ball = Body::unit_ball(2).unwrap();
        assert!(matches!(
            sq.minkowski_sum(&ball),
            Err(Error::UnsupportedOperand(_))
        ));
        let cube3 = Body::cube(3, 1.0).unwrap();
        assert!(matches!(
            sq.minkowski_sum(&cube3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(
            Body::cube(3, 1.0).unwrap().scale(2.0).unwrap(),
            Body::cube(3, 2.0).unwrap()
        );
        let z = Body::simplex(3).unwrap().scale(0.0).unwrap();
        assert_eq!(z.as_polytope().unwrap().coords(), &[0.0, 0.0, 0.0]);
        let b = Body::unit_ball(3).unwrap().scale(3.0).unwrap();
        assert!(matches!(&b, Body::Ball(x) if x.radius == 3.0));
        assert!(Body::unit_ball(3).unwrap().scale(0.0).unwrap().volume() == 0.0);
        assert!(Body::cube(2, 1.0).unwrap().scale(-1.0).is_err());
    }

    #[test]
    fn linear_image_examples() {
        let sq = Body::cube(2, 1.0).unwrap();
        assert_eq!(sq.linear_image(&LinearMap::identity(2)).unwrap(), sq);

        let diag = LinearMap::new(&[vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap();
        let img = sq.linear_image(&diag).unwrap();
        assert!((img.volume() - 1.0).abs() < 1e-15);
        let xs: Vec<f64> = img
            .as_polytope()
            .unwrap()
            .vertices()
            .map(|v| v[0])
            .collect();
        assert!(xs.iter().cloned().fold(0.0, f64::max) == 2.0);

        let shear = LinearMap::new(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(shear.is_unimodular());
        let par = sq.linear_image(&shear).unwrap();
        assert!((par.volume() - 1.0).abs() < 1e-15);

        let ball = Body::unit_ball(2).unwrap();
        assert!(matches!(
            ball.linear_image(&shear),
            Err(Error::UnsupportedOperand(_))
        ));
        let rot = LinearMap::new(&[vec![0.0, -2.0], vec![2.0, 0.0]]).unwrap();
        assert!(
            matches!(ball.linear_image(&rot).unwrap(), Body::Ball(b) if (b.radius - 2.0).abs() < 1e-15)
        );
    }

    #[test]
    fn translate_examples() {
        let sq = Body::cube(2, 1.0).unwrap();
        let moved = sq.translate(&[1.0, 1.0]).unwrap();
        let expect = convex_hull(
            &[
                vec![1.0, 1.0],
                vec![2.0, 1.0],
                vec![1.0, 2.0],
                vec![2.0, 2.0],
            ],
            2,
        )
        .unwrap();
        assert!(moved.is_homothetic_to(&expect));
        assert_eq!(moved.volume(), sq.volume());
        assert_eq!(sq.translate(&[0.0, 0.0]).unwrap(), sq);
    }

    #[test]
    fn affine_dim_examples() {
        let seg = convex_hull(&[vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 3.0]], 3).unwrap();
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(Body::cube(3, 1.0).unwrap().affine_dim(), 3);
        assert_eq!(convex_hull(&[vec![1.0; 3]], 3).unwrap().affine_dim(), 0);
    }

    #[test]
    fn ball_approx_examples() {
        let quad = ball_approx(2, 1.0, 4, 11).unwrap();
        assert_eq!(quad.as_polytope().unwrap().vertex_count(), 4);
        assert!(quad.volume() <= PI);

        let sphere = ball_approx(3, 1.0, 500, 3).unwrap();
        let rel = (sphere.volume() - 4.0 * PI / 3.0).abs() / (4.0 * PI / 3.0);
        assert!(rel < 0.05, "relative deficit {rel}");
        assert!(sphere.is_full_dimensional());

        for b in [sphere, ball_approx(4, 2.0, 40, 5).unwrap()] {
            let p = b.as_polytope().unwrap();
            let r = if p.dim() == 4 { 2.0 } else { 1.0 };
            for v in p.vertices() {
                assert!((linalg::dot(v, v).sqrt() - r).abs() <= 1e-12);
            }
        }
        assert!(ball_approx(3, 1.0, 3, 0).is_err());
        assert_eq!(
            ball_approx(3, 1.0, 60, 9).unwrap(),
            ball_approx(3, 1.0, 60, 9).unwrap()
        );
    }

    #[test]
    fn homothety_detection() {
        let s = Body::simplex(3).unwrap();
        let h = s.scale(3.0).unwrap().translate(&[1.0, -2.0, 0.5]).unwrap();
        assert!(s.is_homothetic_to(&h));
        let sheared = s
            .linear_image(
                &LinearMap::new(&[
                    vec![1.0, 0.3, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ])
                .unwrap(),
            )
            .unwrap();
        assert!(!s.is_homothetic_to(&sheared));
        assert!(!s.is_homothetic_to(&Body::cube(3, 1.0).unwrap()));
    }
}
