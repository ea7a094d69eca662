//! Incremental (beneath-beyond) convex hull in `R^d`, `d <= 8`.
//!
//! The hull is kept as a simplicial facet complex. Points within the
//! coplanarity tolerance of every facet are treated as inside, so coplanar
//! points never become facet vertices except when they are needed to close
//! the complex; the extreme-point filter at the end removes those.

use std::collections::HashMap;

use crate::linalg::{self, dot};

/// Coplanarity tolerance relative to the bounding-box diameter.
pub(crate) const REL_EPS: f64 = 1e-10;
/// Rank tolerance for unit facet normals meeting at a vertex.
const NORMAL_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub(crate) struct HullResult {
    /// Indices into the input of the extreme points, ascending.
    pub vertices: Vec<usize>,
    /// Dimension of the affine hull.
    pub affine_dim: usize,
    /// Full `d`-dimensional volume (0 when `affine_dim < d`).
    pub volume: f64,
}

/// Affinely independent subset found by greedy farthest-point selection,
/// with an orthonormal basis of the directions it spans.
struct AffineFrame {
    origin: usize,
    chosen: Vec<usize>,
    basis: Vec<Vec<f64>>,
}

fn point(points: &[f64], dim: usize, i: usize) -> &[f64] {
    &points[i * dim..(i + 1) * dim]
}

fn diameter(points: &[f64], dim: usize) -> f64 {
    let m = points.len() / dim;
    let mut sq = 0.0;
    for c in 0..dim {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..m {
            let x = points[i * dim + c];
            lo = lo.min(x);
            hi = hi.max(x);
        }
        sq += (hi - lo) * (hi - lo);
    }
    sq.sqrt()
}

fn affine_frame(points: &[f64], dim: usize, eps: f64) -> AffineFrame {
    let m = points.len() / dim;
    // lexicographically smallest point as a deterministic start
    let origin = (0..m)
        .min_by(|&a, &b| {
            point(points, dim, a)
                .partial_cmp(point(points, dim, b))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let o = point(points, dim, origin).to_vec();
    let mut chosen = vec![origin];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut residual = vec![0.0; dim];
    while basis.len() < dim {
        let mut best = (0.0, usize::MAX);
        for i in 0..m {
            let p = point(points, dim, i);
            for c in 0..dim {
                residual[c] = p[c] - o[c];
            }
            for b in &basis {
                let t = dot(&residual, b);
                for (r, bc) in residual.iter_mut().zip(b) {
                    *r -= t * bc;
                }
            }
            let d = dot(&residual, &residual);
            if d > best.0 {
                best = (d, i);
            }
        }
        if best.1 == usize::MAX || best.0.sqrt() <= eps {
            break;
        }
        let p = point(points, dim, best.1);
        let mut dir: Vec<f64> = p.iter().zip(&o).map(|(a, b)| a - b).collect();
        // two passes of Gram-Schmidt for a clean basis
        for _ in 0..2 {
            for b in &basis {
                let t = dot(&dir, b);
                for (r, bc) in dir.iter_mut().zip(b) {
                    *r -= t * bc;
                }
            }
        }
        let norm = dot(&dir, &dir).sqrt();
        dir.iter_mut().for_each(|x| *x /= norm);
        basis.push(dir);
        chosen.push(best.1);
    }
    AffineFrame {
        origin,
        chosen,
        basis,
    }
}

/// Dimension of the affine hull at tolerance `1e-10 * diameter`.
pub(crate) fn affine_dim(points: &[f64], dim: usize) -> usize {
    let diam = diameter(points, dim);
    if diam == 0.0 {
        return 0;
    }
    affine_frame(points, dim, REL_EPS * diam).basis.len()
}

pub(crate) fn convex_hull(points: &[f64], dim: usize) -> HullResult {
    debug_assert!(dim >= 1 && !points.is_empty() && points.len().is_multiple_of(dim));
    let diam = diameter(points, dim);
    if diam == 0.0 {
        return HullResult {
            vertices: vec![0],
            affine_dim: 0,
            volume: 0.0,
        };
    }
    let eps = REL_EPS * diam;
    let frame = affine_frame(points, dim, eps);
    let k = frame.basis.len();
    let m = points.len() / dim;

    if k == dim {
        let (vertices, volume) = full_dim_hull(points, dim, &frame.chosen, eps);
        return HullResult {
            vertices,
            affine_dim: k,
            volume,
        };
    }

    // Express the points in coordinates of their affine hull.
    let o = point(points, dim, frame.origin);
    let mut local = Vec::with_capacity(m * k);
    let mut diff = vec![0.0; dim];
    for i in 0..m {
        let p = point(points, dim, i);
        for c in 0..dim {
            diff[c] = p[c] - o[c];
        }
        for b in &frame.basis {
            local.push(dot(&diff, b));
        }
    }
    let vertices = match k {
        0 => vec![frame.origin],
        1 => {
            let (mut lo, mut hi) = (0, 0);
            for i in 0..m {
                if local[i] < local[lo] {
                    lo = i;
                }
                if local[i] > local[hi] {
                    hi = i;
                }
            }
            let mut v = vec![lo, hi];
            v.sort_unstable();
            v
        }
        _ => {
            let chosen: Vec<usize> = frame.chosen.clone();
            full_dim_hull(&local, k, &chosen, eps).0
        }
    };
    HullResult {
        vertices,
        affine_dim: k,
        volume: 0.0,
    }
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<f64>,
    offset: f64,
    alive: bool,
}

impl Facet {
    fn new(verts: Vec<usize>, points: &[f64], dim: usize, interior: &[f64]) -> Self {
        let pts: Vec<&[f64]> = verts.iter().map(|&i| point(points, dim, i)).collect();
        let mut normal = vec![0.0; dim];
        linalg::hyperplane_normal(&pts, dim, &mut normal);
        let norm = dot(&normal, &normal).sqrt();
        if norm > 0.0 {
            normal.iter_mut().for_each(|x| *x /= norm);
        }
        let mut offset = dot(&normal, pts[0]);
        if dot(&normal, interior) - offset > 0.0 {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        Facet {
            verts,
            normal,
            offset,
            alive: true,
        }
    }

    #[inline]
    fn distance(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.offset
    }
}

/// Hull of a full-dimensional point set starting from the simplex `seed`.
/// Returns the extreme point indices (ascending) and the volume.
fn full_dim_hull(points: &[f64], dim: usize, seed: &[usize], eps: f64) -> (Vec<usize>, f64) {
    debug_assert_eq!(seed.len(), dim + 1);
    let m = points.len() / dim;
    let mut interior = vec![0.0; dim];
    for &i in seed {
        for (c, x) in interior.iter_mut().zip(point(points, dim, i)) {
            *c += x / (dim + 1) as f64;
        }
    }

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=dim {
        let verts: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != skip)
            .map(|(_, &v)| v)
            .collect();
        facets.push(Facet::new(sorted(verts), points, dim, &interior));
    }

    // Farthest points first: the hull reaches its final shape early and the
    // bulk of the remaining points are rejected after one facet scan.
    let mut order: Vec<(f64, usize)> = (0..m)
        .filter(|i| !seed.contains(i))
        .map(|i| {
            let p = point(points, dim, i);
            let d: f64 = p
                .iter()
                .zip(&interior)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            (d, i)
        })
        .collect();
    order.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });

    let mut visible: Vec<usize> = Vec::new();
    let mut ridges: HashMap<Vec<usize>, (u32, usize)> = HashMap::new();
    for &(_, pi) in &order {
        let p = point(points, dim, pi);
        visible.clear();
        for (fi, f) in facets.iter().enumerate() {
            if f.alive && f.distance(p) > eps {
                visible.push(fi);
            }
        }
        if visible.is_empty() {
            continue;
        }
        ridges.clear();
        for &fi in &visible {
            let verts = &facets[fi].verts;
            for skip in 0..verts.len() {
                let ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let e = ridges.entry(ridge).or_insert((0, fi));
                e.0 += 1;
            }
        }
        for &fi in &visible {
            facets[fi].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .drain()
            .filter(|(_, (count, _))| *count == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort_unstable();
        for mut ridge in horizon {
            ridge.push(pi);
            facets.push(Facet::new(sorted(ridge), points, dim, &interior));
        }
        if facets.len() > 64 && facets.iter().filter(|f| f.alive).count() * 2 < facets.len() {
            facets.retain(|f| f.alive);
        }
    }
    facets.retain(|f| f.alive);

    // Extreme points: a boundary point is a vertex iff the outward normals of
    // the facets through it span R^d.
    let mut candidates: Vec<usize> = facets
        .iter()
        .flat_map(|f| f.verts.iter().copied())
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let vertices: Vec<usize> = candidates
        .into_iter()
        .filter(|&v| {
            let p = point(points, dim, v);
            let normals: Vec<&[f64]> = facets
                .iter()
                .filter(|f| f.distance(p).abs() <= eps)
                .map(|f| f.normal.as_slice())
                .collect();
            linalg::rank(&normals, dim, NORMAL_RANK_TOL) == dim
        })
        .collect();

    let mut scratch = vec![0.0; dim * dim];
    let mut fact = 1.0;
    for i in 2..=dim {
        fact *= i as f64;
    }
    let volume = linalg::compensated_sum(facets.iter().map(|f| {
        for (r, &v) in f.verts.iter().enumerate() {
            let q = point(points, dim, v);
            for c in 0..dim {
                scratch[r * dim + c] = q[c] - interior[c];
            }
        }
        linalg::det_in_place(&mut scratch, dim).abs()
    })) / fact;

    (vertices, volume)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(pts: &[&[f64]]) -> Vec<f64> {
        pts.iter().flat_map(|p| p.iter().copied()).collect()
    }

    #[test]
    fn square_with_center_and_edge_midpoints() {
        let pts = flat(&[
            &[0.5, 0.0],
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[0.5, 0.5],
            &[1.0, 1.0],
            &[0.0, 1.0],
            &[0.0, 0.5],
        ]);
        let h = convex_hull(&pts, 2);
        assert_eq!(h.vertices, vec![1, 2, 4, 5]);
        assert!((h.volume - 1.0).abs() < 1e-14);
    }

    #[test]
    fn collinear_points_keep_endpoints() {
        let pts = flat(&[
            &[0.0, 0.0, 0.0],
            &[2.0, 2.0, 2.0],
            &[1.0, 1.0, 1.0],
            &[0.5, 0.5, 0.5],
        ]);
        let h = convex_hull(&pts, 3);
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices, vec![0, 1]);
        assert_eq!(h.volume, 0.0);
    }

    #[test]
    fn planar_points_in_space() {
        let pts = flat(&[
            &[0.0, 0.0, 1.0],
            &[1.0, 0.0, 1.0],
            &[0.0, 1.0, 1.0],
            &[1.0, 1.0, 1.0],
            &[0.3, 0.3, 1.0],
        ]);
        let h = convex_hull(&pts, 3);
        assert_eq!(h.affine_dim, 2);
        assert_eq!(h.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hypercube_4d() {
        let mut pts = Vec::new();
        for mask in 0..16u32 {
            for b in 0..4 {
                pts.push(f64::from((mask >> b) & 1));
            }
        }
        pts.extend_from_slice(&[0.5, 0.5, 0.5, 0.5]);
        let h = convex_hull(&pts, 4);
        assert_eq!(h.vertices.len(), 16);
        assert!((h.volume - 1.0).abs() < 1e-12);
    }
}
