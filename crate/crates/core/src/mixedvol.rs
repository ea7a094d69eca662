//! Mixed volumes `V(K_1, ..., K_j)` of `j` polytopes in `R^j`.
//!
//! The primary route is polarization:
//!
//! ```text
//! V(K_1..K_j) = 1/j! * sum_{S nonempty} (-1)^(j-|S|) vol(sum_{i in S} K_i)
//! ```
//!
//! reduced with Neumaier summation in increasing subset-mask order. The oracle
//! route fits the homogeneous volume polynomial `vol(l_1 K_1 + ... + l_j K_j)`
//! on a grid and reads off the coefficient of `l_1 ... l_j`.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::geometry::{minkowski_sum_polytopes, Body, Polytope};
use crate::linalg::CompensatedSum;

/// Largest `j` accepted by the `2^j`-term polarization formula.
pub const MAX_BODIES: usize = 12;

/// Mixed volume together with a cancellation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedVolume {
    pub value: f64,
    /// `sum |terms| / |value|`; large values flag heavy cancellation.
    pub cancellation_ratio: f64,
}

fn factorial(j: usize) -> f64 {
    (2..=j).map(|k| k as f64).product()
}

fn polytopes(bodies: &[Body]) -> Result<Vec<&Polytope>> {
    let j = bodies.len();
    if j == 0 {
        return Err(invalid("mixed volume needs at least one body"));
    }
    if j > MAX_BODIES {
        return Err(Error::TooManyBodies(j));
    }
    bodies
        .iter()
        .map(|b| match b {
            Body::Polytope(p) if p.dim() == j => Ok(p),
            Body::Polytope(p) => Err(Error::DimensionMismatch {
                expected: j,
                found: p.dim(),
            }),
            Body::Ball(_) => Err(Error::UnsupportedOperand(
                "mixed volumes need polytopes; apply ball_approx first",
            )),
        })
        .collect()
}

pub(crate) fn mixed_volume_of(bodies: &[&Polytope]) -> MixedVolume {
    let j = bodies.len();
    let full = 1usize << j;
    let mut sums: Vec<Option<Polytope>> = vec![None; full];
    let mut acc = CompensatedSum::default();
    let mut abs = CompensatedSum::default();
    for mask in 1..full {
        let high = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << high);
        let sum = if rest == 0 {
            bodies[high].clone()
        } else {
            let prev = sums[rest]
                .as_ref()
                .expect("subsets are visited in increasing order");
            minkowski_sum_polytopes(prev, bodies[high])
        };
        let vol = sum.volume();
        let size = mask.count_ones() as usize;
        let term = if (j - size).is_multiple_of(2) {
            vol
        } else {
            -vol
        };
        acc.add(term);
        abs.add(vol);
        sums[mask] = Some(sum);
    }
    let raw = acc.value() / factorial(j);
    let value = raw.max(0.0);
    let abs_sum = abs.value() / factorial(j);
    let cancellation_ratio = if value > 0.0 {
        abs_sum / value
    } else {
        f64::INFINITY
    };
    MixedVolume {
        value,
        cancellation_ratio,
    }
}

/// Mixed volume of `j` polytopes in `R^j`. Negative rounding residue is
/// clamped to zero.
pub fn mixed_volume(bodies: &[Body]) -> Result<f64> {
    Ok(mixed_volume_detailed(bodies)?.value)
}

pub fn mixed_volume_detailed(bodies: &[Body]) -> Result<MixedVolume> {
    let ps = polytopes(bodies)?;
    Ok(mixed_volume_of(&ps))
}

/// All exponent vectors of length `j` summing to `j`, in lexicographic order.
fn monomials(j: usize) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, j as u32, &mut vec![0; j], &mut out);
    out
}

/// Independent mixed-volume evaluation by fitting the volume polynomial of
/// Minkowski combinations on the grid `{1/g, 2/g, ..., 1}^j`.
pub fn mixed_volume_oracle(bodies: &[Body], grid_size: usize) -> Result<f64> {
    let ps = polytopes(bodies)?;
    let j = ps.len();
    if grid_size < j + 1 {
        return Err(invalid(format!(
            "grid_size must be at least j+1 = {}, got {grid_size}",
            j + 1
        )));
    }
    let monos = monomials(j);
    let points = grid_size.pow(j as u32);
    let mut design = DMatrix::<f64>::zeros(points, monos.len());
    let mut rhs = DVector::<f64>::zeros(points);
    let mut idx = vec![0usize; j];
    for row in 0..points {
        let mut t = row;
        for slot in idx.iter_mut() {
            *slot = t % grid_size;
            t /= grid_size;
        }
        let lambda: Vec<f64> = idx
            .iter()
            .map(|&k| (k + 1) as f64 / grid_size as f64)
            .collect();
        for (c, m) in monos.iter().enumerate() {
            design[(row, c)] = lambda
                .iter()
                .zip(m)
                .map(|(l, &e)| l.powi(e as i32))
                .product();
        }
        let mut combo: Option<Polytope> = None;
        for (p, &l) in ps.iter().zip(&lambda) {
            let scaled = match Body::Polytope((*p).clone()).scale(l)? {
                Body::Polytope(q) => q,
                Body::Ball(_) => unreachable!(),
            };
            combo = Some(match combo {
                None => scaled,
                Some(acc) => minkowski_sum_polytopes(&acc, &scaled),
            });
        }
        rhs[row] = combo.map(|p| p.volume()).unwrap_or(0.0);
    }
    let svd = design.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(Error::SingularSystem);
    }
    let coef = svd.solve(&rhs, 0.0).map_err(|_| Error::SingularSystem)?;
    let target = monos
        .iter()
        .position(|m| m.iter().all(|&e| e == 1))
        .expect("all-ones monomial exists");
    Ok((coef[target] / factorial(j)).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;

    fn rect(w: f64, h: f64) -> Body {
        convex_hull(&[vec![0.0, 0.0], vec![w, 0.0], vec![0.0, h], vec![w, h]], 2).unwrap()
    }

    #[test]
    fn square_diagonal() {
        let sq = Body::cube(2, 1.0).unwrap();
        assert!((mixed_volume(&[sq.clone(), sq]).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rectangles() {
        // (area(K+L) - area K - area L) / 2 = (24 - 2 - 12) / 2
        let v = mixed_volume(&[rect(1.0, 2.0), rect(3.0, 4.0)]).unwrap();
        assert!((v - 5.0).abs() < 1e-9);
        let o = mixed_volume_oracle(&[rect(1.0, 2.0), rect(3.0, 4.0)], 4).unwrap();
        assert!((o - 5.0).abs() < 1e-9);
    }

    #[test]
    fn square_and_segment() {
        // (area([0,2]x[0,1]) - 1 - 0) / 2
        let seg = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0]], 2).unwrap();
        let v = mixed_volume(&[Body::cube(2, 1.0).unwrap(), seg]).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_body_is_its_length() {
        let seg = convex_hull(&[vec![-1.0], vec![2.5]], 1).unwrap();
        assert_eq!(mixed_volume(&[seg]).unwrap(), 3.5);
    }

    #[test]
    fn errors() {
        let sq = Body::cube(2, 1.0).unwrap();
        assert!(matches!(
            mixed_volume(std::slice::from_ref(&sq)),
            Err(Error::DimensionMismatch { .. })
        ));
        let disk = Body::unit_ball(2).unwrap();
        assert!(matches!(
            mixed_volume(&[sq.clone(), disk]),
            Err(Error::UnsupportedOperand(_))
        ));
        let seg = convex_hull(&[vec![0.0], vec![1.0]], 1).unwrap();
        assert_eq!(mixed_volume(&vec![seg; 13]), Err(Error::TooManyBodies(13)));
        assert!(matches!(
            mixed_volume_oracle(&[sq.clone(), sq], 2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(mixed_volume(&[]).is_err());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(2).len(), 3);
        assert_eq!(monomials(3).len(), 10);
        assert_eq!(monomials(4).len(), 35);
    }
}
