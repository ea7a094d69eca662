//! Small dense helpers for the hull kernel. Everything works on row-major
//! `f64` slices with dimension at most 8, so nothing here allocates more than
//! a scratch matrix.

/// Determinant of a `k x k` row-major matrix by Gaussian elimination with
/// partial pivoting. Consumes the scratch buffer.
pub(crate) fn det_in_place(a: &mut [f64], k: usize) -> f64 {
    debug_assert_eq!(a.len(), k * k);
    match k {
        0 => return 1.0,
        1 => return a[0],
        2 => return a[0] * a[3] - a[1] * a[2],
        3 => {
            return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => {}
    }
    let mut det = 1.0;
    for col in 0..k {
        let mut pivot = col;
        let mut best = a[col * k + col].abs();
        for row in col + 1..k {
            let v = a[row * k + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..k {
                a.swap(col * k + c, pivot * k + c);
            }
            det = -det;
        }
        let p = a[col * k + col];
        det *= p;
        for row in col + 1..k {
            let f = a[row * k + col] / p;
            if f != 0.0 {
                for c in col + 1..k {
                    a[row * k + c] -= f * a[col * k + c];
                }
            }
        }
    }
    det
}

pub(crate) fn det(a: &[f64], k: usize) -> f64 {
    let mut scratch = a.to_vec();
    det_in_place(&mut scratch, k)
}

/// Normal of the hyperplane through `k` points in `R^k` (the generalized
/// cross product of the edge vectors from the first point). Not normalized.
pub(crate) fn hyperplane_normal(points: &[&[f64]], k: usize, out: &mut [f64]) {
    debug_assert_eq!(points.len(), k);
    let o = points[0];
    match k {
        1 => out[0] = 1.0,
        2 => {
            let e = [points[1][0] - o[0], points[1][1] - o[1]];
            out[0] = e[1];
            out[1] = -e[0];
        }
        3 => {
            let a = [
                points[1][0] - o[0],
                points[1][1] - o[1],
                points[1][2] - o[2],
            ];
            let b = [
                points[2][0] - o[0],
                points[2][1] - o[1],
                points[2][2] - o[2],
            ];
            out[0] = a[1] * b[2] - a[2] * b[1];
            out[1] = a[2] * b[0] - a[0] * b[2];
            out[2] = a[0] * b[1] - a[1] * b[0];
        }
        _ => {
            let rows = k - 1;
            let mut edges = vec![0.0; rows * k];
            for (r, p) in points[1..].iter().enumerate() {
                for c in 0..k {
                    edges[r * k + c] = p[c] - o[c];
                }
            }
            let mut minor = vec![0.0; rows * rows];
            for (skip, slot) in out.iter_mut().enumerate().take(k) {
                for r in 0..rows {
                    let mut cc = 0;
                    for c in 0..k {
                        if c != skip {
                            minor[r * rows + cc] = edges[r * k + c];
                            cc += 1;
                        }
                    }
                }
                let sign = if skip % 2 == 0 { 1.0 } else { -1.0 };
                *slot = sign * det_in_place(&mut minor, rows);
            }
        }
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of a set of unit vectors in `R^k` by modified Gram-Schmidt; a vector
/// whose residual norm falls below `tol` is considered dependent.
pub(crate) fn rank(vectors: &[&[f64]], k: usize, tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    for v in vectors {
        if basis.len() == k {
            break;
        }
        let mut r = v.to_vec();
        for b in &basis {
            let c = dot(&r, b);
            for (x, y) in r.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let norm = dot(&r, &r).sqrt();
        if norm > tol {
            r.iter_mut().for_each(|x| *x /= norm);
            basis.push(r);
        }
    }
    basis.len()
}

/// Neumaier-compensated sum, reduced strictly left to right.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}
