//! LU factorization with partial pivoting for complex matrices.

use num_complex::Complex;

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Packed LU factors of a square matrix with row pivoting.
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    lu: CMat<T>,
    perm: Vec<usize>,
    min_pivot: T,
    scale: T,
}

pub(super) fn factor<T: Real>(a: &CMat<T>) -> Result<LuFactors<T>> {
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let scale = a.max_abs();
    let mut min_pivot = T::infinity();

    for k in 0..n {
        // pivot search
        let mut p = k;
        let mut best = lu[(k, k)].norm();
        for r in k + 1..n {
            let v = lu[(r, k)].norm();
            if v > best {
                best = v;
                p = r;
            }
        }
        if best == T::zero() {
            return Err(Error::Singular {
                sigma_min: 0.0,
                scale: scale.to_f64().unwrap_or(f64::NAN),
            });
        }
        if p != k {
            for c in 0..n {
                let tmp = lu[(k, c)];
                lu[(k, c)] = lu[(p, c)];
                lu[(p, c)] = tmp;
            }
            perm.swap(k, p);
        }
        min_pivot = min_pivot.min(best);
        let pivot = lu[(k, k)];
        for r in k + 1..n {
            let m = lu[(r, k)] / pivot;
            lu[(r, k)] = m;
            for c in k + 1..n {
                let v = lu[(r, c)] - m * lu[(k, c)];
                lu[(r, c)] = v;
            }
        }
    }
    if n == 0 {
        min_pivot = T::zero();
    }

    Ok(LuFactors {
        lu,
        perm,
        min_pivot,
        scale,
    })
}

impl<T: Real> LuFactors<T> {
    /// Smallest pivot magnitude encountered; a crude singularity signal.
    pub fn min_pivot(&self) -> T {
        self.min_pivot
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// Solves `A X = B` for every column of `B`.
    pub fn solve(&self, b: &CMat<T>) -> Result<CMat<T>> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::ShapeMismatch(n, n, b.rows(), b.cols()));
        }
        let mut x = CMat::zeros(n, b.cols());
        // apply permutation
        for r in 0..n {
            for c in 0..b.cols() {
                x[(r, c)] = b[(self.perm[r], c)];
            }
        }
        // forward substitution (unit lower triangle)
        for r in 1..n {
            for k in 0..r {
                let m = self.lu[(r, k)];
                if m.re == T::zero() && m.im == T::zero() {
                    continue;
                }
                for c in 0..b.cols() {
                    let v = x[(r, c)] - m * x[(k, c)];
                    x[(r, c)] = v;
                }
            }
        }
        // back substitution
        for r in (0..n).rev() {
            for k in r + 1..n {
                let m = self.lu[(r, k)];
                if m.re == T::zero() && m.im == T::zero() {
                    continue;
                }
                for c in 0..b.cols() {
                    let v = x[(r, c)] - m * x[(k, c)];
                    x[(r, c)] = v;
                }
            }
            let d = self.lu[(r, r)];
            for c in 0..b.cols() {
                x[(r, c)] = x[(r, c)] / d;
            }
        }
        Ok(x)
    }

    /// Solves for a single right-hand-side vector.
    pub fn solve_vec(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let col = CMat::from_fn(b.len(), 1, |r, _| b[r]);
        Ok(self.solve(&col)?.column(0))
    }
}
