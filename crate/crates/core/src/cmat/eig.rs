//! General complex eigendecomposition.
//!
//! Householder reduction to upper Hessenberg form, Francis single-shift
//! QR with Givens rotations down to triangular Schur form, then
//! eigenvectors by back-substitution on the triangular factor.

use num_complex::Complex;

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Right eigenpairs of a general complex matrix: `a * vectors[:,k] =
/// values[k] * vectors[:,k]`. Vectors have unit 2-norm.
#[derive(Debug, Clone)]
pub struct ComplexEigen<T> {
    pub values: Vec<Complex<T>>,
    pub vectors: CMat<T>,
}

struct Givens<T> {
    c: T,
    s: Complex<T>,
}

/// Rotation `[[c, s], [-conj(s), c]]` (real `c`) mapping `(a, b)` to `(r, 0)`.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> Givens<T> {
    let na = a.norm();
    let nb = b.norm();
    if nb == T::zero() {
        return Givens {
            c: T::one(),
            s: Complex::new(T::zero(), T::zero()),
        };
    }
    if na == T::zero() {
        return Givens {
            c: T::zero(),
            s: b.conj() / Complex::new(nb, T::zero()),
        };
    }
    let rho = na.hypot(nb);
    let phase = a / Complex::new(na, T::zero());
    Givens {
        c: na / rho,
        s: phase * b.conj() / Complex::new(rho, T::zero()),
    }
}

fn apply_rows<T: Real>(h: &mut CMat<T>, g: &Givens<T>, i: usize, c0: usize, c1: usize) {
    for c in c0..c1 {
        let x = h[(i, c)];
        let y = h[(i + 1, c)];
        h[(i, c)] = x.scale(g.c) + g.s * y;
        h[(i + 1, c)] = y.scale(g.c) - g.s.conj() * x;
    }
}

fn apply_cols<T: Real>(h: &mut CMat<T>, g: &Givens<T>, i: usize, r0: usize, r1: usize) {
    for r in r0..r1 {
        let x = h[(r, i)];
        let y = h[(r, i + 1)];
        h[(r, i)] = x.scale(g.c) + y * g.s.conj();
        h[(r, i + 1)] = y.scale(g.c) - x * g.s;
    }
}

/// Eigenvalue of the 2x2 `[[a, b], [c, d]]` closest to `d` (Wilkinson shift).
fn wilkinson<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = Complex::new(T::of(0.5), T::zero());
    let tr2 = (a + d) * half;
    let disc = ((a - d) * half * ((a - d) * half) + b * c).sqrt();
    let l1 = tr2 + disc;
    let l2 = tr2 - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

pub(super) fn eigen<T: Real>(a: &CMat<T>) -> Result<ComplexEigen<T>> {
    let n = a.rows();
    if n == 0 {
        return Ok(ComplexEigen {
            values: Vec::new(),
            vectors: CMat::zeros(0, 0),
        });
    }
    let mut h = a.clone();
    let mut q = CMat::identity(n);
    // columns below this norm are left unreflected; the Schur phase never
    // reads below the subdiagonal, so the perturbation is bounded by the
    // neglected norm, and real Householder scalars of order beta^2 stay
    // away from underflow
    let neglect = h.norm_fro() * T::epsilon() * T::of(0.5);

    // Householder reduction to upper Hessenberg, accumulating Q.
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<Complex<T>> = (0..m).map(|i| h[(k + 1 + i, k)]).collect();
        let beta = x
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |s, v| s + v)
            .sqrt();
        if beta <= neglect {
            continue;
        }
        let x0 = x[0];
        let s = if x0.norm() > neglect {
            x0.scale(T::one() / x0.norm())
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -s * beta;
        let mut v = x;
        v[0] = v[0] - alpha;
        let kappa = beta * beta + x0.norm() * beta;
        if !kappa.is_normal() {
            continue;
        }
        let kinv = T::one() / kappa;

        // left: rows k+1.. of columns k..n
        for c in k..n {
            let mut u = Complex::new(T::zero(), T::zero());
            for i in 0..m {
                u = u + v[i].conj() * h[(k + 1 + i, c)];
            }
            u = u.scale(kinv);
            for i in 0..m {
                let val = h[(k + 1 + i, c)] - v[i] * u;
                h[(k + 1 + i, c)] = val;
            }
        }
        // right: columns k+1.. of all rows
        for r in 0..n {
            let mut u = Complex::new(T::zero(), T::zero());
            for i in 0..m {
                u = u + h[(r, k + 1 + i)] * v[i];
            }
            u = u.scale(kinv);
            for i in 0..m {
                let val = h[(r, k + 1 + i)] - u * v[i].conj();
                h[(r, k + 1 + i)] = val;
            }
        }
        // accumulate Q <- Q P
        for r in 0..n {
            let mut u = Complex::new(T::zero(), T::zero());
            for i in 0..m {
                u = u + q[(r, k + 1 + i)] * v[i];
            }
            u = u.scale(kinv);
            for i in 0..m {
                let val = q[(r, k + 1 + i)] - u * v[i].conj();
                q[(r, k + 1 + i)] = val;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in 1..m {
            h[(k + 1 + i, k)] = Complex::new(T::zero(), T::zero());
        }
    }

    schur_in_place(&mut h, &mut q)?;

    // Eigenvectors of the triangular factor by back-substitution.
    let norm_t = h.norm_one().max(T::epsilon());
    let small = T::epsilon() * norm_t;
    let big = T::max_value().sqrt();
    let mut vectors = CMat::zeros(n, n);
    for k in 0..n {
        let lambda = h[(k, k)];
        let mut x = vec![Complex::new(T::zero(), T::zero()); k + 1];
        x[k] = Complex::new(T::one(), T::zero());
        for i in (0..k).rev() {
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in i + 1..=k {
                sum = sum + h[(i, j)] * x[j];
            }
            let mut den = h[(i, i)] - lambda;
            if den.norm() < small {
                den = Complex::new(small, T::zero());
            }
            x[i] = -sum / den;
            if x[i].norm() > big {
                let r = T::one() / x[i].norm();
                for xj in x.iter_mut() {
                    *xj = xj.scale(r);
                }
            }
        }
        // v = Q x, normalized
        let mut nrm = T::zero();
        for r in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..=k {
                acc = acc + q[(r, j)] * x[j];
            }
            vectors[(r, k)] = acc;
            nrm = nrm + acc.norm_sqr();
        }
        let nrm = nrm.sqrt();
        if nrm > T::zero() {
            for r in 0..n {
                let val = vectors[(r, k)].scale(T::one() / nrm);
                vectors[(r, k)] = val;
            }
        }
    }

    Ok(ComplexEigen {
        values: (0..n).map(|i| h[(i, i)]).collect(),
        vectors,
    })
}

/// Single-shift QR on an upper Hessenberg matrix, accumulating the
/// unitary similarity into `q`. On return `h` is upper triangular.
fn schur_in_place<T: Real>(h: &mut CMat<T>, q: &mut CMat<T>) -> Result<()> {
    let n = h.rows();
    if n <= 1 {
        return Ok(());
    }
    let norm_h = h.norm_one().max(T::epsilon());
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        // deflation scan
        let mut l = hi;
        while l > 0 {
            let mut tst = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tst == T::zero() {
                tst = norm_h;
            }
            if h[(l, l - 1)].norm() <= T::epsilon() * tst {
                break;
            }
            l -= 1;
        }
        if l > 0 {
            h[(l, l - 1)] = Complex::new(T::zero(), T::zero());
        }
        if l == hi {
            if hi == 1 {
                return Ok(());
            }
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        if iter > 100 {
            return Err(Error::EigenFailed);
        }
        let mu = if iter % 10 == 0 {
            // exceptional shift to break symmetric stalls
            h[(hi, hi)] + Complex::new(T::of(0.75) * h[(hi, hi - 1)].norm(), T::zero())
        } else {
            wilkinson(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // implicit single-shift sweep over the active block [l, hi]
        let mut ga = h[(l, l)] - mu;
        let mut gb = h[(l + 1, l)];
        for i in l..hi {
            let g = givens(ga, gb);
            apply_rows(h, &g, i, i.saturating_sub(1).max(l), n);
            if i > l {
                h[(i + 1, i - 1)] = Complex::new(T::zero(), T::zero());
            }
            let rmax = (i + 2).min(hi) + 1;
            apply_cols(h, &g, i, 0, rmax);
            apply_cols(q, &g, i, 0, n);
            if i + 1 < hi {
                ga = h[(i + 1, i)];
                gb = h[(i + 2, i)];
            }
        }
    }
}
