//! Hermitian eigenvalues: Householder tridiagonalization followed by
//! implicit-shift QL on the real tridiagonal form.

use num_complex::Complex;

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues of a Hermitian matrix, ascending. The matrix is
/// symmetrized before reduction so small Hermiticity drift is harmless.
pub(super) fn hermitian_eigenvalues<T: Real>(a: &CMat<T>) -> Result<Vec<T>> {
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.adjoint();
    for r in 0..n {
        for c in 0..n {
            let v = (h[(r, c)] + a[(r, c)]).scale(T::of(0.5));
            h[(r, c)] = v;
        }
    }

    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    // columns with norm below this are treated as already reduced; the
    // perturbation stays inside the backward-error budget, and it keeps
    // the (real) Householder scalars of order beta^2 away from underflow
    let neglect = h.norm_fro() * T::epsilon() * T::of(0.5);

    // Reduce to Hermitian tridiagonal; only |subdiagonal| survives, which
    // is unitarily equivalent to the real symmetric tridiagonal form.
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<Complex<T>> = (0..m).map(|i| h[(k + 1 + i, k)]).collect();
        let beta = x
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |s, v| s + v)
            .sqrt();
        if beta <= neglect {
            e[k] = beta;
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
            e[k] = beta;
            continue;
        }

        // p = A_sub v / kappa
        let mut p = vec![Complex::new(T::zero(), T::zero()); m];
        for r in 0..m {
            let mut acc = Complex::new(T::zero(), T::zero());
            for c in 0..m {
                acc = acc + h[(k + 1 + r, k + 1 + c)] * v[c];
            }
            p[r] = acc.scale(T::one() / kappa);
        }
        // w = p - v (v^dagger p) / (2 kappa)
        let vp = v
            .iter()
            .zip(&p)
            .map(|(vi, pi)| vi.conj() * *pi)
            .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
        let corr = vp.scale(T::one() / (kappa + kappa));
        let w: Vec<Complex<T>> = p.iter().zip(&v).map(|(pi, vi)| *pi - *vi * corr).collect();
        // rank-2 update A_sub -= v w^dagger + w v^dagger
        for r in 0..m {
            for c in 0..m {
                let upd = v[r] * w[c].conj() + w[r] * v[c].conj();
                let val = h[(k + 1 + r, k + 1 + c)] - upd;
                h[(k + 1 + r, k + 1 + c)] = val;
            }
        }
        e[k] = beta;
    }
    if n >= 2 {
        e[n - 2] = h[(n - 1, n - 2)].norm();
    }
    for i in 0..n {
        d[i] = h[(i, i)].re;
    }

    tql1(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("NaN eigenvalue"));
    Ok(d)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix
/// (diagonal `d`, subdiagonal `e`; `e[i]` couples `d[i]` and `d[i+1]`).
fn tql1<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let two = T::of(2.0);
    // absolute deflation floor (EISPACK tql1): clusters of eigenvalues
    // near zero never satisfy the relative test alone
    let mut floor = T::zero();
    for l in 0..n {
        floor = floor.max(T::epsilon() * (d[l].abs() + e[l].abs()));
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailed);
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let denom = g + if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
