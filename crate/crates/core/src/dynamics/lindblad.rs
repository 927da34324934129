//! Fitting the projected dissipator to a Lindblad-Kossakowski form.
//!
//! The generator of the projected dynamics decomposes as
//! `-[H_alpha, .] + D` where the dissipative part can be expanded over a
//! basis of traceless matrices orthonormal under the eta-pairing
//! `(X, Y) -> tr(X^ddagger Y)`. The fit samples random full quaternionic
//! states, evaluates the dissipator and solves the least-squares problem
//! for a constant coefficient matrix `C`; a large residual is a valid,
//! reportable outcome (the dissipator depends on the quaternionic part of
//! the state, which the complex projection does not determine).

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::metric::{Metric, QuasiHamiltonian};
use crate::random::random_state;
use crate::scalar::Real;

use super::dissipator;

/// Index pairing inside the double sum `sum_rs C_rs (F_r . F_s^ddagger - ...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LindbladPairing {
    /// Anticommutator term `{F_r^ddagger F_s, .}` — the form as printed.
    #[default]
    AsWritten,
    /// Anticommutator term `{F_s^ddagger F_r, .}` — the conventional
    /// Lindblad index order, for comparison.
    Transposed,
}

/// Result of the least-squares fit: Hermitized coefficient matrix and the
/// relative residual of the fitted superoperator against the sampled
/// dissipator values.
#[derive(Debug, Clone)]
pub struct LindbladFit<T> {
    pub coefficients: CMat<T>,
    pub residual: T,
}

fn eta_adjoint_c<T: Real>(x: &CMat<T>, m: &Metric<T>) -> CMat<T> {
    m.eta_inv()
        .alpha()
        .matmul(&x.adjoint())
        .matmul(m.eta_alpha())
}

fn pairing_inner<T: Real>(x: &CMat<T>, y: &CMat<T>, m: &Metric<T>) -> Complex<T> {
    eta_adjoint_c(x, m).matmul(y).trace()
}

/// Generalized Gell-Mann matrices for dimension `n`: `n^2 - 1` traceless
/// matrices (symmetric, antisymmetric and diagonal families).
fn gell_mann<T: Real>(n: usize) -> Vec<CMat<T>> {
    let mut out = Vec::with_capacity(n * n - 1);
    let one = T::one();
    for j in 0..n {
        for k in j + 1..n {
            let mut sym = CMat::zeros(n, n);
            sym[(j, k)] = Complex::new(one, T::zero());
            sym[(k, j)] = Complex::new(one, T::zero());
            out.push(sym);
            let mut asym = CMat::zeros(n, n);
            asym[(j, k)] = Complex::new(T::zero(), -one);
            asym[(k, j)] = Complex::new(T::zero(), one);
            out.push(asym);
        }
    }
    for l in 1..n {
        let mut diag = CMat::zeros(n, n);
        for j in 0..l {
            diag[(j, j)] = Complex::new(one, T::zero());
        }
        diag[(l, l)] = Complex::new(-T::of(l as f64), T::zero());
        out.push(diag);
    }
    out
}

/// Default dissipator basis: generalized Gell-Mann matrices Gram-Schmidt
/// orthonormalized under `(X, Y) -> tr(X^ddagger Y)`. Requires a complex
/// metric.
pub fn lindblad_basis<T: Real>(m: &Metric<T>) -> Result<Vec<CMat<T>>> {
    if !m.is_complex() {
        return Err(Error::MetricNotComplex);
    }
    let n = m.dim();
    let mut basis: Vec<CMat<T>> = Vec::with_capacity(n * n - 1);
    for raw in gell_mann::<T>(n) {
        let mut v = raw;
        for u in &basis {
            let coeff = pairing_inner(u, &v, m);
            v = &v - &u.scale(coeff);
        }
        let norm_sq = pairing_inner(&v, &v, m).re;
        if norm_sq <= T::epsilon() {
            return Err(Error::BadBasis(
                "Gram-Schmidt produced a numerically null direction".into(),
            ));
        }
        basis.push(v.scale_re(T::one() / norm_sq.sqrt()));
    }
    Ok(basis)
}

fn validate_basis<T: Real>(basis: &[CMat<T>], m: &Metric<T>) -> Result<()> {
    let n = m.dim();
    if basis.len() != n * n - 1 {
        return Err(Error::BadBasis(format!(
            "expected {} basis elements, got {}",
            n * n - 1,
            basis.len()
        )));
    }
    let tol = T::tol_structural();
    for (r, fr) in basis.iter().enumerate() {
        if fr.rows() != n || fr.cols() != n {
            return Err(Error::BadBasis("basis element has wrong shape".into()));
        }
        if fr.trace().norm() > tol * fr.norm_fro().max(T::one()) {
            return Err(Error::BadBasis(format!("basis element {r} is not traceless")));
        }
        for (s, fs) in basis.iter().enumerate() {
            let want = if r == s { T::one() } else { T::zero() };
            let got = pairing_inner(fr, fs, m);
            let dev = (got - Complex::new(want, T::zero())).norm();
            if dev > tol {
                return Err(Error::BadBasis(format!(
                    "orthonormality breach at ({r}, {s}): deviation {dev:e}"
                )));
            }
        }
    }
    Ok(())
}

/// Least-squares fit of constant Hermitian coefficients `C_rs` such that
/// `sum_rs C_rs (F_r sigma F_s^ddagger - 1/2 {K_rs, sigma})` best matches
/// the dissipator over `samples` random full quaternionic states.
///
/// `basis`: dissipator basis; `None` selects [`lindblad_basis`]. The
/// sampled states and therefore the fit are deterministic per seed.
pub fn lindblad_fit<T: Real>(
    hq: &QuasiHamiltonian<T>,
    basis: Option<&[CMat<T>]>,
    samples: usize,
    seed: u64,
    pairing: LindbladPairing,
) -> Result<LindbladFit<T>> {
    let metric = hq.metric();
    if !metric.is_complex() {
        return Err(Error::MetricNotComplex);
    }
    if samples == 0 {
        return Err(Error::InvalidParams("sample count must be positive".into()));
    }
    let owned;
    let basis: &[CMat<T>] = match basis {
        Some(b) => b,
        None => {
            owned = lindblad_basis(metric)?;
            &owned
        }
    };
    validate_basis(basis, metric)?;

    let n = metric.dim();
    let m = basis.len();
    let unknowns = m * m;
    if unknowns == 0 {
        // one-dimensional systems have no traceless directions at all
        return Ok(LindbladFit {
            coefficients: CMat::zeros(0, 0),
            residual: T::zero(),
        });
    }

    let dd: Vec<CMat<T>> = basis.iter().map(|f| eta_adjoint_c(f, metric)).collect();
    // K_rs is the operator inside the anticommutator
    let mut k_ops = Vec::with_capacity(unknowns);
    for r in 0..m {
        for s in 0..m {
            let k = match pairing {
                LindbladPairing::AsWritten => dd[r].matmul(&basis[s]),
                LindbladPairing::Transposed => dd[s].matmul(&basis[r]),
            };
            k_ops.push(k);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = Complex::new(T::zero(), T::zero());
    let half = T::of(0.5);
    // normal equations: gram x = rhs accumulated sample by sample
    let mut gram = CMat::zeros(unknowns, unknowns);
    let mut rhs = vec![zero; unknowns];
    let mut d_norm_sq = T::zero();
    let mut sample_rows: Vec<(Vec<CMat<T>>, CMat<T>)> = Vec::with_capacity(samples);

    for _ in 0..samples {
        let state = random_state(&mut rng, metric)?;
        let sigma = state.rho_tilde().alpha().clone();
        let d = dissipator(&state, hq)?;
        d_norm_sq = d_norm_sq + d.norm_fro() * d.norm_fro();

        let mut columns = Vec::with_capacity(unknowns);
        for r in 0..m {
            let f_sigma = basis[r].matmul(&sigma);
            for s in 0..m {
                let first = f_sigma.matmul(&dd[s]);
                let g = &first - &k_ops[r * m + s].anticommutator(&sigma).scale_re(half);
                columns.push(g);
            }
        }
        for p in 0..unknowns {
            for q in p..unknowns {
                let mut acc = zero;
                for a in 0..n {
                    for b in 0..n {
                        acc = acc + columns[p][(a, b)].conj() * columns[q][(a, b)];
                    }
                }
                gram[(p, q)] = gram[(p, q)] + acc;
                if q != p {
                    gram[(q, p)] = gram[(q, p)] + acc.conj();
                }
            }
            let mut acc = zero;
            for a in 0..n {
                for b in 0..n {
                    acc = acc + columns[p][(a, b)].conj() * d[(a, b)];
                }
            }
            rhs[p] = rhs[p] + acc;
        }
        sample_rows.push((columns, d));
    }

    if d_norm_sq == T::zero() {
        return Ok(LindbladFit {
            coefficients: CMat::zeros(m, m),
            residual: T::zero(),
        });
    }

    let rhs_mat = CMat::from_fn(unknowns, 1, |r, _| rhs[r]);
    let solution = gram.solve(&rhs_mat)?;

    let mut coefficients = CMat::from_fn(m, m, |r, s| solution[(r * m + s, 0)]);
    coefficients = (&coefficients + &coefficients.adjoint()).scale_re(half);

    // residual of the solved (pre-Hermitization) coefficients
    let mut err_sq = T::zero();
    for (columns, d) in &sample_rows {
        let mut fitted = CMat::zeros(n, n);
        for (p, g) in columns.iter().enumerate() {
            fitted = &fitted + &g.scale(solution[(p, 0)]);
        }
        let e = (&fitted - d).norm_fro();
        err_sq = err_sq + e * e;
    }
    let residual = (err_sq / d_norm_sq).sqrt();

    Ok(LindbladFit {
        coefficients,
        residual,
    })
}
