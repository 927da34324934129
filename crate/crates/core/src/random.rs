//! Seeded random generators for metrics, Hamiltonians and states.
//!
//! Used by the property-check suites and by the fitting routines; all
//! draws go through [`crate::scalar::standard_normal`] so seeded runs are
//! reproducible across scalar types.

use rand::Rng;

use crate::cmat::CMat;
use crate::error::Result;
use crate::metric::{GeneralizedDensity, Metric, QuasiHamiltonian};
use crate::qmat::QMat;
use crate::quat::Quaternion;
use crate::scalar::{standard_normal, standard_normal_complex, Real};

/// Random quaternionic Gaussian matrix.
pub fn gaussian_qmat<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QMat<T> {
    let mut m = QMat::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set_entry(
                r,
                c,
                Quaternion::new(
                    standard_normal(rng),
                    standard_normal(rng),
                    standard_normal(rng),
                    standard_normal(rng),
                ),
            );
        }
    }
    m
}

/// Random complex Gaussian matrix.
pub fn gaussian_cmat<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat<T> {
    CMat::from_fn(rows, cols, |_, _| standard_normal_complex(rng))
}

/// Random complex metric `eta = G^dagger G + I` with complex Gaussian `G`.
pub fn random_complex_metric<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Metric<T>> {
    let g = QMat::from_complex(gaussian_cmat(rng, n, n));
    let eta = g.adjoint().matmul(&g)?.add(&QMat::identity(n));
    Metric::new(eta)
}

/// Random genuinely quaternionic metric `eta = G^dagger G + I`; resamples
/// until the `j`-part of `G` has Frobenius norm at least 0.5.
pub fn random_quaternionic_metric<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<Metric<T>> {
    loop {
        let g = gaussian_qmat(rng, n, n);
        if g.beta().norm_fro() < T::of(0.5) {
            continue;
        }
        let eta = g.adjoint().matmul(&g)?.add(&QMat::identity(n));
        return Metric::new(eta);
    }
}

/// Random full quaternionic state `rho = G^dagger G` normalized against `m`.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    m: &Metric<T>,
) -> Result<GeneralizedDensity<T>> {
    let n = m.dim();
    let g = gaussian_qmat(rng, n, n);
    let rho = g.adjoint().matmul(&g)?;
    GeneralizedDensity::from_rho(&rho, m)
}

/// Random complex state (zero quaternionic part) for `m`.
pub fn random_complex_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    m: &Metric<T>,
) -> Result<GeneralizedDensity<T>> {
    let n = m.dim();
    let g = QMat::from_complex(gaussian_cmat(rng, n, n));
    let rho = g.adjoint().matmul(&g)?;
    GeneralizedDensity::from_rho(&rho, m)
}

/// Random quasianti-Hermitian Hamiltonian for a complex metric:
/// `A_alpha = (X - X^dagger)/2`, `A_beta = (Y + Y^T)/2` with Gaussian `X`, `Y`.
pub fn random_quasi_hamiltonian<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    m: &Metric<T>,
) -> Result<QuasiHamiltonian<T>> {
    let n = m.dim();
    let x: CMat<T> = gaussian_cmat(rng, n, n);
    let y: CMat<T> = gaussian_cmat(rng, n, n);
    let a_alpha = (&x - &x.adjoint()).scale_re(T::of(0.5));
    let a_beta = (&y + &y.transpose()).scale_re(T::of(0.5));
    QuasiHamiltonian::from_factor_parts(a_alpha, a_beta, m.clone())
}
