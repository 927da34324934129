//! Exactly solvable spin-1/2 model in a constant quaternionic potential.
//!
//! A two-level system with complex part `H_alpha = (omega/2) diag(i, -i)`
//! and quaternionic potential `j H_beta` with `H_beta = [[0, v/x], [vx, 0]]`,
//! quasianti-Hermitian for the metric `eta = diag(x^2, 1)`. Everything here
//! is evaluated from trigonometric closed forms — no matrix exponentials —
//! so disagreement with the dynamics machinery isolates bugs there.
//!
//! Closed forms used throughout (`E_pm = omega/2 +- v`):
//! eigenvalues `i E_pm` with eigenvectors `psi_pm = (+-i/x, j)/sqrt(2)` and
//! duals `phi_pm = (+-xi, j)/sqrt(2)`; starting from
//! `rho_tilde(0) = diag(0, 1)` the state evolves as
//! `rho_tilde(t) = 1/2 [[1 - cos(2vt), -(j/x) sin(2vt)],
//!                      [jx sin(2vt),   1 + cos(2vt)]]`.
//!
//! On this trajectory `Re tr(s_z rho_tilde(t)) = -cos(2vt)/2`: the initial
//! state is the spin-down projector, so the expectation starts at -1/2.

use num_complex::Complex;

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::metric::{GeneralizedDensity, Metric, Observable, QuasiHamiltonian, StateTolerances};
use crate::qmat::QMat;
use crate::quat::Quaternion;
use crate::scalar::Real;
use crate::spectral::BiorthoSystem;

/// Model parameters: precession frequency `omega`, potential strength `v`
/// and metric asymmetry `x` (natural units, hbar = 1). `v` and `x` must be
/// nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHalfParams<T> {
    omega: T,
    v: T,
    x: T,
}

impl<T: Real> SpinHalfParams<T> {
    pub fn new(omega: T, v: T, x: T) -> Result<Self> {
        if v == T::zero() || x == T::zero() || !omega.is_finite() || !v.is_finite() || !x.is_finite()
        {
            return Err(Error::InvalidParams(
                "spin-half parameters require finite omega and nonzero v, x".to_string(),
            ));
        }
        Ok(Self { omega, v, x })
    }

    /// Documentation/test defaults: omega = 1, v = 1/4, x = 2 (so 2v = 1/2
    /// and t = pi is a quarter period).
    pub fn default_params() -> Self {
        Self {
            omega: T::one(),
            v: T::of(0.25),
            x: T::of(2.0),
        }
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn v(&self) -> T {
        self.v
    }

    pub fn x(&self) -> T {
        self.x
    }

    fn e_plus(&self) -> T {
        self.omega / T::of(2.0) + self.v
    }

    fn e_minus(&self) -> T {
        self.omega / T::of(2.0) - self.v
    }

    /// Hamiltonian and metric: `H = H_alpha + j H_beta`, `eta = diag(x^2, 1)`.
    pub fn system(&self) -> Result<(QuasiHamiltonian<T>, Metric<T>)> {
        let half_omega = self.omega / T::of(2.0);
        let h_alpha = CMat::from_diag(&[
            Complex::new(T::zero(), half_omega),
            Complex::new(T::zero(), -half_omega),
        ]);
        let mut h_beta = CMat::zeros(2, 2);
        h_beta[(0, 1)] = Complex::new(self.v / self.x, T::zero());
        h_beta[(1, 0)] = Complex::new(self.v * self.x, T::zero());
        let h = QMat::new(h_alpha, h_beta)?;
        let metric = Metric::from_real_diag(&[self.x * self.x, T::one()])?;
        let hq = QuasiHamiltonian::from_hamiltonian(h, metric.clone())?;
        Ok((hq, metric))
    }

    /// Closed-form eigensystem: eigenvalues `i(omega/2 +- v)`, plus-branch
    /// first.
    pub fn eigensystem(&self) -> BiorthoSystem<T> {
        let eigenvalues = vec![
            Complex::new(T::zero(), self.e_plus()),
            Complex::new(T::zero(), self.e_minus()),
        ];
        let inv_sqrt2 = T::one() / T::of(2.0).sqrt();
        let mut vectors = Vec::with_capacity(2);
        let mut duals = Vec::with_capacity(2);
        for sign in [T::one(), -T::one()] {
            let mut psi = QMat::zeros(2, 1);
            psi.set_entry(
                0,
                0,
                Quaternion::new(T::zero(), sign / self.x, T::zero(), T::zero()).scale(inv_sqrt2),
            );
            psi.set_entry(1, 0, Quaternion::j().scale(inv_sqrt2));
            vectors.push(psi);

            let mut phi = QMat::zeros(2, 1);
            phi.set_entry(
                0,
                0,
                Quaternion::new(T::zero(), sign * self.x, T::zero(), T::zero()).scale(inv_sqrt2),
            );
            phi.set_entry(1, 0, Quaternion::j().scale(inv_sqrt2));
            duals.push(phi);
        }
        BiorthoSystem::from_parts(eigenvalues, vectors, duals)
    }

    /// Closed-form propagator `V(t) = e^{-Ht}` assembled from the
    /// eigenbasis block formula.
    pub fn propagator_matrix(&self, t: T) -> QMat<T> {
        let ep = Complex::new(T::zero(), -self.e_plus() * t).exp();
        let em = Complex::new(T::zero(), -self.e_minus() * t).exp();
        let half = T::of(0.5);
        let i = Complex::new(T::zero(), T::one());
        let mut alpha = CMat::zeros(2, 2);
        let mut beta = CMat::zeros(2, 2);
        alpha[(0, 0)] = (ep + em).scale(half);
        alpha[(1, 1)] = (ep.conj() + em.conj()).scale(half);
        // (1/x)(e^{-iE_- t} - e^{-iE_+ t}) k  with  z k = j (-i conj(z))
        beta[(0, 1)] = -i * (em.conj() - ep.conj()).scale(half / self.x);
        // x(e^{iE_+ t} - e^{iE_- t}) k
        beta[(1, 0)] = -i * (ep - em).scale(half * self.x);
        QMat::new(alpha, beta).expect("2x2 shapes")
    }

    /// Generalized density matrix along the trajectory that starts at
    /// `rho_tilde(0) = diag(0, 1)`.
    pub fn state(&self, t: T) -> Result<GeneralizedDensity<T>> {
        let (_, metric) = self.system()?;
        let angle = T::of(2.0) * self.v * t;
        let (s, c) = angle.sin_cos();
        let half = T::of(0.5);
        let mut alpha = CMat::zeros(2, 2);
        alpha[(0, 0)] = Complex::new(half * (T::one() - c), T::zero());
        alpha[(1, 1)] = Complex::new(half * (T::one() + c), T::zero());
        let mut beta = CMat::zeros(2, 2);
        beta[(0, 1)] = Complex::new(-half * s / self.x, T::zero());
        beta[(1, 0)] = Complex::new(half * s * self.x, T::zero());
        let rho_tilde = QMat::new(alpha, beta)?;
        GeneralizedDensity::from_parts_validated(rho_tilde, metric, &StateTolerances::strict())
    }

    /// Complex projection of [`SpinHalfParams::state`]:
    /// `diag(1 - cos(2vt), 1 + cos(2vt)) / 2`.
    pub fn projection(&self, t: T) -> CMat<T> {
        let c = (T::of(2.0) * self.v * t).cos();
        let half = T::of(0.5);
        CMat::from_diag(&[
            Complex::new(half * (T::one() - c), T::zero()),
            Complex::new(half * (T::one() + c), T::zero()),
        ])
    }

    /// Generator of the projected dynamics along the trajectory:
    /// `diag(v sin(2vt), -v sin(2vt))`.
    pub fn generator(&self, t: T) -> CMat<T> {
        let s = (T::of(2.0) * self.v * t).sin();
        CMat::from_diag(&[
            Complex::new(self.v * s, T::zero()),
            Complex::new(-self.v * s, T::zero()),
        ])
    }

    /// The spin observable `s_z = diag(1, -1)/2` and the energy observable
    /// `|H| = [[omega/2, -k v/x], [k x v, omega/2]]`, both registered
    /// against the model metric. (`s_x` and `s_y` are not quasi-Hermitian
    /// for this metric and are intentionally absent.)
    pub fn observables(&self) -> Result<(Observable<T>, Observable<T>)> {
        let (_, metric) = self.system()?;
        let half = T::of(0.5);
        let sz = QMat::from_complex(CMat::from_diag(&[
            Complex::new(half, T::zero()),
            Complex::new(-half, T::zero()),
        ]));
        let half_omega = self.omega * half;
        let alpha = CMat::from_diag(&[
            Complex::new(half_omega, T::zero()),
            Complex::new(half_omega, T::zero()),
        ]);
        // -k(v/x) has pair form j * (i v/x); k(xv) has pair form j * (-i xv)
        let mut beta = CMat::zeros(2, 2);
        beta[(0, 1)] = Complex::new(T::zero(), self.v / self.x);
        beta[(1, 0)] = Complex::new(T::zero(), -self.v * self.x);
        let mod_h = QMat::new(alpha, beta)?;
        Ok((
            Observable::new(sz, &metric)?,
            Observable::new(mod_h, &metric)?,
        ))
    }

    /// `Re tr(s_z rho_tilde(t)) = -cos(2vt)/2` on this trajectory.
    pub fn sz_expectation(&self, t: T) -> T {
        -(T::of(2.0) * self.v * t).cos() / T::of(2.0)
    }

    /// `Re tr(|H| rho_tilde(t)) = omega/2`, constant in time.
    pub fn energy_expectation(&self) -> T {
        self.omega / T::of(2.0)
    }
}
