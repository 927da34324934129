//! Propagators, trajectory evolution and the projected master equation.
//!
//! The propagator `V(t) = e^{-Ht}` is computed by scaling-and-squaring on
//! the symplectic embedding (whose image is closed under the exponential)
//! and `V^-1` as `e^{+Ht}` rather than by inversion, which preserves the
//! group structure to machine precision. Generalized density matrices
//! evolve by conjugation `rho_tilde(t) = V rho_tilde(0) V^-1`; the
//! projected dynamics and its dissipator act on the complex parts.

mod lindblad;

pub use lindblad::{lindblad_basis, lindblad_fit, LindbladFit, LindbladPairing};

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::metric::{
    expectation, GeneralizedDensity, Metric, Observable, QuasiHamiltonian, StateTolerances,
};
use crate::qmat::QMat;
use crate::scalar::Real;

/// eta-unitary propagator `V(t) = e^{-Ht}` with its inverse `e^{+Ht}`.
#[derive(Debug, Clone)]
pub struct Propagator<T> {
    v: QMat<T>,
    v_inv: QMat<T>,
    t: T,
}

impl<T: Real> Propagator<T> {
    pub fn matrix(&self) -> &QMat<T> {
        &self.v
    }

    pub fn inverse_matrix(&self) -> &QMat<T> {
        &self.v_inv
    }

    pub fn time(&self) -> T {
        self.t
    }
}

/// Builds the propagator at time `t`, asserting eta-unitarity.
pub fn propagator<T: Real>(hq: &QuasiHamiltonian<T>, t: T) -> Result<Propagator<T>> {
    if !t.is_finite() {
        return Err(Error::InvalidParams("propagator time must be finite".into()));
    }
    let z = hq.hamiltonian().embed();
    let v = QMat::extract_default(&z.scale_re(-t).expm()?)?;
    let v_inv = QMat::extract_default(&z.scale_re(t).expm()?)?;
    let eta = hq.metric().eta();
    let resid = v
        .adjoint()
        .matmul(eta)?
        .matmul(&v)?
        .sub(eta)
        .norm_fro();
    let bound = T::tol_spectral() * eta.norm_fro();
    if resid > bound {
        return Err(Error::EtaUnitarityBreach {
            residual: resid.to_f64().unwrap_or(f64::NAN),
            tol: bound.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Propagator { v, v_inv, t })
}

/// `V^dagger eta V = eta` up to `tol * ||eta||_F`.
pub fn is_eta_unitary<T: Real>(v: &QMat<T>, m: &Metric<T>, tol: T) -> Result<bool> {
    if v.rows() != m.dim() || v.cols() != m.dim() {
        return Err(Error::ShapeMismatch(v.rows(), v.cols(), m.dim(), m.dim()));
    }
    let resid = v
        .adjoint()
        .matmul(m.eta())?
        .matmul(v)?
        .sub(m.eta())
        .norm_fro();
    Ok(resid <= tol * m.eta().norm_fro())
}

/// Conjugation step `rho_tilde -> V rho_tilde V^-1`; the result is
/// validated against the trajectory-grade state invariants.
pub fn evolve<T: Real>(
    state: &GeneralizedDensity<T>,
    prop: &Propagator<T>,
) -> Result<GeneralizedDensity<T>> {
    if state.dim() != prop.v.rows() {
        return Err(Error::ShapeMismatch(
            state.dim(),
            state.dim(),
            prop.v.rows(),
            prop.v.cols(),
        ));
    }
    let rho_tilde = prop.v.matmul(state.rho_tilde())?.matmul(&prop.v_inv)?;
    GeneralizedDensity::from_parts_validated(
        rho_tilde,
        state.metric().clone(),
        &StateTolerances::strict(),
    )
}

/// Liouville-von Neumann right-hand side `-[H, rho_tilde]`.
pub fn liouville_rhs<T: Real>(
    state: &GeneralizedDensity<T>,
    hq: &QuasiHamiltonian<T>,
) -> Result<QMat<T>> {
    liouville_rhs_raw(state.rho_tilde(), hq)
}

fn liouville_rhs_raw<T: Real>(rho_tilde: &QMat<T>, hq: &QuasiHamiltonian<T>) -> Result<QMat<T>> {
    if rho_tilde.rows() != hq.dim() {
        return Err(Error::ShapeMismatch(
            rho_tilde.rows(),
            rho_tilde.cols(),
            hq.dim(),
            hq.dim(),
        ));
    }
    Ok(hq.hamiltonian().commutator(rho_tilde)?.neg())
}

/// Right-hand side of the evolution of the plain density matrix
/// `rho(t) = V rho(0) V^dagger`, namely `-(H rho + rho H^dagger)`.
///
/// Multiplying by `eta` and using `H^dagger eta = -eta H` turns this into
/// `-[H, rho eta]`, the Liouville equation for `rho_tilde = rho eta`; the
/// expression is assembled as `-(X + X^dagger)` with `X = H rho`, so the
/// output is Hermitian by construction.
pub fn rho_rhs<T: Real>(rho: &QMat<T>, hq: &QuasiHamiltonian<T>) -> Result<QMat<T>> {
    if rho.rows() != hq.dim() || rho.cols() != hq.dim() {
        return Err(Error::ShapeMismatch(rho.rows(), rho.cols(), hq.dim(), hq.dim()));
    }
    let scale = rho.norm_fro().max(T::one());
    let herm = rho.hermiticity_residual();
    if herm > T::tol_structural() * scale {
        return Err(Error::NotHermitian {
            residual: herm.to_f64().unwrap_or(f64::NAN),
            tol: (T::tol_structural() * scale).to_f64().unwrap_or(f64::NAN),
        });
    }
    let x = hq.hamiltonian().matmul(rho)?;
    Ok(x.add(&x.adjoint()).neg())
}

/// Projected master-equation right-hand side
/// `-[H_alpha, rho_alpha] + H_beta^* rho_beta - rho_beta^* H_beta`.
///
/// Requires a complex metric. Algebraically identical to
/// `P[-[H, rho_tilde]]`; the two routes are cross-checked in debug builds.
pub fn projected_rhs<T: Real>(
    state: &GeneralizedDensity<T>,
    hq: &QuasiHamiltonian<T>,
) -> Result<CMat<T>> {
    if !hq.metric().is_complex() {
        return Err(Error::MetricNotComplex);
    }
    if state.dim() != hq.dim() {
        return Err(Error::ShapeMismatch(state.dim(), state.dim(), hq.dim(), hq.dim()));
    }
    let rho_alpha = state.rho_tilde().alpha();
    let rho_beta = state.rho_tilde().beta();
    let rhs = &dissipator_parts(hq.h_beta(), rho_beta) - &hq.h_alpha().commutator(rho_alpha);

    #[cfg(debug_assertions)]
    {
        let projected = liouville_rhs(state, hq)?.complex_projection();
        let diff = (&rhs - &projected).norm_fro();
        let scale = hq.hamiltonian().norm_fro().max(T::one())
            * state.rho_tilde().norm_fro().max(T::one());
        debug_assert!(
            diff <= T::of(1e-13) * scale.max(T::one()),
            "projected master equation disagrees with the projected commutator"
        );
    }
    Ok(rhs)
}

fn dissipator_parts<T: Real>(h_beta: &CMat<T>, rho_beta: &CMat<T>) -> CMat<T> {
    &h_beta.conj().matmul(rho_beta) - &rho_beta.conj().matmul(h_beta)
}

/// Dissipative part `D = H_beta^* rho_beta - rho_beta^* H_beta` of the
/// projected dynamics; quasi-Hermitian for complex metrics.
pub fn dissipator<T: Real>(
    state: &GeneralizedDensity<T>,
    hq: &QuasiHamiltonian<T>,
) -> Result<CMat<T>> {
    if !hq.metric().is_complex() {
        return Err(Error::MetricNotComplex);
    }
    if state.dim() != hq.dim() {
        return Err(Error::ShapeMismatch(state.dim(), state.dim(), hq.dim(), hq.dim()));
    }
    let d = dissipator_parts(hq.h_beta(), state.rho_tilde().beta());

    #[cfg(debug_assertions)]
    {
        let eta = hq.metric().eta_alpha();
        let eta_inv = hq.metric().eta_inv().alpha();
        let resid = (&eta.matmul(&d).matmul(eta_inv) - &d.adjoint()).norm_fro();
        debug_assert!(
            resid <= T::tol_structural() * d.norm_fro().max(T::one()),
            "dissipator lost quasi-Hermiticity"
        );
    }
    Ok(d)
}

/// Integration backend for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMethod {
    /// Exact conjugation by the matrix-exponential propagator.
    Expm,
    /// Classical fourth-order Runge-Kutta on the Liouville equation; a
    /// cross-check for the exponential route, never the reference.
    Rk4,
}

/// Sampled evolution with named observable readouts.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    times: Vec<T>,
    states: Vec<GeneralizedDensity<T>>,
    observables: Vec<(String, Vec<T>)>,
    method: IntegrationMethod,
}

impl<T: Real> Trajectory<T> {
    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[GeneralizedDensity<T>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn method(&self) -> IntegrationMethod {
        self.method
    }

    /// Observable series in declaration order.
    pub fn observables(&self) -> &[(String, Vec<T>)] {
        &self.observables
    }

    pub fn series(&self, name: &str) -> Option<&[T]> {
        self.observables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }
}

/// Evolves `state0` over the grid, recording expectation values of the
/// named observables at every grid point.
///
/// The `Expm` method conjugates by per-interval propagators (reusing one
/// step propagator on uniform grids); `Rk4` integrates the Liouville
/// equation with classical fourth-order steps and requires a uniform grid.
/// States are validated during integration — strictly for `Expm`, at the
/// hard drift guard for `Rk4`.
pub fn integrate<T: Real>(
    hq: &QuasiHamiltonian<T>,
    state0: &GeneralizedDensity<T>,
    times: &[T],
    method: IntegrationMethod,
    observables: &[(String, Observable<T>)],
) -> Result<Trajectory<T>> {
    if times.is_empty() {
        return Err(Error::InvalidGrid("empty time grid".into()));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidGrid("time grid must be strictly increasing".into()));
        }
    }
    if state0.dim() != hq.dim() {
        return Err(Error::ShapeMismatch(state0.dim(), state0.dim(), hq.dim(), hq.dim()));
    }

    let mut states = Vec::with_capacity(times.len());
    states.push(state0.clone());

    match method {
        IntegrationMethod::Expm => {
            let mut step: Option<Propagator<T>> = None;
            for w in times.windows(2) {
                let dt = w[1] - w[0];
                let reuse = step
                    .as_ref()
                    .map_or(false, |p| (p.time() - dt).abs() <= T::of(1e-12) * dt.abs());
                if !reuse {
                    step = Some(propagator(hq, dt)?);
                }
                let prop = step.as_ref().expect("propagator present");
                let next = evolve(states.last().expect("nonempty"), prop)?;
                states.push(next);
            }
        }
        IntegrationMethod::Rk4 => {
            if times.len() >= 2 {
                let dt0 = times[1] - times[0];
                for w in times.windows(2) {
                    if ((w[1] - w[0]) - dt0).abs() > T::of(1e-9) * dt0 {
                        return Err(Error::InvalidGrid(
                            "rk4 requires a uniform time grid".into(),
                        ));
                    }
                }
                let guard = StateTolerances::loose();
                let half = T::of(0.5);
                let sixth = T::one() / T::of(6.0);
                let two = T::of(2.0);
                let mut y = state0.rho_tilde().clone();
                for _ in 1..times.len() {
                    let k1 = liouville_rhs_raw(&y, hq)?;
                    let k2 = liouville_rhs_raw(&y.add(&k1.scale_re(half * dt0)), hq)?;
                    let k3 = liouville_rhs_raw(&y.add(&k2.scale_re(half * dt0)), hq)?;
                    let k4 = liouville_rhs_raw(&y.add(&k3.scale_re(dt0)), hq)?;
                    let incr = k1
                        .add(&k2.scale_re(two))
                        .add(&k3.scale_re(two))
                        .add(&k4)
                        .scale_re(dt0 * sixth);
                    y = y.add(&incr);
                    states.push(GeneralizedDensity::from_parts_validated(
                        y.clone(),
                        state0.metric().clone(),
                        &guard,
                    )?);
                }
            }
        }
    }

    let mut series: Vec<(String, Vec<T>)> = observables
        .iter()
        .map(|(name, _)| (name.clone(), Vec::with_capacity(times.len())))
        .collect();
    for state in &states {
        for ((_, obs), (_, values)) in observables.iter().zip(series.iter_mut()) {
            values.push(expectation(state, obs)?);
        }
    }

    Ok(Trajectory {
        times: times.to_vec(),
        states,
        observables: series,
        method,
    })
}

/// Measurement of the composition defect of the projected flow.
#[derive(Debug, Clone)]
pub struct DivisibilityReport<T> {
    /// `|| Phi_{t+s}[sigma] - Phi_t[Phi_s[sigma]] ||_F`.
    pub delta: T,
    /// `Phi_{t+s}[sigma]`.
    pub direct: CMat<T>,
    /// `Phi_t[Phi_s[sigma]]`.
    pub composed: CMat<T>,
}

/// Compares `Phi_{t+s}` against `Phi_t o Phi_s` for the projected flow
/// `Phi_u[sigma] = P[V(u) sigma V(u)^-1]` on a complex initial state.
///
/// This measures the composition defect; it imposes no pass/fail. The
/// projection discards the quaternionic part between the two legs of the
/// composed route, which is exactly what the defect quantifies.
pub fn divisibility_report<T: Real>(
    hq: &QuasiHamiltonian<T>,
    state0: &GeneralizedDensity<T>,
    t: T,
    s: T,
) -> Result<DivisibilityReport<T>> {
    if !hq.metric().is_complex() {
        return Err(Error::MetricNotComplex);
    }
    if !state0.is_complex_state() {
        return Err(Error::StateNotComplex);
    }
    let sigma0 = state0.projection();
    let phi = |u: T, sigma: &CMat<T>| -> Result<CMat<T>> {
        let prop = propagator(hq, u)?;
        let lifted = QMat::from_complex(sigma.clone());
        Ok(prop
            .matrix()
            .matmul(&lifted)?
            .matmul(prop.inverse_matrix())?
            .complex_projection())
    };
    let direct = phi(t + s, &sigma0)?;
    let composed = phi(t, &phi(s, &sigma0)?)?;
    let delta = (&direct - &composed).norm_fro();
    Ok(DivisibilityReport {
        delta,
        direct,
        composed,
    })
}
