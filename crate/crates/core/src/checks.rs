//! Seeded property-check suites.
//!
//! These drive the structural invariants of the algebra, metric and
//! dynamics layers over randomly generated systems, reporting one line per
//! property with the worst observed residual. The command-line front end
//! exposes them via `check --suite <invariants|prop1|convergence|all>`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{
    dissipator, integrate, liouville_rhs, projected_rhs, propagator, IntegrationMethod,
};
use crate::error::Result;
use crate::metric::{
    eta_adjoint, expectation, proposition1_check, pseudo_hermiticity_residual, Observable,
};
use crate::qmat::QMat;
use crate::random::{
    gaussian_qmat, random_complex_metric, random_quasi_hamiltonian, random_quaternionic_metric,
    random_state,
};
use crate::scalar::Real;
use crate::spinhalf::SpinHalfParams;

/// One checked property: the observed value, the comparison it must
/// satisfy, and the verdict.
#[derive(Debug, Clone)]
pub struct PropertyResult<T> {
    pub name: String,
    /// Worst observed residual (or measured quantity, for convergence).
    pub value: T,
    /// Human-readable bound the value was checked against.
    pub bound: String,
    pub passed: bool,
}

/// Results of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport<T> {
    pub properties: Vec<PropertyResult<T>>,
}

impl<T: Real> SuiteReport<T> {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyResult<T>> {
        self.properties.iter().find(|p| !p.passed)
    }
}

/// Suite parameters: RNG seed, system dimension, trial count and an
/// optional threshold override for the residual-type properties.
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig<T> {
    pub seed: u64,
    pub n: usize,
    pub trials: usize,
    pub tol: Option<T>,
}

impl<T: Real> Default for CheckConfig<T> {
    fn default() -> Self {
        Self {
            seed: 42,
            n: 3,
            trials: 50,
            tol: None,
        }
    }
}

fn upper_bound_property<T: Real>(
    name: &str,
    value: T,
    threshold: T,
    override_tol: Option<T>,
) -> PropertyResult<T> {
    let threshold = override_tol.unwrap_or(threshold);
    PropertyResult {
        name: name.to_string(),
        value,
        bound: format!("<= {:e}", threshold.to_f64().unwrap_or(f64::NAN)),
        passed: value <= threshold,
    }
}

/// Structural invariants of the algebra, metric and dynamics layers on
/// random systems of dimension `n`.
pub fn invariants_suite<T: Real>(cfg: &CheckConfig<T>) -> Result<SuiteReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n;
    let trials = cfg.trials.max(1);

    let mut homomorphism = T::zero();
    let mut adjoint_compat = T::zero();
    let mut involution = T::zero();
    let mut eta_unitarity = T::zero();
    let mut conservation = T::zero();
    let mut pseudo_herm = T::zero();
    let mut positivity = T::zero();
    let mut projection_identity = T::zero();
    let mut dissipator_qh = T::zero();
    let mut sufficiency = T::zero();

    for _ in 0..trials {
        // embedding is an algebra homomorphism compatible with the adjoint
        let a: QMat<T> = gaussian_qmat(&mut rng, n, n);
        let b: QMat<T> = gaussian_qmat(&mut rng, n, n);
        let scale = a.norm_fro().max(T::one()) * b.norm_fro().max(T::one());
        let hom = (&a.matmul(&b)?.embed() - &a.embed().matmul(&b.embed())).norm_fro() / scale;
        homomorphism = homomorphism.max(hom);
        let adj = (&a.adjoint().embed() - &a.embed().adjoint()).norm_fro()
            / a.norm_fro().max(T::one());
        adjoint_compat = adjoint_compat.max(adj);

        let metric = random_complex_metric(&mut rng, n)?;
        let q: QMat<T> = gaussian_qmat(&mut rng, n, n);
        let twice = eta_adjoint(&eta_adjoint(&q, &metric)?, &metric)?;
        involution = involution.max(twice.sub(&q).norm_fro() / q.norm_fro().max(T::one()));

        let hq = random_quasi_hamiltonian(&mut rng, &metric)?;
        for &t in &[T::of(0.1), T::one(), T::of(5.0)] {
            let prop = propagator(&hq, t)?;
            let resid = prop
                .matrix()
                .adjoint()
                .matmul(metric.eta())?
                .matmul(prop.matrix())?
                .sub(metric.eta())
                .norm_fro()
                / metric.eta().norm_fro();
            eta_unitarity = eta_unitarity.max(resid);
        }

        let state = random_state(&mut rng, &metric)?;
        let dt = T::of(0.5);
        let times: Vec<T> = (0..5).map(|k| T::of(k as f64) * dt).collect();
        let traj = integrate(&hq, &state, &times, IntegrationMethod::Expm, &[])?;
        for s in traj.states() {
            conservation = conservation.max((s.rho_tilde().re_trace()? - T::one()).abs());
            pseudo_herm =
                pseudo_herm.max(pseudo_hermiticity_residual(s.rho_tilde(), &metric)?);
            let min_eig = s.min_positivity_eigenvalue()?;
            positivity = positivity.max((-min_eig).max(T::zero()));
        }

        let direct = projected_rhs(&state, &hq)?;
        let via_projection = liouville_rhs(&state, &hq)?.complex_projection();
        projection_identity =
            projection_identity.max((&direct - &via_projection).norm_fro());

        let d = dissipator(&state, &hq)?;
        let eta_c = metric.eta_alpha();
        let eta_inv_c = metric.eta_inv().alpha();
        dissipator_qh = dissipator_qh
            .max((&eta_c.matmul(&d).matmul(eta_inv_c) - &d.adjoint()).norm_fro());

        // complex pseudo-Hermitian observable ignores the quaternionic part
        let q0 = QMat::from_complex(crate::random::gaussian_cmat(&mut rng, n, n));
        let obs_mat = q0.add(&eta_adjoint(&q0, &metric)?).scale_re(T::of(0.5));
        let obs = Observable::new(obs_mat.clone(), &metric)?;
        let full = expectation(&state, &obs)?;
        let complex_only = state.projection().matmul(obs_mat.alpha()).trace().re;
        sufficiency =
            sufficiency.max((full - complex_only).abs() / full.abs().max(T::one()));
    }

    let t = cfg.tol;
    Ok(SuiteReport {
        properties: vec![
            upper_bound_property("embedding homomorphism", homomorphism, T::tol_identity(), t),
            upper_bound_property("embedding adjoint compatibility", adjoint_compat, T::tol_identity(), t),
            upper_bound_property("eta-adjoint involution", involution, T::tol_factor(), t),
            upper_bound_property("propagator eta-unitarity", eta_unitarity, T::tol_spectral(), t),
            upper_bound_property("trajectory re-trace conservation", conservation, T::tol_structural(), t),
            upper_bound_property("trajectory pseudo-Hermiticity", pseudo_herm, T::tol_spectral(), t),
            upper_bound_property("trajectory positivity", positivity, T::tol_spectral(), t),
            upper_bound_property("projection identity", projection_identity, T::of(1e-13), t),
            upper_bound_property("dissipator quasi-Hermiticity", dissipator_qh, T::tol_structural(), t),
            upper_bound_property("complex-observable sufficiency", sufficiency, T::tol_identity(), t),
        ],
    })
}

/// Forward and converse directions of the projection quasi-Hermiticity
/// statement on random metrics.
pub fn prop1_suite<T: Real>(cfg: &CheckConfig<T>) -> Result<SuiteReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials.max(1);

    let metric = random_complex_metric::<T, _>(&mut rng, cfg.n)?;
    let forward = proposition1_check(&metric, trials, cfg.seed ^ 0x517c_c1b7_2722_0a95);
    let forward_prop = PropertyResult {
        name: format!("projection quasi-Hermiticity, complex metric ({} trials)", trials),
        value: forward.max_residual(),
        bound: format!(
            "<= {:e} with 0 violations (found {})",
            cfg.tol.unwrap_or(forward.pass_tol).to_f64().unwrap_or(f64::NAN),
            forward.violations
        ),
        passed: forward.violations == 0
            && forward.max_residual() <= cfg.tol.unwrap_or(forward.pass_tol),
    };

    let qmetric = random_quaternionic_metric::<T, _>(&mut rng, cfg.n.max(2))?;
    let converse = proposition1_check(&qmetric, trials, cfg.seed ^ 0x2545_f491_4f6c_dd1d);
    let converse_prop = PropertyResult {
        name: format!(
            "projection quasi-Hermiticity violations, quaternionic metric ({} trials)",
            trials
        ),
        value: T::of(converse.violations as f64),
        bound: format!(">= 1 violation with residual > {:e}",
            converse.violation_tol.to_f64().unwrap_or(f64::NAN)),
        passed: converse.violations >= 1,
    };

    Ok(SuiteReport {
        properties: vec![forward_prop, converse_prop],
    })
}

/// Measured RK4 convergence order against the exponential integrator on
/// the spin-half system, for consecutive halvings of `dt` in
/// {0.04, 0.02, 0.01}; fourth-order behavior means orders in [3.5, 4.5].
pub fn convergence_suite<T: Real>() -> Result<SuiteReport<T>> {
    let params: SpinHalfParams<T> = SpinHalfParams::default_params();
    let (hq, _) = params.system()?;
    let state0 = params.state(T::zero())?;
    let t_max = T::of(10.0);
    let dts = [T::of(0.04), T::of(0.02), T::of(0.01)];
    let mut errors = Vec::with_capacity(dts.len());
    for &dt in &dts {
        let steps = (t_max / dt)
            .round()
            .to_usize()
            .expect("step count fits usize");
        let times: Vec<T> = (0..=steps).map(|k| T::of(k as f64) * dt).collect();
        let reference = integrate(&hq, &state0, &times, IntegrationMethod::Expm, &[])?;
        let rk = integrate(&hq, &state0, &times, IntegrationMethod::Rk4, &[])?;
        let mut max_err = T::zero();
        for (se, sr) in reference.states().iter().zip(rk.states()) {
            max_err = max_err.max(se.rho_tilde().sub(sr.rho_tilde()).norm_fro());
        }
        errors.push(max_err);
    }

    let mut properties = Vec::new();
    for k in 0..dts.len() - 1 {
        let order = (errors[k] / errors[k + 1]).log2();
        properties.push(PropertyResult {
            name: format!(
                "rk4 convergence order (dt {} -> {})",
                dts[k], dts[k + 1]
            ),
            value: order,
            bound: "in [3.5, 4.5]".to_string(),
            passed: order >= T::of(3.5) && order <= T::of(4.5),
        });
    }
    Ok(SuiteReport { properties })
}

/// Runs every suite and concatenates the reports.
pub fn all_suites<T: Real>(cfg: &CheckConfig<T>) -> Result<SuiteReport<T>> {
    let mut properties = invariants_suite(cfg)?.properties;
    properties.extend(prop1_suite(cfg)?.properties);
    properties.extend(convergence_suite()?.properties);
    Ok(SuiteReport { properties })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_suite_passes_at_default_dimensions() {
        let cfg = CheckConfig::<f64> {
            seed: 42,
            n: 3,
            trials: 10,
            tol: None,
        };
        let report = invariants_suite(&cfg).unwrap();
        assert!(report.passed(), "failed: {:?}", report.first_failure());
        assert_eq!(report.properties.len(), 10);
    }

    #[test]
    fn invariants_suite_handles_one_dimensional_systems() {
        let cfg = CheckConfig::<f64> {
            seed: 7,
            n: 1,
            trials: 10,
            tol: None,
        };
        let report = invariants_suite(&cfg).unwrap();
        assert!(report.passed(), "failed: {:?}", report.first_failure());
    }

    #[test]
    fn prop1_suite_finds_forward_and_converse() {
        let cfg = CheckConfig::<f64> {
            seed: 42,
            n: 3,
            trials: 100,
            tol: None,
        };
        let report = prop1_suite(&cfg).unwrap();
        assert!(report.passed(), "failed: {:?}", report.first_failure());
    }

    #[test]
    fn convergence_suite_measures_fourth_order() {
        let report = convergence_suite::<f64>().unwrap();
        assert!(report.passed(), "failed: {:?}", report.first_failure());
        assert_eq!(report.properties.len(), 2);
    }

    #[test]
    fn tolerance_override_is_applied() {
        let cfg = CheckConfig::<f64> {
            seed: 42,
            n: 2,
            trials: 5,
            tol: Some(1e-300),
        };
        let report = invariants_suite(&cfg).unwrap();
        assert!(!report.passed());
    }
}
