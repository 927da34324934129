//! Metric (pseudo/quasi-Hermitian) structures.
//!
//! A [`Metric`] is a Hermitian positive definite `eta` together with its
//! cached Cholesky factor `B` (so `eta = B^dagger B`), the inverses of
//! both, and a flag recording whether `eta` is a purely complex matrix.
//! Quasianti-Hermitian Hamiltonians, generalized density matrices and
//! observables are all registered against a metric, and positivity
//! statements are phrased through the `B`-similarity `M -> B M B^-1`.

use num_complex::Complex;

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::qmat::QMat;
use crate::scalar::Real;

/// Hermitian positive definite metric with cached factorizations.
#[derive(Debug, Clone)]
pub struct Metric<T> {
    eta: QMat<T>,
    eta_inv: QMat<T>,
    factor_b: QMat<T>,
    factor_b_inv: QMat<T>,
    is_complex: bool,
}

impl<T: Real> Metric<T> {
    /// Validates Hermiticity and positive definiteness, then caches the
    /// Cholesky factor and both inverses.
    pub fn new(eta: QMat<T>) -> Result<Self> {
        if !eta.is_square() {
            return Err(Error::NotSquare(eta.rows(), eta.cols()));
        }
        let scale = eta.norm_fro().max(T::one());
        let resid = eta.hermiticity_residual();
        if resid > T::tol_identity() * scale {
            return Err(Error::NotHermitian {
                residual: resid.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_identity() * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        let factor_b = eta.cholesky()?;
        let factor_b_inv = factor_b.inverse()?;
        let eta_inv = eta.inverse()?;
        let is_complex = eta.is_complex_entries();
        // cached factor must reproduce eta
        let refactor = factor_b.adjoint().matmul(&factor_b)?.sub(&eta).norm_fro();
        debug_assert!(refactor <= T::tol_factor() * scale, "Cholesky refactor drift");
        Ok(Self {
            eta,
            eta_inv,
            factor_b,
            factor_b_inv,
            is_complex,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(QMat::identity(n)).expect("identity metric")
    }

    /// Metric with complex diagonal entries (must be real positive).
    pub fn from_real_diag(diag: &[T]) -> Result<Self> {
        let entries: Vec<Complex<T>> = diag.iter().map(|&d| Complex::new(d, T::zero())).collect();
        Self::new(QMat::from_complex(CMat::from_diag(&entries)))
    }

    pub fn dim(&self) -> usize {
        self.eta.rows()
    }

    pub fn eta(&self) -> &QMat<T> {
        &self.eta
    }

    pub fn eta_inv(&self) -> &QMat<T> {
        &self.eta_inv
    }

    /// Upper-triangular `B` with `B^dagger B = eta`.
    pub fn factor_b(&self) -> &QMat<T> {
        &self.factor_b
    }

    pub fn factor_b_inv(&self) -> &QMat<T> {
        &self.factor_b_inv
    }

    /// True when `eta` has no quaternionic part.
    pub fn is_complex(&self) -> bool {
        self.is_complex
    }

    /// Complex part of `eta`; only meaningful when [`Metric::is_complex`].
    pub fn eta_alpha(&self) -> &CMat<T> {
        self.eta.alpha()
    }

    /// `B M B^-1`.
    pub fn b_similarity(&self, m: &QMat<T>) -> Result<QMat<T>> {
        self.factor_b.matmul(m)?.matmul(&self.factor_b_inv)
    }
}

/// eta-adjoint `Q^ddagger = eta^-1 Q^dagger eta`.
pub fn eta_adjoint<T: Real>(q: &QMat<T>, m: &Metric<T>) -> Result<QMat<T>> {
    if q.rows() != m.dim() || q.cols() != m.dim() {
        return Err(Error::ShapeMismatch(q.rows(), q.cols(), m.dim(), m.dim()));
    }
    m.eta_inv().matmul(&q.adjoint())?.matmul(m.eta())
}

/// Residual `||eta Q eta^-1 - Q^dagger||_F`.
pub fn pseudo_hermiticity_residual<T: Real>(q: &QMat<T>, m: &Metric<T>) -> Result<T> {
    if q.rows() != m.dim() || q.cols() != m.dim() {
        return Err(Error::ShapeMismatch(q.rows(), q.cols(), m.dim(), m.dim()));
    }
    let lhs = m.eta().matmul(q)?.matmul(m.eta_inv())?;
    Ok(lhs.sub(&q.adjoint()).norm_fro())
}

/// Residual `||eta H eta^-1 + H^dagger||_F`.
pub fn pseudo_anti_hermiticity_residual<T: Real>(h: &QMat<T>, m: &Metric<T>) -> Result<T> {
    if h.rows() != m.dim() || h.cols() != m.dim() {
        return Err(Error::ShapeMismatch(h.rows(), h.cols(), m.dim(), m.dim()));
    }
    let lhs = m.eta().matmul(h)?.matmul(m.eta_inv())?;
    Ok(lhs.add(&h.adjoint()).norm_fro())
}

/// `eta Q eta^-1 = Q^dagger` up to `tol * ||Q||_F`.
pub fn is_pseudo_hermitian<T: Real>(q: &QMat<T>, m: &Metric<T>, tol: T) -> Result<bool> {
    Ok(pseudo_hermiticity_residual(q, m)? <= tol * q.norm_fro())
}

/// `eta H eta^-1 = -H^dagger` up to `tol * ||H||_F`.
pub fn is_pseudo_anti_hermitian<T: Real>(h: &QMat<T>, m: &Metric<T>, tol: T) -> Result<bool> {
    Ok(pseudo_anti_hermiticity_residual(h, m)? <= tol * h.norm_fro())
}

/// Quasianti-Hermitian Hamiltonian `H = (A_alpha + j A_beta) eta` together
/// with its metric and the complex parts of the anti-Hermitian factor `A`.
#[derive(Debug, Clone)]
pub struct QuasiHamiltonian<T> {
    h: QMat<T>,
    metric: Metric<T>,
    a_alpha: CMat<T>,
    a_beta: CMat<T>,
}

impl<T: Real> QuasiHamiltonian<T> {
    /// Builds `H = (A_alpha + j A_beta) eta` from the factor parts.
    ///
    /// `A_alpha` must be anti-Hermitian and `A_beta` symmetric (this makes
    /// `A = A_alpha + j A_beta` anti-Hermitian as a quaternionic matrix),
    /// and the metric must be complex — the projection theory this crate
    /// implements does not apply otherwise.
    pub fn from_factor_parts(a_alpha: CMat<T>, a_beta: CMat<T>, metric: Metric<T>) -> Result<Self> {
        if !metric.is_complex() {
            return Err(Error::MetricNotComplex);
        }
        let n = metric.dim();
        if a_alpha.rows() != n || a_alpha.cols() != n {
            return Err(Error::ShapeMismatch(a_alpha.rows(), a_alpha.cols(), n, n));
        }
        a_alpha.check_same_shape(&a_beta)?;
        let scale_a = a_alpha.norm_fro().max(T::one());
        let anti = (&a_alpha + &a_alpha.adjoint()).norm_fro();
        if anti > T::tol_structural() * scale_a {
            return Err(Error::NotAntiHermitian {
                residual: anti.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_structural() * scale_a).to_f64().unwrap_or(f64::NAN),
            });
        }
        let scale_b = a_beta.norm_fro().max(T::one());
        let sym = (&a_beta - &a_beta.transpose()).norm_fro();
        if sym > T::tol_structural() * scale_b {
            return Err(Error::NotSymmetric {
                residual: sym.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_structural() * scale_b).to_f64().unwrap_or(f64::NAN),
            });
        }
        let a = QMat::new(a_alpha.clone(), a_beta.clone())?;
        let h = a.matmul(metric.eta())?;
        let hq = Self {
            h,
            metric,
            a_alpha,
            a_beta,
        };
        hq.assert_quasianti()?;
        Ok(hq)
    }

    /// Registers an existing Hamiltonian by factoring `A = H eta^-1`.
    ///
    /// Works for any Hermitian positive metric; `H` must be
    /// eta-pseudoanti-Hermitian.
    pub fn from_hamiltonian(h: QMat<T>, metric: Metric<T>) -> Result<Self> {
        let a = hamiltonian_factor(&h, &metric)?;
        Ok(Self {
            a_alpha: a.alpha().clone(),
            a_beta: a.beta().clone(),
            h,
            metric,
        })
    }

    fn assert_quasianti(&self) -> Result<()> {
        let resid = pseudo_anti_hermiticity_residual(&self.h, &self.metric)?;
        let scale = self.h.norm_fro().max(T::one());
        if resid > T::tol_structural() * scale {
            return Err(Error::NotPseudoAntiHermitian {
                residual: resid.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_structural() * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn hamiltonian(&self) -> &QMat<T> {
        &self.h
    }

    pub fn metric(&self) -> &Metric<T> {
        &self.metric
    }

    /// Complex part `H_alpha` of the Hamiltonian.
    pub fn h_alpha(&self) -> &CMat<T> {
        self.h.alpha()
    }

    /// Quaternionic part `H_beta` (so the potential term is `j H_beta`).
    pub fn h_beta(&self) -> &CMat<T> {
        self.h.beta()
    }

    pub fn a_alpha(&self) -> &CMat<T> {
        &self.a_alpha
    }

    pub fn a_beta(&self) -> &CMat<T> {
        &self.a_beta
    }

    /// The anti-Hermitian factor `A = H eta^-1` as a quaternionic matrix.
    pub fn factor_a(&self) -> Result<QMat<T>> {
        QMat::new(self.a_alpha.clone(), self.a_beta.clone())
    }
}

/// Factors `H = A eta`, returning `A = H eta^-1` and verifying that it is
/// anti-Hermitian.
pub fn hamiltonian_factor<T: Real>(h: &QMat<T>, m: &Metric<T>) -> Result<QMat<T>> {
    let resid = pseudo_anti_hermiticity_residual(h, m)?;
    let scale = h.norm_fro().max(T::one());
    if resid > T::tol_structural() * scale {
        return Err(Error::NotPseudoAntiHermitian {
            residual: resid.to_f64().unwrap_or(f64::NAN),
            tol: (T::tol_structural() * scale).to_f64().unwrap_or(f64::NAN),
        });
    }
    let a = h.matmul(m.eta_inv())?;
    let anti = a.anti_hermiticity_residual();
    let a_scale = a.norm_fro().max(T::one());
    if anti > T::tol_structural() * a_scale {
        return Err(Error::NotAntiHermitian {
            residual: anti.to_f64().unwrap_or(f64::NAN),
            tol: (T::tol_structural() * a_scale).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(a)
}

/// Similarity `H' = B H B^-1`; anti-Hermitian for a quasianti-Hermitian `H`.
pub fn similarity_to_antihermitian<T: Real>(hq: &QuasiHamiltonian<T>) -> Result<QMat<T>> {
    let hp = hq.metric().b_similarity(hq.hamiltonian())?;
    let resid = hp.anti_hermiticity_residual();
    let scale = hp.norm_fro().max(T::one());
    if resid > T::tol_structural() * scale {
        return Err(Error::SimilarityFailed {
            residual: resid.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(hp)
}

/// Validation thresholds for generalized density matrices.
#[derive(Debug, Clone, Copy)]
pub struct StateTolerances<T> {
    /// `|Re tr rho_tilde - 1|` bound.
    pub re_trace: T,
    /// Pseudo-Hermiticity residual bound.
    pub pseudo_hermitian: T,
    /// Minimum-eigenvalue bound (negated) for `B rho_tilde B^-1`.
    pub positivity: T,
}

impl<T: Real> StateTolerances<T> {
    /// Trajectory-grade bounds.
    pub fn strict() -> Self {
        Self {
            re_trace: T::tol_structural(),
            pseudo_hermitian: T::tol_spectral(),
            positivity: T::tol_spectral(),
        }
    }

    /// Drift guard for explicit integrators.
    pub fn loose() -> Self {
        Self {
            re_trace: T::tol_hard(),
            pseudo_hermitian: T::tol_hard(),
            positivity: T::tol_hard(),
        }
    }
}

impl<T: Real> Default for StateTolerances<T> {
    fn default() -> Self {
        Self::strict()
    }
}

/// Generalized density matrix `rho_tilde = rho eta`.
#[derive(Debug, Clone)]
pub struct GeneralizedDensity<T> {
    rho_tilde: QMat<T>,
    metric: Metric<T>,
}

impl<T: Real> GeneralizedDensity<T> {
    /// Builds `rho_tilde = rho eta` from a Hermitian positive `rho`,
    /// normalizing so that `Re tr(rho_tilde) = 1`.
    pub fn from_rho(rho: &QMat<T>, metric: &Metric<T>) -> Result<Self> {
        let scale = rho.norm_fro().max(T::one());
        let herm = rho.hermiticity_residual();
        if herm > T::tol_structural() * scale {
            return Err(Error::NotHermitian {
                residual: herm.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_structural() * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        let pos = rho.positivity(T::tol_structural())?;
        if !pos.is_positive {
            return Err(Error::NotPositive {
                min_eigenvalue: pos.min_eigenvalue.to_f64().unwrap_or(f64::NAN),
            });
        }
        let rho_tilde = rho.matmul(metric.eta())?;
        Self::from_rho_tilde(&rho_tilde, metric)
    }

    /// Accepts `rho_tilde` directly, normalizing its real trace to one and
    /// validating the state invariants at strict tolerances.
    pub fn from_rho_tilde(rho_tilde: &QMat<T>, metric: &Metric<T>) -> Result<Self> {
        let trace = rho_tilde.re_trace()?;
        if trace <= T::tol_identity() {
            return Err(Error::NotPositive {
                min_eigenvalue: trace.to_f64().unwrap_or(f64::NAN),
            });
        }
        let state = Self {
            rho_tilde: rho_tilde.scale_re(T::one() / trace),
            metric: metric.clone(),
        };
        state.validate(&StateTolerances::strict())?;
        Ok(state)
    }

    /// Wraps parts already known to satisfy the invariants at `tols`.
    pub(crate) fn from_parts_validated(
        rho_tilde: QMat<T>,
        metric: Metric<T>,
        tols: &StateTolerances<T>,
    ) -> Result<Self> {
        let state = Self { rho_tilde, metric };
        state.validate(tols)?;
        Ok(state)
    }

    /// Checks the three defining invariants, reporting the first breach.
    pub fn validate(&self, tols: &StateTolerances<T>) -> Result<()> {
        let trace_dev = (self.rho_tilde.re_trace()? - T::one()).abs();
        if trace_dev > tols.re_trace {
            return Err(Error::InvariantBreach {
                invariant: "unit real trace",
                residual: trace_dev.to_f64().unwrap_or(f64::NAN),
                tol: tols.re_trace.to_f64().unwrap_or(f64::NAN),
            });
        }
        let pseudo = pseudo_hermiticity_residual(&self.rho_tilde, &self.metric)?;
        if pseudo > tols.pseudo_hermitian {
            return Err(Error::InvariantBreach {
                invariant: "eta-pseudo-Hermiticity",
                residual: pseudo.to_f64().unwrap_or(f64::NAN),
                tol: tols.pseudo_hermitian.to_f64().unwrap_or(f64::NAN),
            });
        }
        let sim = self.metric.b_similarity(&self.rho_tilde)?;
        let pos = sim.positivity(tols.positivity)?;
        if !pos.is_positive {
            return Err(Error::InvariantBreach {
                invariant: "positivity under B-similarity",
                residual: (-pos.min_eigenvalue).to_f64().unwrap_or(f64::NAN),
                tol: tols.positivity.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn rho_tilde(&self) -> &QMat<T> {
        &self.rho_tilde
    }

    pub fn metric(&self) -> &Metric<T> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.rho_tilde.rows()
    }

    /// Complex projection `P[rho_tilde] = rho_tilde_alpha`.
    pub fn projection(&self) -> CMat<T> {
        self.rho_tilde.complex_projection()
    }

    /// Quaternionic part `rho_tilde_beta`.
    pub fn beta_part(&self) -> &CMat<T> {
        self.rho_tilde.beta()
    }

    /// True when the state has no quaternionic part (up to roundoff).
    pub fn is_complex_state(&self) -> bool {
        self.rho_tilde.beta().norm_fro()
            <= T::tol_pair() * self.rho_tilde.norm_fro().max(T::one())
    }

    /// Minimum eigenvalue of `chi(B rho_tilde B^-1)`.
    pub fn min_positivity_eigenvalue(&self) -> Result<T> {
        let sim = self.metric.b_similarity(&self.rho_tilde)?;
        Ok(sim.positivity(T::tol_hard())?.min_eigenvalue)
    }
}

/// eta-pseudo-Hermitian observable.
#[derive(Debug, Clone)]
pub struct Observable<T> {
    q: QMat<T>,
    is_complex: bool,
}

impl<T: Real> Observable<T> {
    /// Registers `q` against the metric, checking pseudo-Hermiticity.
    pub fn new(q: QMat<T>, m: &Metric<T>) -> Result<Self> {
        Self::with_tolerance(q, m, T::tol_structural())
    }

    pub fn with_tolerance(q: QMat<T>, m: &Metric<T>, tol: T) -> Result<Self> {
        let resid = pseudo_hermiticity_residual(&q, m)?;
        let scale = q.norm_fro().max(T::one());
        if resid > tol * scale {
            return Err(Error::NotHermitian {
                residual: resid.to_f64().unwrap_or(f64::NAN),
                tol: (tol * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        let is_complex = q.is_complex_entries();
        Ok(Self { q, is_complex })
    }

    pub fn matrix(&self) -> &QMat<T> {
        &self.q
    }

    pub fn is_complex(&self) -> bool {
        self.is_complex
    }
}

/// Expectation value `Re tr(rho_tilde Q)`.
pub fn expectation<T: Real>(state: &GeneralizedDensity<T>, obs: &Observable<T>) -> Result<T> {
    if state.dim() != obs.q.rows() {
        return Err(Error::ShapeMismatch(
            state.dim(),
            state.dim(),
            obs.q.rows(),
            obs.q.cols(),
        ));
    }
    state.rho_tilde.matmul(&obs.q)?.re_trace()
}

/// Outcome of the projection quasi-Hermiticity experiment.
#[derive(Debug, Clone)]
pub struct Prop1Report<T> {
    /// Whether the sampled metric was purely complex.
    pub metric_is_complex: bool,
    /// Residual `||eta P[rho_tilde] eta^-1 - P[rho_tilde]^dagger||_F` per trial.
    pub residuals: Vec<T>,
    /// Number of residuals above the violation threshold.
    pub violations: usize,
    /// Threshold below which a trial counts as quasi-Hermitian.
    pub pass_tol: T,
    /// Threshold above which a trial counts as a genuine violation.
    pub violation_tol: T,
}

impl<T: Real> Prop1Report<T> {
    /// All residuals below the pass threshold (the forward direction of
    /// the projection statement; must hold for complex metrics).
    pub fn forward_ok(&self) -> bool {
        self.residuals.iter().all(|r| *r <= self.pass_tol)
    }

    pub fn max_residual(&self) -> T {
        self.residuals.iter().fold(T::zero(), |a, &b| a.max(b))
    }
}

/// Samples random generalized density matrices for `m` and tests whether
/// their complex projections are eta-quasi-Hermitian.
///
/// States are drawn as `rho = G^dagger G` with `G` an n-by-n quaternionic
/// Gaussian matrix, normalized so `Re tr(rho eta) = 1`; the generator is
/// seeded, so reports are reproducible.
pub fn proposition1_check<T: Real>(m: &Metric<T>, trials: usize, seed: u64) -> Prop1Report<T> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pass_tol = T::tol_structural();
    let violation_tol = T::tol_hard();
    let mut residuals = Vec::with_capacity(trials);
    let mut violations = 0usize;
    for _ in 0..trials {
        let state = crate::random::random_state(&mut rng, m).expect("random state construction");
        let proj = QMat::from_complex(state.projection());
        let resid = pseudo_hermiticity_residual(&proj, m).expect("shape");
        if resid > violation_tol {
            violations += 1;
        }
        residuals.push(resid);
    }
    Prop1Report {
        metric_is_complex: m.is_complex(),
        residuals,
        violations,
        pass_tol,
        violation_tol,
    }
}
