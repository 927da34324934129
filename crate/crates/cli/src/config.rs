//! Simulation configuration: JSON in, core objects out.

use serde::Deserialize;

use qqdyn_core::json::MatrixJson;
use qqdyn_core::metric::{GeneralizedDensity, Metric, Observable, QuasiHamiltonian};
use qqdyn_core::spinhalf::SpinHalfParams;
use qqdyn_core::IntegrationMethod;

use crate::CliError;

fn default_omega() -> f64 {
    1.0
}
fn default_v() -> f64 {
    0.25
}
fn default_x() -> f64 {
    2.0
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SystemConfig {
    Preset {
        preset: String,
        #[serde(default = "default_omega")]
        omega: f64,
        #[serde(default = "default_v")]
        v: f64,
        #[serde(default = "default_x")]
        x: f64,
    },
    Explicit {
        hamiltonian: MatrixJson,
        eta: MatrixJson,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum InitialStateConfig {
    /// `{"pure": <n x 1 matrix json>}`: normalized to unit eta-norm, then
    /// `rho_tilde = |psi><psi| eta`.
    Pure { pure: MatrixJson },
    /// Matrix json for `rho_tilde(0)` directly.
    RhoTilde(MatrixJson),
}

#[derive(Debug, Deserialize)]
pub struct TimeConfig {
    pub t_max: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MethodConfig {
    #[default]
    Expm,
    Rk4,
}

impl From<MethodConfig> for IntegrationMethod {
    fn from(m: MethodConfig) -> Self {
        match m {
            MethodConfig::Expm => IntegrationMethod::Expm,
            MethodConfig::Rk4 => IntegrationMethod::Rk4,
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct ObservableConfig {
    pub name: String,
    #[serde(default)]
    pub matrix: Option<MatrixJson>,
    /// `"sz"` or `"energy"`; valid with the spinhalf preset only.
    #[serde(default)]
    pub builtin: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct SimConfig {
    pub system: SystemConfig,
    #[serde(default)]
    pub initial_state: Option<InitialStateConfig>,
    pub time: TimeConfig,
    #[serde(default)]
    pub method: MethodConfig,
    #[serde(default)]
    pub observables: Vec<ObservableConfig>,
    pub output: String,
}

/// Fully constructed simulation inputs.
pub struct SimSetup {
    pub hq: QuasiHamiltonian<f64>,
    pub state0: GeneralizedDensity<f64>,
    pub times: Vec<f64>,
    pub method: IntegrationMethod,
    pub observables: Vec<(String, Observable<f64>)>,
    pub output: String,
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Config(msg.to_string())
}

pub fn build_system(
    system: &SystemConfig,
) -> Result<(QuasiHamiltonian<f64>, Metric<f64>, Option<SpinHalfParams<f64>>), CliError> {
    match system {
        SystemConfig::Preset { preset, omega, v, x } => {
            if preset != "spinhalf" {
                return Err(invalid(format!("unknown preset `{preset}`")));
            }
            let params = SpinHalfParams::new(*omega, *v, *x).map_err(invalid)?;
            let (hq, metric) = params.system().map_err(invalid)?;
            Ok((hq, metric, Some(params)))
        }
        SystemConfig::Explicit { hamiltonian, eta } => {
            let h = hamiltonian.to_qmat().map_err(invalid)?;
            let eta = eta.to_qmat().map_err(invalid)?;
            if !h.is_square() || !eta.is_square() || h.rows() != eta.rows() {
                return Err(invalid("hamiltonian and eta must be square with equal dimension"));
            }
            let metric = Metric::new(eta).map_err(invalid)?;
            let hq = QuasiHamiltonian::from_hamiltonian(h, metric.clone()).map_err(invalid)?;
            Ok((hq, metric, None))
        }
    }
}

fn build_initial_state(
    config: &Option<InitialStateConfig>,
    metric: &Metric<f64>,
    preset: Option<&SpinHalfParams<f64>>,
) -> Result<GeneralizedDensity<f64>, CliError> {
    match config {
        None => match preset {
            Some(p) => p.state(0.0).map_err(invalid),
            None => Err(invalid("initial_state is required for explicit systems")),
        },
        Some(InitialStateConfig::Pure { pure }) => {
            let psi = pure.to_qmat().map_err(invalid)?;
            if psi.cols() != 1 || psi.rows() != metric.dim() {
                return Err(invalid("pure state must be an n x 1 column matching the system"));
            }
            // rho_tilde = |psi><psi| eta, normalized to <psi|eta|psi> = 1
            // by the unit-real-trace normalization of the constructor
            let rho_tilde = psi
                .matmul(&psi.adjoint())
                .and_then(|p| p.matmul(metric.eta()))
                .map_err(invalid)?;
            GeneralizedDensity::from_rho_tilde(&rho_tilde, metric).map_err(invalid)
        }
        Some(InitialStateConfig::RhoTilde(json)) => {
            let rho_tilde = json.to_qmat().map_err(invalid)?;
            if rho_tilde.rows() != metric.dim() || !rho_tilde.is_square() {
                return Err(invalid("initial_state dimension does not match the system"));
            }
            GeneralizedDensity::from_rho_tilde(&rho_tilde, metric).map_err(invalid)
        }
    }
}

fn build_observables(
    configs: &[ObservableConfig],
    metric: &Metric<f64>,
    preset: Option<&SpinHalfParams<f64>>,
) -> Result<Vec<(String, Observable<f64>)>, CliError> {
    if configs.is_empty() {
        if let Some(p) = preset {
            let (sz, energy) = p.observables().map_err(invalid)?;
            return Ok(vec![("sz".to_string(), sz), ("energy".to_string(), energy)]);
        }
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(configs.len());
    for cfg in configs {
        let obs = match (&cfg.matrix, cfg.builtin.as_deref()) {
            (Some(json), None) => {
                let q = json.to_qmat().map_err(invalid)?;
                if q.rows() != metric.dim() || !q.is_square() {
                    return Err(invalid(format!(
                        "observable `{}` dimension does not match the system",
                        cfg.name
                    )));
                }
                Observable::new(q, metric)
                    .map_err(|e| invalid(format!("observable `{}`: {e}", cfg.name)))?
            }
            (None, Some(builtin)) => {
                let p = preset.ok_or_else(|| {
                    invalid("builtin observables are only available with the spinhalf preset")
                })?;
                let (sz, energy) = p.observables().map_err(invalid)?;
                match builtin {
                    "sz" => sz,
                    "energy" => energy,
                    other => return Err(invalid(format!("unknown builtin observable `{other}`"))),
                }
            }
            _ => {
                return Err(invalid(format!(
                    "observable `{}` must have exactly one of `matrix` or `builtin`",
                    cfg.name
                )))
            }
        };
        out.push((cfg.name.clone(), obs));
    }
    Ok(out)
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(invalid)
    }

    pub fn build(&self) -> Result<SimSetup, CliError> {
        if !(self.time.dt > 0.0) {
            return Err(invalid("time.dt must be positive"));
        }
        if !(self.time.t_max >= 0.0) {
            return Err(invalid("time.t_max must be nonnegative"));
        }
        let (hq, metric, preset) = build_system(&self.system)?;
        let state0 = build_initial_state(&self.initial_state, &metric, preset.as_ref())?;
        let observables = build_observables(&self.observables, &metric, preset.as_ref())?;
        let steps = (self.time.t_max / self.time.dt + 1e-9).floor() as usize;
        let times: Vec<f64> = (0..=steps).map(|k| k as f64 * self.time.dt).collect();
        Ok(SimSetup {
            hq,
            state0,
            times,
            method: self.method.into(),
            observables,
            output: self.output.clone(),
        })
    }
}

/// Configuration for `fit-lindblad`.
#[derive(Debug, Deserialize)]
pub struct FitConfig {
    pub system: SystemConfig,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub pairing: Option<PairingConfig>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingConfig {
    AsWritten,
    Transposed,
}

impl FitConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(invalid)
    }
}
