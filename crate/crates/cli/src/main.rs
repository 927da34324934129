//! `qqdyn`: simulate quasianti-Hermitian quaternionic Hamiltonian
//! dynamics, run the property-check suites, evaluate the built-in
//! spin-half example and fit the projected dissipator.
//!
//! Exit codes: 0 success, 1 invalid configuration or parameters,
//! 2 invariant breach or failed check, 3 I/O failure.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qqdyn_core::checks::{all_suites, convergence_suite, invariants_suite, prop1_suite, CheckConfig};
use qqdyn_core::dynamics::{divisibility_report, integrate, lindblad_fit, LindbladPairing};
use qqdyn_core::json::MatrixJson;
use qqdyn_core::metric::expectation;
use qqdyn_core::spinhalf::SpinHalfParams;
use qqdyn_core::Trajectory;

use config::{FitConfig, PairingConfig, SimConfig};

/// Error with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or parameters (exit 1).
    Config(String),
    /// Invariant breach or failed assertion while running (exit 2).
    Run(String),
    /// Filesystem failure (exit 3).
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Run(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Run(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qqdyn",
    version,
    about = "Quasianti-Hermitian quaternionic Hamiltonian dynamics simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation from a JSON config and write a CSV trajectory.
    Simulate {
        /// Path to the simulation config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Append the full state entries to every CSV row.
        #[arg(long)]
        dump_state: bool,
    },
    /// Run seeded property-check suites and report per-property residuals.
    Check {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// System dimension for randomized checks (at most 16).
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Override the pass thresholds of residual-type properties.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate a built-in example and print the results as JSON.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
    /// Fit the projected dissipator to a Lindblad-Kossakowski form.
    FitLindblad {
        /// Path to the fit config (JSON).
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// Spin-half system in a constant quaternionic potential.
    Spinhalf {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 0.25)]
        v: f64,
        #[arg(long, default_value_t = 2.0)]
        x: f64,
        /// Evaluation time.
        #[arg(long, default_value_t = std::f64::consts::PI)]
        t: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Invariants,
    Prop1,
    Convergence,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, dump_state } => cmd_simulate(&config, dump_state),
        Command::Check {
            suite,
            seed,
            n,
            trials,
            tol,
        } => cmd_check(suite, seed, n, trials, tol),
        Command::Example { which } => match which {
            ExampleCommand::Spinhalf { omega, v, x, t } => cmd_example_spinhalf(omega, v, x, t),
        },
        Command::FitLindblad { config, seed } => cmd_fit_lindblad(&config, seed),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// 17 significant digits; enough for exact f64 round-trips.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_csv(traj: &Trajectory<f64>, dump_state: bool) -> String {
    let mut header = String::from("t");
    for (name, _) in traj.observables() {
        write!(header, ",{name}").expect("string write");
    }
    if dump_state {
        let n = traj.states()[0].dim();
        for r in 0..n {
            for c in 0..n {
                write!(
                    header,
                    ",rho[{r}][{c}].alpha.re,rho[{r}][{c}].alpha.im,rho[{r}][{c}].beta.re,rho[{r}][{c}].beta.im"
                )
                .expect("string write");
            }
        }
    }
    let mut out = header;
    out.push('\n');
    for (k, t) in traj.times().iter().enumerate() {
        let mut row = fmt_f64(*t);
        for (_, values) in traj.observables() {
            write!(row, ",{}", fmt_f64(values[k])).expect("string write");
        }
        if dump_state {
            let rho = traj.states()[k].rho_tilde();
            let n = rho.rows();
            for r in 0..n {
                for c in 0..n {
                    let alpha = rho.alpha()[(r, c)];
                    let beta = rho.beta()[(r, c)];
                    write!(
                        row,
                        ",{},{},{},{}",
                        fmt_f64(alpha.re),
                        fmt_f64(alpha.im),
                        fmt_f64(beta.re),
                        fmt_f64(beta.im)
                    )
                    .expect("string write");
                }
            }
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn cmd_simulate(config_path: &PathBuf, dump_state: bool) -> Result<(), CliError> {
    let text = read_file(config_path)?;
    let setup = SimConfig::parse(&text)?.build()?;
    let traj = integrate(
        &setup.hq,
        &setup.state0,
        &setup.times,
        setup.method,
        &setup.observables,
    )
    .map_err(|e| CliError::Run(format!("integration failed: {e}")))?;
    let csv = render_csv(&traj, dump_state);
    std::fs::write(&setup.output, csv)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", setup.output)))?;
    println!("wrote {} ({} rows)", setup.output, traj.len());
    Ok(())
}

fn cmd_check(
    suite: SuiteArg,
    seed: u64,
    n: usize,
    trials: usize,
    tol: Option<f64>,
) -> Result<(), CliError> {
    if n == 0 || n > 16 {
        return Err(CliError::Config(format!(
            "check dimension n={n} outside the supported range 1..=16"
        )));
    }
    if trials == 0 {
        return Err(CliError::Config("trials must be positive".into()));
    }
    let cfg = CheckConfig { seed, n, trials, tol };
    let report = match suite {
        SuiteArg::Invariants => invariants_suite(&cfg),
        SuiteArg::Prop1 => prop1_suite(&cfg),
        SuiteArg::Convergence => convergence_suite(),
        SuiteArg::All => all_suites(&cfg),
    }
    .map_err(|e| CliError::Run(format!("check suite failed to run: {e}")))?;

    for p in &report.properties {
        println!(
            "{} | {} = {:.3e} (required {}) ",
            if p.passed { "PASS" } else { "FAIL" },
            p.name,
            p.value,
            p.bound
        );
    }
    if let Some(failure) = report.first_failure() {
        return Err(CliError::Run(format!(
            "property `{}` failed: value {:.3e}, required {}",
            failure.name, failure.value, failure.bound
        )));
    }
    Ok(())
}

fn cmd_example_spinhalf(omega: f64, v: f64, x: f64, t: f64) -> Result<(), CliError> {
    let params =
        SpinHalfParams::new(omega, v, x).map_err(|e| CliError::Config(e.to_string()))?;
    let (hq, _) = params.system().map_err(|e| CliError::Config(e.to_string()))?;
    let run = |e: qqdyn_core::Error| CliError::Run(e.to_string());
    let state = params.state(t).map_err(run)?;
    let (sz, energy) = params.observables().map_err(run)?;
    let sz_value = expectation(&state, &sz).map_err(run)?;
    let energy_value = expectation(&state, &energy).map_err(run)?;
    let state0 = params.state(0.0).map_err(run)?;
    let defect = divisibility_report(&hq, &state0, t, t).map_err(run)?;
    let payload = json!({
        "omega": omega,
        "v": v,
        "x": x,
        "t": t,
        "rho_tilde": MatrixJson::from_qmat(state.rho_tilde()),
        "projection": MatrixJson::from_cmat(&state.projection()),
        "sz": sz_value,
        "energy": energy_value,
        "divisibility_delta": defect.delta,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&payload).expect("json rendering")
    );
    Ok(())
}

fn cmd_fit_lindblad(config_path: &PathBuf, seed: u64) -> Result<(), CliError> {
    let text = read_file(config_path)?;
    let fit_config = FitConfig::parse(&text)?;
    let (hq, metric, _) = config::build_system(&fit_config.system)?;
    let n = metric.dim();
    let samples = fit_config.samples.unwrap_or(4 * n.pow(4));
    let pairing = match fit_config.pairing {
        Some(PairingConfig::Transposed) => LindbladPairing::Transposed,
        _ => LindbladPairing::AsWritten,
    };
    let fit = lindblad_fit(&hq, None, samples, seed, pairing)
        .map_err(|e| CliError::Run(format!("lindblad fit failed: {e}")))?;
    let payload = json!({
        "samples": samples,
        "seed": seed,
        "c": MatrixJson::from_cmat(&fit.coefficients),
        "residual": fit.residual,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&payload).expect("json rendering")
    );
    Ok(())
}
