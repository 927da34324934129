//! End-to-end tests of the `qqdyn` binary: config handling, CSV output,
//! exit-code contract and the JSON-emitting subcommands.

use std::path::Path;
use std::process::{Command, Output};

use qqdyn_core::json::MatrixJson;
use qqdyn_core::metric::{GeneralizedDensity, Metric};

fn qqdyn(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qqdyn"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn spinhalf_config(dir: &Path, extra: &str, output: &str) -> String {
    write(
        dir,
        "config.json",
        &format!(
            r#"{{
  "system": {{"preset": "spinhalf", "omega": 1.0, "v": 0.25, "x": 2.0}},
  "time": {{"t_max": 6.283185307179586, "dt": 0.01}},
  {extra}
  "output": "{output}"
}}"#
        ),
    )
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn simulate_preset_matches_closed_form_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let config = spinhalf_config(dir.path(), "", &out.to_string_lossy());

    let run1 = qqdyn(&["simulate", "--config", &config], dir.path());
    assert!(run1.status.success(), "{}", String::from_utf8_lossy(&run1.stderr));
    let text1 = std::fs::read_to_string(&out).unwrap();

    let (header, rows) = parse_csv(&text1);
    assert_eq!(header[0], "t");
    assert_eq!(header[1], "sz");
    assert_eq!(header[2], "energy");
    assert_eq!(rows.len(), 629);
    for row in &rows {
        let (t, sz, energy) = (row[0], row[1], row[2]);
        let want = -(2.0 * 0.25 * t).cos() / 2.0;
        assert!((sz - want).abs() <= 1e-10, "t={t}: sz {sz} vs {want}");
        assert!((energy - 0.5).abs() <= 1e-10, "t={t}: energy {energy}");
    }

    // byte-identical across repeated runs
    let run2 = qqdyn(&["simulate", "--config", &config], dir.path());
    assert!(run2.status.success());
    let text2 = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text1, text2);
}

#[test]
fn simulate_zero_horizon_writes_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zero.csv");
    let config = write(
        dir.path(),
        "zero.json",
        &format!(
            r#"{{"system": {{"preset": "spinhalf"}},
                 "time": {{"t_max": 0.0, "dt": 0.5}},
                 "output": "{}"}}"#,
            out.to_string_lossy()
        ),
    );
    let run = qqdyn(&["simulate", "--config", &config], dir.path());
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let (_, rows) = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[0][1] + 0.5).abs() <= 1e-12); // initial <s_z> = -1/2
    assert!((rows[0][2] - 0.5).abs() <= 1e-12);
}

#[test]
fn dumped_states_pass_invariants_when_reparsed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dump.csv");
    let config = write(
        dir.path(),
        "dump.json",
        &format!(
            r#"{{"system": {{"preset": "spinhalf"}},
                 "time": {{"t_max": 3.0, "dt": 0.25}},
                 "output": "{}"}}"#,
            out.to_string_lossy()
        ),
    );
    let run = qqdyn(&["simulate", "--config", &config, "--dump-state"], dir.path());
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let (header, rows) = parse_csv(&text);
    // t, sz, energy, then 4 entries x 4 components
    assert_eq!(header.len(), 3 + 16);
    assert_eq!(header[3], "rho[0][0].alpha.re");

    let metric: Metric<f64> = Metric::from_real_diag(&[4.0, 1.0]).unwrap();
    for row in &rows {
        let mut alpha = vec![vec![[0.0; 2]; 2]; 2];
        let mut beta = vec![vec![[0.0; 2]; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let base = 3 + (r * 2 + c) * 4;
                alpha[r][c] = [row[base], row[base + 1]];
                beta[r][c] = [row[base + 2], row[base + 3]];
            }
        }
        let json = MatrixJson {
            rows: 2,
            cols: 2,
            alpha,
            beta: Some(beta),
        };
        let rho_tilde = json.to_qmat().unwrap();
        GeneralizedDensity::from_rho_tilde(&rho_tilde, &metric)
            .expect("reparsed state satisfies the invariants");
    }
}

#[test]
fn simulate_with_explicit_system_and_pure_state() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("explicit.csv");
    // the spin-half system written out explicitly, started from the pure
    // state (0, 1)^T
    let config = write(
        dir.path(),
        "explicit.json",
        &format!(
            r#"{{
  "system": {{
    "hamiltonian": {{"rows": 2, "cols": 2,
      "alpha": [[[0.0, 0.5], [0.0, 0.0]], [[0.0, 0.0], [0.0, -0.5]]],
      "beta":  [[[0.0, 0.0], [0.125, 0.0]], [[0.5, 0.0], [0.0, 0.0]]]}},
    "eta": {{"rows": 2, "cols": 2,
      "alpha": [[[4.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}}
  }},
  "initial_state": {{"pure": {{"rows": 2, "cols": 1,
      "alpha": [[[0.0, 0.0]], [[1.0, 0.0]]]}}}},
  "observables": [{{"name": "sz", "matrix": {{"rows": 2, "cols": 2,
      "alpha": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]}}}}],
  "time": {{"t_max": 6.0, "dt": 0.05}},
  "method": "rk4",
  "output": "{}"
}}"#,
            out.to_string_lossy()
        ),
    );
    let run = qqdyn(&["simulate", "--config", &config], dir.path());
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let (_, rows) = parse_csv(&std::fs::read_to_string(&out).unwrap());
    for row in &rows {
        let want = -(0.5 * row[0]).cos() / 2.0;
        // rk4 at dt = 0.05 stays easily within 1e-6 of the closed form
        assert!((row[1] - want).abs() <= 1e-6, "t={}", row[0]);
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    // 3: unreadable config
    let run = qqdyn(&["simulate", "--config", "missing.json"], dir.path());
    assert_eq!(run.status.code(), Some(3));

    // 1: malformed JSON
    let bad = write(dir.path(), "bad.json", "{not json");
    let run = qqdyn(&["simulate", "--config", &bad], dir.path());
    assert_eq!(run.status.code(), Some(1));

    // 1: invalid parameters (v = 0)
    let zero_v = write(
        dir.path(),
        "zerov.json",
        r#"{"system": {"preset": "spinhalf", "v": 0.0},
            "time": {"t_max": 1.0, "dt": 0.1}, "output": "x.csv"}"#,
    );
    let run = qqdyn(&["simulate", "--config", &zero_v], dir.path());
    assert_eq!(run.status.code(), Some(1));

    // 1: Hamiltonian that is not quasianti-Hermitian for the metric
    let not_quasi = write(
        dir.path(),
        "notquasi.json",
        r#"{"system": {
              "hamiltonian": {"rows": 1, "cols": 1, "alpha": [[[1.0, 0.0]]]},
              "eta": {"rows": 1, "cols": 1, "alpha": [[[1.0, 0.0]]]}},
            "initial_state": {"rows": 1, "cols": 1, "alpha": [[[1.0, 0.0]]]},
            "time": {"t_max": 1.0, "dt": 0.1}, "output": "x.csv"}"#,
    );
    let run = qqdyn(&["simulate", "--config", &not_quasi], dir.path());
    assert_eq!(run.status.code(), Some(1));

    // 1: rk4 on a preset but with dt <= 0
    let bad_dt = write(
        dir.path(),
        "baddt.json",
        r#"{"system": {"preset": "spinhalf"},
            "time": {"t_max": 1.0, "dt": -0.1}, "output": "x.csv"}"#,
    );
    let run = qqdyn(&["simulate", "--config", &bad_dt], dir.path());
    assert_eq!(run.status.code(), Some(1));

    // 1: check with an out-of-range dimension
    let run = qqdyn(&["check", "--suite", "invariants", "--n", "17"], dir.path());
    assert_eq!(run.status.code(), Some(1));

    // 2: check with an impossible tolerance override
    let run = qqdyn(
        &["check", "--suite", "invariants", "--n", "2", "--trials", "3", "--tol", "1e-300"],
        dir.path(),
    );
    assert_eq!(run.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("property"), "stderr: {stderr}");
}

#[test]
fn check_prop1_suite_reports_both_directions() {
    let dir = tempfile::tempdir().unwrap();
    let run = qqdyn(
        &["check", "--suite", "prop1", "--seed", "42", "--n", "3", "--trials", "100"],
        dir.path(),
    );
    assert!(run.status.success());
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("complex metric"));
    assert!(stdout.contains("quaternionic metric"));
    assert_eq!(stdout.matches("PASS").count(), 2);
}

#[test]
fn check_degenerate_dimension_passes() {
    let dir = tempfile::tempdir().unwrap();
    let run = qqdyn(
        &["check", "--suite", "invariants", "--n", "1", "--trials", "5"],
        dir.path(),
    );
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
}

#[test]
fn example_spinhalf_default_and_initial_values() {
    let dir = tempfile::tempdir().unwrap();
    let run = qqdyn(&["example", "spinhalf"], dir.path());
    assert!(run.status.success());
    let payload: serde_json::Value =
        serde_json::from_slice(&run.stdout).expect("valid JSON on stdout");
    assert!((payload["sz"].as_f64().unwrap()).abs() <= 1e-12);
    assert!((payload["energy"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!((payload["divisibility_delta"].as_f64().unwrap() - 0.5f64.sqrt()).abs() <= 1e-9);
    assert!(payload["rho_tilde"]["beta"].is_array());
    assert!(payload["projection"]["beta"].is_null());

    let run0 = qqdyn(&["example", "spinhalf", "--t", "0"], dir.path());
    assert!(run0.status.success());
    let payload0: serde_json::Value = serde_json::from_slice(&run0.stdout).unwrap();
    assert!((payload0["sz"].as_f64().unwrap() + 0.5).abs() <= 1e-12);
    assert!((payload0["energy"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!(payload0["divisibility_delta"].as_f64().unwrap().abs() <= 1e-12);

    // invalid parameters exit 1
    let bad = qqdyn(&["example", "spinhalf", "--v", "0"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn fit_lindblad_zero_potential_yields_zero_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    // purely complex quasianti-Hermitian H (no j-part): dissipator vanishes
    let config = write(
        dir.path(),
        "fit.json",
        r#"{"system": {
              "hamiltonian": {"rows": 2, "cols": 2,
                "alpha": [[[0.0, 0.5], [0.0, 0.0]], [[0.0, 0.0], [0.0, -0.5]]]},
              "eta": {"rows": 2, "cols": 2,
                "alpha": [[[4.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}}}"#,
    );
    let run = qqdyn(&["fit-lindblad", "--config", &config, "--seed", "7"], dir.path());
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let payload: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(payload["residual"].as_f64().unwrap(), 0.0);
    assert_eq!(payload["c"]["rows"].as_u64().unwrap(), 3);
    for row in payload["c"]["alpha"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            assert_eq!(entry[0].as_f64().unwrap(), 0.0);
            assert_eq!(entry[1].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn fit_lindblad_spin_half_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "fit_sh.json",
        r#"{"system": {"preset": "spinhalf"}, "samples": 64}"#,
    );
    let run1 = qqdyn(&["fit-lindblad", "--config", &config, "--seed", "11"], dir.path());
    let run2 = qqdyn(&["fit-lindblad", "--config", &config, "--seed", "11"], dir.path());
    assert!(run1.status.success());
    assert_eq!(run1.stdout, run2.stdout);
    let payload: serde_json::Value = serde_json::from_slice(&run1.stdout).unwrap();
    assert!(payload["residual"].as_f64().unwrap().is_finite());
    // transposed pairing variant also runs
    let config_t = write(
        dir.path(),
        "fit_t.json",
        r#"{"system": {"preset": "spinhalf"}, "samples": 64, "pairing": "transposed"}"#,
    );
    let run3 = qqdyn(&["fit-lindblad", "--config", &config_t, "--seed", "11"], dir.path());
    assert!(run3.status.success());
    assert_ne!(run1.stdout, run3.stdout);
}

#[test]
fn simulate_unstable_rk4_exits_with_invariant_breach() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("unstable.csv");
    // dt = 8 puts the slow spin-half mode far outside the rk4 stability
    // region; the state explodes and trips the positivity drift guard
    let config = write(
        dir.path(),
        "unstable.json",
        &format!(
            r#"{{"system": {{"preset": "spinhalf"}},
                 "time": {{"t_max": 160.0, "dt": 8.0}},
                 "method": "rk4",
                 "output": "{}"}}"#,
            out.to_string_lossy()
        ),
    );
    let run = qqdyn(&["simulate", "--config", &config], dir.path());
    assert_eq!(run.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("invariant"), "stderr: {stderr}");
}

#[test]
fn check_convergence_suite_measures_fourth_order() {
    let dir = tempfile::tempdir().unwrap();
    let run = qqdyn(&["check", "--suite", "convergence"], dir.path());
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert_eq!(stdout.matches("PASS").count(), 2);
    assert!(stdout.contains("rk4 convergence order"));
}
