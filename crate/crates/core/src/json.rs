//! Matrix JSON schema shared between the library and the CLI.
//!
//! ```json
//! {"rows": 2, "cols": 2,
//!  "alpha": [[[re, im], [re, im]], [[re, im], [re, im]]],
//!  "beta":  [[[re, im], [re, im]], [[re, im], [re, im]]]}
//! ```
//!
//! `beta` may be omitted, meaning a purely complex matrix. The schema is
//! tied to `f64` — it is the interchange format, not the numeric core.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::qmat::QMat;

type Entries = Vec<Vec<[f64; 2]>>;

/// Serialized quaternionic (or complex, when `beta` is absent) matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub alpha: Entries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Entries>,
}

fn check_entries(name: &str, entries: &Entries, rows: usize, cols: usize) -> Result<()> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParams(format!(
            "matrix json: `{name}` does not match rows={rows}, cols={cols}"
        )));
    }
    Ok(())
}

fn entries_to_cmat(entries: &Entries, rows: usize, cols: usize) -> CMat<f64> {
    CMat::from_fn(rows, cols, |r, c| {
        Complex::new(entries[r][c][0], entries[r][c][1])
    })
}

fn cmat_to_entries(m: &CMat<f64>) -> Entries {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

impl MatrixJson {
    pub fn from_qmat(m: &QMat<f64>) -> Self {
        let beta = if m.is_complex_entries() {
            None
        } else {
            Some(cmat_to_entries(m.beta()))
        };
        Self {
            rows: m.rows(),
            cols: m.cols(),
            alpha: cmat_to_entries(m.alpha()),
            beta,
        }
    }

    pub fn from_cmat(m: &CMat<f64>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            alpha: cmat_to_entries(m),
            beta: None,
        }
    }

    pub fn to_qmat(&self) -> Result<QMat<f64>> {
        check_entries("alpha", &self.alpha, self.rows, self.cols)?;
        let alpha = entries_to_cmat(&self.alpha, self.rows, self.cols);
        let beta = match &self.beta {
            Some(entries) => {
                check_entries("beta", entries, self.rows, self.cols)?;
                entries_to_cmat(entries, self.rows, self.cols)
            }
            None => CMat::zeros(self.rows, self.cols),
        };
        QMat::new(alpha, beta)
    }

    /// Interprets the payload as a purely complex matrix; a nonzero `beta`
    /// is rejected.
    pub fn to_cmat(&self) -> Result<CMat<f64>> {
        let q = self.to_qmat()?;
        if !q.is_complex_entries() {
            return Err(Error::InvalidParams(
                "matrix json: expected a complex matrix but `beta` is nonzero".into(),
            ));
        }
        Ok(q.alpha().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::random::gaussian_qmat;

    #[test]
    fn round_trip_preserves_entries_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(90);
        let m: QMat<f64> = gaussian_qmat(&mut rng, 3, 2);
        let json = MatrixJson::from_qmat(&m);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: MatrixJson = serde_json::from_str(&text).unwrap();
        let back = parsed.to_qmat().unwrap();
        assert!(back.sub(&m).norm_fro() == 0.0);
    }

    #[test]
    fn beta_omitted_means_zero() {
        let text = r#"{"rows":1,"cols":2,"alpha":[[[1.0,0.0],[0.0,-2.5]]]}"#;
        let parsed: MatrixJson = serde_json::from_str(text).unwrap();
        let m = parsed.to_qmat().unwrap();
        assert!(m.is_complex_entries());
        assert_eq!(m.entry(0, 1).q1, -2.5);
        // and complex matrices serialize without a beta field
        let rendered = serde_json::to_string(&MatrixJson::from_qmat(&m)).unwrap();
        assert!(!rendered.contains("beta"));
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let text = r#"{"rows":2,"cols":2,"alpha":[[[1.0,0.0]]]}"#;
        let parsed: MatrixJson = serde_json::from_str(text).unwrap();
        assert!(parsed.to_qmat().is_err());
    }

    #[test]
    fn to_cmat_rejects_quaternionic_payloads() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let m: QMat<f64> = gaussian_qmat(&mut rng, 2, 2);
        let json = MatrixJson::from_qmat(&m);
        assert!(json.to_cmat().is_err());
        let c = MatrixJson::from_cmat(m.alpha());
        assert!(c.to_cmat().is_ok());
    }
}
