//! Right-eigenvalue decompositions of quaternionic matrices.
//!
//! A right eigenpair satisfies `M psi = psi lambda` with the eigenvalue
//! multiplying from the right; eigenvalues form similarity classes
//! represented here by the member with nonnegative imaginary part. The
//! eigenproblem is solved on the symplectic embedding, whose spectrum
//! consists of conjugate pairs `{lambda, conj(lambda)}` — one pair per
//! quaternionic class — and whose eigenvector `(u; w)` for the
//! representative maps back to the quaternionic eigenvector `psi = u + jw`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmat::QMat;
use crate::quat::Quaternion;
use crate::scalar::Real;

/// Eigenvalues, right eigenvectors and biorthonormal left duals.
///
/// Duals come from the inverse of the right-eigenvector matrix, so
/// `<phi_m | psi_n> = delta_mn` holds up to conditioning rather than up to
/// a second eigensolve.
#[derive(Debug, Clone)]
pub struct BiorthoSystem<T> {
    eigenvalues: Vec<Complex<T>>,
    right_vectors: Vec<QMat<T>>,
    left_duals: Vec<QMat<T>>,
}

impl<T: Real> BiorthoSystem<T> {
    pub(crate) fn from_parts(
        eigenvalues: Vec<Complex<T>>,
        right_vectors: Vec<QMat<T>>,
        left_duals: Vec<QMat<T>>,
    ) -> Self {
        Self {
            eigenvalues,
            right_vectors,
            left_duals,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Class representatives with nonnegative imaginary part, ordered by
    /// descending imaginary part (ties by ascending real part).
    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    /// Right eigenvector `psi_m` as an n-by-1 quaternionic column.
    pub fn right_vector(&self, m: usize) -> &QMat<T> {
        &self.right_vectors[m]
    }

    /// Left dual `phi_m` as an n-by-1 quaternionic column.
    pub fn left_dual(&self, m: usize) -> &QMat<T> {
        &self.left_duals[m]
    }

    /// Quaternionic inner product `<phi_m | psi_n> = phi_m^dagger psi_n`
    /// (conjugate-linear in the left slot).
    pub fn pairing(&self, m: usize, n: usize) -> Quaternion<T> {
        self.left_duals[m]
            .adjoint()
            .matmul(&self.right_vectors[n])
            .expect("column shapes")
            .entry(0, 0)
    }

    /// Spectral projector `psi_m phi_m^dagger`; invariant under the
    /// per-class right-unit-quaternion phase freedom.
    pub fn projector(&self, m: usize) -> QMat<T> {
        self.right_vectors[m]
            .matmul(&self.left_duals[m].adjoint())
            .expect("column shapes")
    }

    /// `sum_m psi_m lambda_m phi_m^dagger`, which must reproduce the
    /// decomposed matrix.
    pub fn reconstruct(&self) -> QMat<T> {
        let n = self.right_vectors.first().map_or(0, QMat::rows);
        let mut acc = QMat::zeros(n, n);
        for m in 0..self.len() {
            let scaled = self.right_vectors[m].scale_complex_right(self.eigenvalues[m]);
            let term = scaled
                .matmul(&self.left_duals[m].adjoint())
                .expect("column shapes");
            acc = acc.add(&term);
        }
        acc
    }
}

/// Right-eigenvalue decomposition through the symplectic embedding.
///
/// Fails with [`Error::Defective`] when the conjugate pairing of the
/// embedded spectrum cannot be resolved or when the eigenvector matrix is
/// too ill-conditioned to invert reliably.
pub fn right_eigensystem<T: Real>(m: &QMat<T>) -> Result<BiorthoSystem<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BiorthoSystem::from_parts(Vec::new(), Vec::new(), Vec::new()));
    }

    let eig = m.embed().eigen()?;
    let values = &eig.values;
    let scale = values
        .iter()
        .map(|z| z.norm())
        .fold(T::one(), T::max);
    // 1e-8 at double precision; floored at a multiple of machine epsilon
    // so the same pairing logic holds at single precision
    let pair_tol = T::of(1e-8).max(T::epsilon() * T::of(100.0)) * scale;

    // Greedy nearest-conjugate pairing of the 2n embedded eigenvalues.
    let mut used = vec![false; 2 * n];
    let mut reps: Vec<usize> = Vec::with_capacity(n);
    for i in 0..2 * n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = values[i].conj();
        let mut best: Option<(usize, T)> = None;
        for j in 0..2 * n {
            if used[j] {
                continue;
            }
            let d = (values[j] - target).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, dist) = best.ok_or_else(|| {
            Error::Defective("odd number of unpaired eigenvalues".to_string())
        })?;
        if dist > pair_tol {
            return Err(Error::Defective(format!(
                "no conjugate partner for eigenvalue {} (closest at distance {:e})",
                values[i], dist
            )));
        }
        used[j] = true;
        // representative with nonnegative imaginary part
        reps.push(if values[i].im >= T::zero() { i } else { j });
    }

    // order: descending imaginary part, ties by ascending real part
    reps.sort_by(|&a, &b| {
        let (va, vb) = (values[a], values[b]);
        vb.im
            .partial_cmp(&va.im)
            .expect("NaN eigenvalue")
            .then(va.re.partial_cmp(&vb.re).expect("NaN eigenvalue"))
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut right_vectors = Vec::with_capacity(n);
    let mut psi = QMat::zeros(n, n);
    for (col, &idx) in reps.iter().enumerate() {
        eigenvalues.push(values[idx]);
        let mut column = QMat::zeros(n, 1);
        for r in 0..n {
            let u = eig.vectors[(r, idx)];
            let w = eig.vectors[(n + r, idx)];
            column.set_entry(r, 0, Quaternion::from_pair(u, w));
        }
        for r in 0..n {
            psi.set_entry(r, col, column.entry(r, 0));
        }
        right_vectors.push(column);
    }

    // conditioning gate before trusting the inverse for the duals
    let psi_embed = psi.embed();
    let cond = psi_embed
        .cond_one()
        .map_err(|_| Error::Defective("eigenvector matrix is singular".to_string()))?;
    if cond > T::cond_limit() {
        return Err(Error::Defective(format!(
            "eigenvector matrix condition number {:e} exceeds limit {:e}",
            cond.to_f64().unwrap_or(f64::NAN),
            T::cond_limit().to_f64().unwrap_or(f64::NAN)
        )));
    }
    let psi_inv = QMat::extract_default(&psi_embed.inverse()?)?;

    // rows of psi^-1 are the dual covectors phi_m^dagger
    let mut left_duals = Vec::with_capacity(n);
    for mth in 0..n {
        let mut dual = QMat::zeros(n, 1);
        for c in 0..n {
            dual.set_entry(c, 0, psi_inv.entry(mth, c).conj());
        }
        // renormalize so <phi_m | psi_m> = 1 exactly up to rounding
        let d = dual
            .adjoint()
            .matmul(&right_vectors[mth])
            .expect("column shapes")
            .entry(0, 0);
        let corr = d.conj().inverse().map_err(|_| {
            Error::Defective("vanishing biorthonormal pairing".to_string())
        })?;
        dual = dual.scale_quat_right(corr);
        left_duals.push(dual);
    }

    Ok(BiorthoSystem::from_parts(eigenvalues, right_vectors, left_duals))
}

/// Spectral synthesis `sum_m psi_m w_m phi_m^dagger` with real weights.
pub fn spectral_observable<T: Real>(sys: &BiorthoSystem<T>, weights: &[T]) -> Result<QMat<T>> {
    if weights.len() != sys.len() {
        return Err(Error::LengthMismatch {
            expected: sys.len(),
            got: weights.len(),
        });
    }
    let n = sys.right_vectors.first().map_or(0, QMat::rows);
    let mut acc = QMat::zeros(n, n);
    for (m, &w) in weights.iter().enumerate() {
        let term = sys.right_vectors[m]
            .scale_re(w)
            .matmul(&sys.left_duals[m].adjoint())?;
        acc = acc.add(&term);
    }
    Ok(acc)
}
