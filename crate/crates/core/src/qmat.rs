//! Quaternionic matrices in complex-pair form.
//!
//! A quaternionic matrix is stored as `M = alpha + j*beta` with complex
//! `alpha`, `beta` of equal shape. Products, adjoints and the complex
//! projection are evaluated directly on the pair; all spectral work
//! (eigenvalues, singular values, exponentials) is delegated to the
//! symplectic embedding `chi(A + jB) = [[A, -B*], [B, A*]]`, which is an
//! algebra homomorphism and therefore an exact oracle. The one exception
//! is the Cholesky factorization, which runs natively in quaternion
//! arithmetic because the Cholesky factor of `chi(M)` generally does not
//! lie in the image of `chi`.

use num_complex::Complex;

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::scalar::Real;

/// Quaternionic matrix `alpha + j*beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat<T> {
    alpha: CMat<T>,
    beta: CMat<T>,
}

/// Outcome of a positivity test: the verdict and the smallest eigenvalue
/// of the embedded Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct Positivity<T> {
    pub is_positive: bool,
    pub min_eigenvalue: T,
}

impl<T: Real> QMat<T> {
    pub fn new(alpha: CMat<T>, beta: CMat<T>) -> Result<Self> {
        alpha.check_same_shape(&beta)?;
        Ok(Self { alpha, beta })
    }

    /// Purely complex matrix (zero `beta` part).
    pub fn from_complex(alpha: CMat<T>) -> Self {
        let beta = CMat::zeros(alpha.rows(), alpha.cols());
        Self { alpha, beta }
    }

    /// Purely quaternionic matrix `j*beta`.
    pub fn from_j_part(beta: CMat<T>) -> Self {
        let alpha = CMat::zeros(beta.rows(), beta.cols());
        Self { alpha, beta }
    }

    pub fn from_quaternions(entries: Vec<Vec<Quaternion<T>>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let mut alpha = CMat::zeros(rows, cols);
        let mut beta = CMat::zeros(rows, cols);
        for (r, row) in entries.iter().enumerate() {
            assert!(row.len() == cols, "ragged rows");
            for (c, q) in row.iter().enumerate() {
                let (a, b) = q.to_pair();
                alpha[(r, c)] = a;
                beta[(r, c)] = b;
            }
        }
        Self { alpha, beta }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            alpha: CMat::zeros(rows, cols),
            beta: CMat::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_complex(CMat::identity(n))
    }

    pub fn rows(&self) -> usize {
        self.alpha.rows()
    }

    pub fn cols(&self) -> usize {
        self.alpha.cols()
    }

    pub fn is_square(&self) -> bool {
        self.alpha.is_square()
    }

    pub fn alpha(&self) -> &CMat<T> {
        &self.alpha
    }

    pub fn beta(&self) -> &CMat<T> {
        &self.beta
    }

    pub fn entry(&self, r: usize, c: usize) -> Quaternion<T> {
        Quaternion::from_pair(self.alpha[(r, c)], self.beta[(r, c)])
    }

    pub fn set_entry(&mut self, r: usize, c: usize, q: Quaternion<T>) {
        let (a, b) = q.to_pair();
        self.alpha[(r, c)] = a;
        self.beta[(r, c)] = b;
    }

    /// True when the `beta` part is exactly zero.
    pub fn is_complex_entries(&self) -> bool {
        self.beta.norm_fro() == T::zero()
    }

    pub fn norm_fro(&self) -> T {
        let a = self.alpha.norm_fro();
        let b = self.beta.norm_fro();
        (a * a + b * b).sqrt()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            alpha: &self.alpha + &rhs.alpha,
            beta: &self.beta + &rhs.beta,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            alpha: &self.alpha - &rhs.alpha,
            beta: &self.beta - &rhs.beta,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            alpha: -&self.alpha,
            beta: -&self.beta,
        }
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self {
            alpha: self.alpha.scale_re(s),
            beta: self.beta.scale_re(s),
        }
    }

    /// Left multiplication by a complex scalar: `z * (A + jB) = zA + j(conj(z)B)`.
    pub fn scale_complex_left(&self, z: Complex<T>) -> Self {
        Self {
            alpha: self.alpha.scale(z),
            beta: self.beta.scale(z.conj()),
        }
    }

    /// Right multiplication by a complex scalar: `(A + jB) z = Az + j(Bz)`.
    pub fn scale_complex_right(&self, z: Complex<T>) -> Self {
        Self {
            alpha: self.alpha.scale(z),
            beta: self.beta.scale(z),
        }
    }

    /// Right multiplication by a quaternion scalar.
    pub fn scale_quat_right(&self, q: Quaternion<T>) -> Self {
        let (qa, qb) = q.to_pair();
        Self {
            alpha: &self.alpha.scale(qa) - &self.beta.conj().scale(qb),
            beta: &self.alpha.conj().scale(qb) + &self.beta.scale(qa),
        }
    }

    /// Quaternionic matrix product on the complex pair:
    /// `(A + jB)(C + jD) = (AC - B*D) + j(A*D + BC)`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::ShapeMismatch(
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols(),
            ));
        }
        let (a, b) = (&self.alpha, &self.beta);
        let (c, d) = (&rhs.alpha, &rhs.beta);
        Ok(Self {
            alpha: &a.matmul(c) - &b.conj().matmul(d),
            beta: &a.conj().matmul(d) + &b.matmul(c),
        })
    }

    /// Quaternionic adjoint `M^dagger = alpha^dagger - j*beta^T`.
    pub fn adjoint(&self) -> Self {
        Self {
            alpha: self.alpha.adjoint(),
            beta: -&self.beta.transpose(),
        }
    }

    /// `||M - M^dagger||_F`.
    pub fn hermiticity_residual(&self) -> T {
        self.sub(&self.adjoint()).norm_fro()
    }

    /// `||M + M^dagger||_F`.
    pub fn anti_hermiticity_residual(&self) -> T {
        self.add(&self.adjoint()).norm_fro()
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.hermiticity_residual() <= tol * self.norm_fro().max(T::one())
    }

    pub fn is_anti_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.anti_hermiticity_residual() <= tol * self.norm_fro().max(T::one())
    }

    /// Complex projection `P[M] = (M - iMi)/2 = alpha`.
    ///
    /// Both routes are evaluated — the stored `alpha` and the product form
    /// through the general multiplication — and must agree to a few
    /// roundings; this guards the pair conventions.
    pub fn complex_projection(&self) -> CMat<T> {
        if self.rows() == self.cols() && self.rows() > 0 {
            let i_scalar = Self::from_complex(
                CMat::identity(self.rows()).scale(Complex::new(T::zero(), T::one())),
            );
            let imi = i_scalar
                .matmul(self)
                .and_then(|m| m.matmul(&i_scalar))
                .expect("shapes verified");
            let product_route = self.sub(&imi).scale_re(T::of(0.5));
            let resid = (&product_route.alpha - &self.alpha).norm_fro()
                + product_route.beta.norm_fro();
            debug_assert!(
                resid <= T::tol_pair() * self.norm_fro().max(T::one()),
                "complex projection self-check failed"
            );
        }
        self.alpha.clone()
    }

    /// Real part of the trace; equals `Re tr(alpha)`.
    pub fn re_trace(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows(), self.cols()));
        }
        Ok(self.alpha.trace().re)
    }

    /// Commutator `MN - NM`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(self.matmul(rhs)?.sub(&rhs.matmul(self)?))
    }

    /// Symplectic embedding `chi(A + jB) = [[A, -B*], [B, A*]]`.
    pub fn embed(&self) -> CMat<T> {
        let (n, m) = (self.rows(), self.cols());
        let mut z = CMat::zeros(2 * n, 2 * m);
        z.set_block(0, 0, &self.alpha);
        z.set_block(0, m, &-&self.beta.conj());
        z.set_block(n, 0, &self.beta);
        z.set_block(n, m, &self.alpha.conj());
        z
    }

    /// Inverse of [`QMat::embed`]; fails when the block relation
    /// `[[X, -Y*], [Y, X*]]` is violated beyond `tol * ||Z||`.
    pub fn extract(z: &CMat<T>, tol: T) -> Result<Self> {
        if z.rows() % 2 != 0 || z.cols() % 2 != 0 {
            return Err(Error::StructureViolation {
                residual: f64::INFINITY,
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let n = z.rows() / 2;
        let m = z.cols() / 2;
        let x = z.block(0, 0, n, m);
        let y = z.block(n, 0, n, m);
        let tr = z.block(0, m, n, m);
        let br = z.block(n, m, n, m);
        let r1 = (&tr + &y.conj()).norm_fro();
        let r2 = (&br - &x.conj()).norm_fro();
        let residual = (r1 * r1 + r2 * r2).sqrt();
        let scale = z.norm_fro().max(T::one());
        if residual > tol * scale {
            return Err(Error::StructureViolation {
                residual: residual.to_f64().unwrap_or(f64::NAN),
                tol: (tol * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { alpha: x, beta: y })
    }

    /// Default-tolerance extraction.
    pub fn extract_default(z: &CMat<T>) -> Result<Self> {
        Self::extract(z, T::tol_structural())
    }

    /// Inverse through the embedding. Requires the smallest singular value
    /// of `chi(M)` to exceed `tol_singular * sigma_max`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows(), self.cols()));
        }
        if self.rows() == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let z = self.embed();
        let sv = z.singular_values()?;
        let sigma_min = sv[0];
        let sigma_max = sv[sv.len() - 1];
        if sigma_min <= T::tol_identity() * sigma_max {
            return Err(Error::Singular {
                sigma_min: sigma_min.to_f64().unwrap_or(f64::NAN),
                scale: sigma_max.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::extract_default(&z.inverse()?)
    }

    /// Solves `M X = Y` through the embedding.
    pub fn solve(&self, y: &Self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows(), self.cols()));
        }
        if self.rows() != y.rows() {
            return Err(Error::ShapeMismatch(self.rows(), self.cols(), y.rows(), y.cols()));
        }
        if self.rows() == 0 {
            return Ok(Self::zeros(0, y.cols()));
        }
        let z = self.embed();
        let sv = z.singular_values()?;
        let sigma_min = sv[0];
        let sigma_max = sv[sv.len() - 1];
        if sigma_min <= T::tol_identity() * sigma_max {
            return Err(Error::Singular {
                sigma_min: sigma_min.to_f64().unwrap_or(f64::NAN),
                scale: sigma_max.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::extract_default(&z.lu()?.solve(&y.embed())?)
    }

    /// Positivity of a Hermitian quaternionic matrix through the spectrum
    /// of its (Hermitian) embedding; each quaternionic eigenvalue appears
    /// doubled there. Positive iff the minimum eigenvalue is at least
    /// `-tol * ||M||_F`.
    pub fn positivity(&self, tol: T) -> Result<Positivity<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows(), self.cols()));
        }
        let scale = self.norm_fro().max(T::one());
        let resid = self.hermiticity_residual();
        if resid > tol * scale {
            return Err(Error::NotHermitian {
                residual: resid.to_f64().unwrap_or(f64::NAN),
                tol: (tol * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        if self.rows() == 0 {
            return Ok(Positivity {
                is_positive: true,
                min_eigenvalue: T::zero(),
            });
        }
        let herm = self.add(&self.adjoint()).scale_re(T::of(0.5));
        let evals = herm.embed().eigh_values()?;
        let min_eigenvalue = evals[0];
        Ok(Positivity {
            is_positive: min_eigenvalue >= -tol * scale,
            min_eigenvalue,
        })
    }

    /// Quaternionic Cholesky factorization of a Hermitian positive
    /// definite matrix: returns upper-triangular `B` with real positive
    /// diagonal such that `B^dagger B = M`.
    pub fn cholesky(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows(), self.cols()));
        }
        let n = self.rows();
        let scale = self.norm_fro().max(T::one());
        let resid = self.hermiticity_residual();
        if resid > T::tol_structural() * scale {
            return Err(Error::NotHermitian {
                residual: resid.to_f64().unwrap_or(f64::NAN),
                tol: (T::tol_structural() * scale).to_f64().unwrap_or(f64::NAN),
            });
        }
        let pivot_floor = T::tol_identity() * scale;
        let mut b = Self::zeros(n, n);
        for c in 0..n {
            for r in 0..c {
                // B[r][c] = (M[r][c] - sum_m conj(B[m][r]) B[m][c]) / B[r][r]
                let mut acc = self.entry(r, c);
                for m in 0..r {
                    acc = acc - b.entry(m, r).conj() * b.entry(m, c);
                }
                let d = b.entry(r, r).q0;
                b.set_entry(r, c, acc.scale(T::one() / d));
            }
            let mut pivot = self.entry(c, c).q0;
            for m in 0..c {
                pivot = pivot - b.entry(m, c).norm_sqr();
            }
            if pivot <= pivot_floor {
                return Err(Error::NotPositiveDefinite {
                    value: pivot.to_f64().unwrap_or(f64::NAN),
                });
            }
            b.set_entry(c, c, Quaternion::from_real(pivot.sqrt()));
        }
        Ok(b)
    }
}
