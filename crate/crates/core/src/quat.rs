//! Quaternion scalar arithmetic.
//!
//! A quaternion is written `q = q0 + q1*i + q2*j + q3*k` with real
//! components and the Hamilton rules `i^2 = j^2 = k^2 = -1`, `ij = -ji = k`.
//! The complex-pair form `q = alpha + j*beta` (with `j` on the left of the
//! complex coefficient) is the convention every matrix routine in this
//! crate builds on: `alpha = q0 + q1*i`, `beta = q2 - q3*i`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A real quaternion `q0 + q1*i + q2*j + q3*k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion<T> {
    pub q0: T,
    pub q1: T,
    pub q2: T,
    pub q3: T,
}

impl<T: Real> Quaternion<T> {
    pub fn new(q0: T, q1: T, q2: T, q3: T) -> Self {
        Self { q0, q1, q2, q3 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn from_real(x: T) -> Self {
        Self::new(x, T::zero(), T::zero(), T::zero())
    }

    /// Embeds a complex number into the `i`-subfield.
    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z.re, z.im, T::zero(), T::zero())
    }

    /// Conjugate `q0 - q1*i - q2*j - q3*k`.
    pub fn conj(self) -> Self {
        Self::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    /// Squared Euclidean norm; equals the real part of `q * conj(q)`.
    pub fn norm_sqr(self) -> T {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == T::zero() {
            return Err(Error::ZeroDivisor);
        }
        let c = self.conj();
        Ok(Self::new(c.q0 / n, c.q1 / n, c.q2 / n, c.q3 / n))
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }

    /// Complex-pair decomposition `q = alpha + j*beta`.
    ///
    /// `alpha = q0 + q1*i`, `beta = q2 - q3*i`; the sign of `Im(beta)` is
    /// fixed by `j * (q2 - q3*i) = q2*j + q3*k`. Round-trips exactly.
    pub fn to_pair(self) -> (Complex<T>, Complex<T>) {
        (
            Complex::new(self.q0, self.q1),
            Complex::new(self.q2, -self.q3),
        )
    }

    /// Inverse of [`Quaternion::to_pair`].
    pub fn from_pair(alpha: Complex<T>, beta: Complex<T>) -> Self {
        Self::new(alpha.re, alpha.im, beta.re, -beta.im)
    }

    pub fn is_zero(self) -> bool {
        self.q0 == T::zero() && self.q1 == T::zero() && self.q2 == T::zero() && self.q3 == T::zero()
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.q0 + rhs.q0,
            self.q1 + rhs.q1,
            self.q2 + rhs.q2,
            self.q3 + rhs.q3,
        )
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.q0 - rhs.q0,
            self.q1 - rhs.q1,
            self.q2 - rhs.q2,
            self.q3 - rhs.q3,
        )
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

/// Hamilton product; non-commutative.
impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion<f64>;

    fn rand_quat(rng: &mut ChaCha8Rng) -> Q {
        Q::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    }

    /// Independent product oracle: expand over the basis with a hardcoded
    /// structure-constant table instead of the component formulas.
    fn mul_oracle(a: Q, b: Q) -> Q {
        // basis[r][c] = e_r * e_c as (coefficient, index) over (1, i, j, k)
        const TABLE: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let av = [a.q0, a.q1, a.q2, a.q3];
        let bv = [b.q0, b.q1, b.q2, b.q3];
        let mut out = [0.0; 4];
        for r in 0..4 {
            for c in 0..4 {
                let (sign, idx) = TABLE[r][c];
                out[idx] += sign * av[r] * bv[c];
            }
        }
        Q::new(out[0], out[1], out[2], out[3])
    }

    fn assert_close(a: Q, b: Q, tol: f64) {
        let d = a - b;
        let scale = a.norm().max(b.norm()).max(1.0);
        assert!(
            d.norm() <= tol * scale,
            "quaternions differ: {a:?} vs {b:?} (residual {})",
            d.norm()
        );
    }

    #[test]
    fn hamilton_table() {
        let (one, i, j, k) = (Q::one(), Q::i(), Q::j(), Q::k());
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * j, -i);
        assert_eq!(k * i, j);
        assert_eq!(i * k, -j);
        assert_eq!(i * i, -one);
        assert_eq!(j * j, -one);
        assert_eq!(k * k, -one);
    }

    #[test]
    fn identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let q = rand_quat(&mut rng);
            assert_eq!(q * Q::one(), q);
            assert_eq!(Q::one() * q, q);
        }
    }

    #[test]
    fn product_matches_structure_constant_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let a = rand_quat(&mut rng);
            let b = rand_quat(&mut rng);
            assert_close(a * b, mul_oracle(a, b), 1e-15);
        }
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = rand_quat(&mut rng);
            let b = rand_quat(&mut rng);
            let c = rand_quat(&mut rng);
            assert_close((a * b) * c, a * (b * c), 1e-14);
        }
    }

    #[test]
    fn conjugation() {
        let q = Q::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.conj(), Q::new(1.0, -2.0, -3.0, -4.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let a = rand_quat(&mut rng);
            let b = rand_quat(&mut rng);
            assert_eq!(a.conj().conj(), a);
            // anti-automorphism, both sides via the oracle expansion
            assert_close((a * b).conj(), mul_oracle(b.conj(), a.conj()), 1e-15);
            // |q|^2 = Re(q * conj(q))
            let p = a * a.conj();
            assert!((p.q0 - a.norm_sqr()).abs() <= 1e-14 * a.norm_sqr().max(1.0));
            assert!(p.q1.abs() + p.q2.abs() + p.q3.abs() <= 1e-14);
        }
    }

    #[test]
    fn pair_round_trip_is_exact() {
        assert_eq!(Q::j().to_pair(), (Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)));
        // k = j * (-i)
        assert_eq!(Q::k().to_pair(), (Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let q = rand_quat(&mut rng);
            let (alpha, beta) = q.to_pair();
            let back = Q::from_pair(alpha, beta);
            // bit-identical components
            assert_eq!(q.q0.to_bits(), back.q0.to_bits());
            assert_eq!(q.q1.to_bits(), back.q1.to_bits());
            assert_eq!(q.q2.to_bits(), back.q2.to_bits());
            assert_eq!(q.q3.to_bits(), back.q3.to_bits());
        }
    }

    #[test]
    fn pair_convention_j_on_left() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let z = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let zq = Q::from_complex(z);
            // z * j = j * conj(z)
            assert_close(zq * Q::j(), Q::j() * Q::from_complex(z.conj()), 1e-15);
            // q = alpha + j*beta reassembles through the product
            let q = rand_quat(&mut rng);
            let (alpha, beta) = q.to_pair();
            let rebuilt = Q::from_complex(alpha) + Q::j() * Q::from_complex(beta);
            assert_close(q, rebuilt, 1e-15);
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(Q::i().inverse().unwrap(), -Q::i());
        assert_eq!(Q::from_real(2.0).inverse().unwrap(), Q::from_real(0.5));
        assert!(matches!(Q::zero().inverse(), Err(Error::ZeroDivisor)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let mut q = rand_quat(&mut rng);
            if q.norm() < 1e-3 {
                q = q + Q::one();
            }
            assert_close(q * q.inverse().unwrap(), Q::one(), 1e-14);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn quat_strategy() -> impl Strategy<Value = Q> {
            let c = -10.0..10.0f64;
            (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| Q::new(a, b, c, d))
        }

        proptest! {
            #[test]
            fn norm_is_multiplicative(a in quat_strategy(), b in quat_strategy()) {
                let lhs = (a * b).norm();
                let rhs = a.norm() * b.norm();
                prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
            }

            #[test]
            fn pair_round_trip(q in quat_strategy()) {
                let (alpha, beta) = q.to_pair();
                prop_assert_eq!(Q::from_pair(alpha, beta), q);
            }

            #[test]
            fn conj_reverses_products(a in quat_strategy(), b in quat_strategy()) {
                let lhs = (a * b).conj();
                let rhs = b.conj() * a.conj();
                let scale = (a.norm() * b.norm()).max(1.0);
                prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
            }
        }
    }
}
