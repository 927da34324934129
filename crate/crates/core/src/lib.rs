//! Quasianti-Hermitian quaternionic Hamiltonian dynamics.
//!
//! This crate implements quaternionic matrix algebra in complex-pair form,
//! metric (pseudo/quasi-Hermitian) structures, right-eigenvalue spectral
//! decompositions, generalized density matrices and their time evolution,
//! together with the exactly solvable spin-1/2 model used as the ground
//! truth for all of the dynamics machinery.
//!
//! The numeric core is generic over the real scalar type; `f64` aliases
//! for every public type are exported at the crate root.

pub mod checks;
pub mod cmat;
pub mod dynamics;
pub mod error;
pub mod json;
pub mod metric;
pub mod qmat;
pub mod quat;
pub mod random;
pub mod scalar;
pub mod spectral;
pub mod spinhalf;

pub use cmat::CMat;
pub use dynamics::{IntegrationMethod, Propagator, Trajectory};
pub use error::{Error, Result};
pub use metric::{GeneralizedDensity, Metric, Observable, QuasiHamiltonian};
pub use qmat::{Positivity, QMat};
pub use quat::Quaternion;
pub use scalar::Real;
pub use spectral::BiorthoSystem;
pub use spinhalf::SpinHalfParams;

/// `f64` quaternion.
pub type Quaternion64 = Quaternion<f64>;
/// `f32` quaternion.
pub type Quaternion32 = Quaternion<f32>;
/// `f64` complex matrix.
pub type CMat64 = CMat<f64>;
/// `f32` complex matrix.
pub type CMat32 = CMat<f32>;
/// `f64` quaternionic matrix.
pub type QMat64 = QMat<f64>;
/// `f32` quaternionic matrix.
pub type QMat32 = QMat<f32>;
/// `f64` metric.
pub type Metric64 = Metric<f64>;
/// `f32` metric.
pub type Metric32 = Metric<f32>;
/// `f64` quasianti-Hermitian Hamiltonian.
pub type QuasiHamiltonian64 = QuasiHamiltonian<f64>;
/// `f64` generalized density matrix.
pub type GeneralizedDensity64 = GeneralizedDensity<f64>;
/// `f64` observable.
pub type Observable64 = Observable<f64>;
/// `f64` biorthonormal eigensystem.
pub type BiorthoSystem64 = BiorthoSystem<f64>;
/// `f64` propagator.
pub type Propagator64 = Propagator<f64>;
/// `f64` trajectory.
pub type Trajectory64 = Trajectory<f64>;
/// `f64` spin-half parameters.
pub type SpinHalfParams64 = SpinHalfParams<f64>;
