//! Finite-dimensional Hilbert-space toolkit for deciding, numerically and
//! with witnesses, whether pairs of quantum observables are complementary,
//! together with a single-photon optical simulator and the which-path /
//! visibility duality relation.
//!
//! Modules:
//! - [`hilbert`]: dense complex linear algebra and the projection lattice
//!   (meet, join, complement, commutation, expectation values).
//! - [`spectral`]: spectral measures of Hermitian observables and common
//!   eigenvector detection.
//! - [`complementarity`]: the verdict engine (conditions on zero meets and
//!   on probability-one transfer, commutation taxonomy, witnesses).
//! - [`optics`]: beam-splitter networks, the three-path interferometer and
//!   biprism builtin scenes.
//! - [`duality`]: predictability, fringe visibility, P² + V², and the
//!   biprism normalization report.
//! - [`scene`]: JSON scene files and builtin scene registry.

pub mod complementarity;
pub mod duality;
pub mod error;
pub mod hilbert;
pub mod optics;
pub mod scene;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use hilbert::{CMatrix, CVector, Projector, QuantumState};
pub use spectral::{Observable, ValueSet};
