//! Dense complex linear algebra for small dimensions and the lattice of
//! orthogonal projections: construction, complement, meet, join, commutation,
//! expectation values.
//!
//! Projectors are validated at construction (Hermitian, idempotent, spectrum
//! on {0, 1}); every operation may assume its inputs are valid.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Dense complex matrix; the generic operator currency of the crate.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector.
pub type CVector = DVector<Complex64>;

/// Largest absolute entry of a matrix.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// All entries finite (no NaN/Inf in either component).
pub fn entries_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// ‖M − M†‖_max.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_norm(&(m - m.adjoint()))
}

/// Check a matrix is Hermitian within the configured tolerance.
pub fn check_hermitian(m: &CMatrix) -> Result<()> {
    let deviation = hermiticity_defect(m);
    if deviation > Tolerances::get().herm {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// Orthogonal projection operator: Hermitian, idempotent, spectrum in {0, 1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
    rank: usize,
}

impl Projector {
    /// Validate a candidate matrix and wrap it.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !entries_finite(&matrix) {
            return Err(Error::NonFiniteEntries);
        }
        let tol = Tolerances::get();
        let herm = hermiticity_defect(&matrix);
        if herm > tol.herm {
            return Err(Error::NotProjector {
                reason: format!("not Hermitian (deviation {herm:.3e})"),
            });
        }
        let idem = max_norm(&(&matrix * &matrix - &matrix));
        if idem > tol.idem {
            return Err(Error::NotProjector {
                reason: format!("not idempotent (deviation {idem:.3e})"),
            });
        }
        let eig = SymmetricEigen::new(matrix.clone());
        let mut rank = 0;
        for &lambda in eig.eigenvalues.iter() {
            if (lambda - 1.0).abs() <= tol.eig {
                rank += 1;
            } else if lambda.abs() > tol.eig {
                return Err(Error::NotProjector {
                    reason: format!("eigenvalue {lambda} not in {{0, 1}}"),
                });
            }
        }
        Ok(Projector { matrix, rank })
    }

    /// The zero projector (onto {0}).
    pub fn zero(dim: usize) -> Self {
        Projector { matrix: CMatrix::zeros(dim, dim), rank: 0 }
    }

    /// The identity projector (onto the whole space).
    pub fn identity(dim: usize) -> Self {
        Projector { matrix: CMatrix::identity(dim, dim), rank: dim }
    }

    /// Orthogonal projector onto the span of the given vectors.
    ///
    /// Rank-revealing: linearly dependent inputs collapse, an all-zero
    /// input yields the zero projector.
    pub fn from_span(vectors: &[CVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptySpan)?;
        let dim = first.len();
        for v in vectors {
            check_same_dim(dim, v.len())?;
        }
        let basis = orthonormalize(vectors, dim);
        let mut matrix = CMatrix::zeros(dim, dim);
        for col in basis.column_iter() {
            matrix += CMatrix::from(&col * col.adjoint());
        }
        Ok(Projector { matrix, rank: basis.ncols() })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.dim()
    }

    /// Neither zero nor identity.
    pub fn is_proper(&self) -> bool {
        !self.is_zero() && !self.is_identity()
    }

    /// Orthonormal basis of the range, as columns of an n×rank matrix.
    pub fn range_basis(&self) -> CMatrix {
        if self.rank == 0 {
            return CMatrix::zeros(self.dim(), 0);
        }
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut cols = Vec::with_capacity(self.rank);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda > 0.5 {
                cols.push(eig.eigenvectors.column(i).clone_owned());
            }
        }
        CMatrix::from_columns(&cols)
    }

    /// I − P.
    pub fn orthocomplement(&self) -> Projector {
        let dim = self.dim();
        Projector {
            matrix: CMatrix::identity(dim, dim) - &self.matrix,
            rank: dim - self.rank,
        }
    }

    /// Greatest lower bound: the projector onto range(P) ∩ range(Q).
    ///
    /// Computed from the principal angles between the ranges: with U, V
    /// orthonormal range bases, the intersection is spanned by U·u for every
    /// left singular vector u of U†V whose singular value is within the angle
    /// tolerance of 1.
    pub fn meet(&self, other: &Projector) -> Result<Projector> {
        check_same_dim(self.dim(), other.dim())?;
        let dim = self.dim();
        if self.rank == 0 || other.rank == 0 {
            return Ok(Projector::zero(dim));
        }
        if self.is_identity() {
            return Ok(other.clone());
        }
        if other.is_identity() {
            return Ok(self.clone());
        }
        let u = self.range_basis();
        let v = other.range_basis();
        let threshold = 1.0 - Tolerances::get().angle;
        let mut cols = Vec::new();
        for (sigma, left) in left_singular_pairs(&(u.adjoint() * &v)) {
            if sigma >= threshold {
                cols.push(&u * left);
            }
        }
        if cols.is_empty() {
            return Ok(Projector::zero(dim));
        }
        let mut matrix = CMatrix::zeros(dim, dim);
        for c in &cols {
            matrix += CMatrix::from(c * c.adjoint());
        }
        Ok(Projector { matrix, rank: cols.len() })
    }

    /// Least upper bound: the projector onto range(P) + range(Q),
    /// via De Morgan duality with the meet.
    pub fn join(&self, other: &Projector) -> Result<Projector> {
        let m = self.orthocomplement().meet(&other.orthocomplement())?;
        Ok(m.orthocomplement())
    }

    /// Largest squared overlap sup_{ψ ∈ range(P), ‖ψ‖=1} ⟨ψ|Q|ψ⟩ together
    /// with a maximizing unit vector. The value is cos² of the smallest
    /// principal angle between the ranges.
    pub fn max_overlap(&self, other: &Projector) -> Result<(f64, CVector)> {
        check_same_dim(self.dim(), other.dim())?;
        let dim = self.dim();
        if self.rank == 0 || other.rank == 0 {
            let mut e = CVector::zeros(dim);
            if self.rank > 0 {
                e = self.range_basis().column(0).clone_owned();
            } else if dim > 0 {
                e[0] = Complex64::new(1.0, 0.0);
            }
            return Ok((0.0, e));
        }
        let u = self.range_basis();
        let v = other.range_basis();
        let pairs = left_singular_pairs(&(u.adjoint() * &v));
        let (sigma, left) = &pairs[0];
        let psi = &u * left;
        Ok((sigma * sigma, psi))
    }
}

/// Singular values and left singular vectors of m, largest first, from the
/// Hermitian eigendecomposition of m·m†. nalgebra's general complex SVD is
/// not accurate enough for the degenerate σ ≈ 1 clusters that arise when
/// subspaces genuinely intersect; the symmetric eigensolver is.
fn left_singular_pairs(m: &CMatrix) -> Vec<(f64, CVector)> {
    let gram = m * m.adjoint();
    let eig = SymmetricEigen::new(gram);
    let mut pairs: Vec<(f64, CVector)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &lambda)| (lambda.max(0.0).sqrt(), eig.eigenvectors.column(i).clone_owned()))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

/// Rank-revealing orthonormalization of a set of vectors.
/// Returns an n×r matrix with orthonormal columns spanning the same space.
fn orthonormalize(vectors: &[CVector], dim: usize) -> CMatrix {
    let stacked = CMatrix::from_columns(vectors);
    let pairs = left_singular_pairs(&stacked);
    let sigma_max = pairs.first().map_or(0.0, |p| p.0);
    // Cut in σ² space: the Gram eigenvalues of null directions sit at the
    // machine-noise floor, so their square roots land near √eps and would
    // sneak past a threshold stated on σ itself.
    let threshold = Tolerances::get().rank_rel * sigma_max * sigma_max;
    let mut cols = Vec::new();
    for (sigma, left) in pairs {
        if sigma_max > 0.0 && sigma * sigma > threshold {
            cols.push(left);
        }
    }
    if cols.is_empty() {
        CMatrix::zeros(dim, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

/// True iff ‖PQ − QP‖_max is within the commutator tolerance.
pub fn commutes(p: &CMatrix, q: &CMatrix) -> Result<bool> {
    check_same_dim(p.nrows(), q.nrows())?;
    Ok(commutator_norm(p, q) <= Tolerances::get().comm)
}

/// ‖PQ − QP‖_max.
pub fn commutator_norm(p: &CMatrix, q: &CMatrix) -> f64 {
    max_norm(&(p * q - q * p))
}

/// Quantum state: pure unit vector or density operator of trace one.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(CVector),
    Mixed(CMatrix),
}

impl QuantumState {
    /// A pure state; the vector must be normalized.
    pub fn pure(psi: CVector) -> Result<Self> {
        let tol = Tolerances::get();
        if !psi.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidState { reason: "non-finite amplitudes".into() });
        }
        let norm = psi.norm();
        if (norm - 1.0).abs() > tol.norm {
            return Err(Error::InvalidState {
                reason: format!("pure state norm {norm} is not 1"),
            });
        }
        Ok(QuantumState::Pure(psi))
    }

    /// A mixed state; the density matrix must be Hermitian, PSD, trace one.
    pub fn mixed(rho: CMatrix) -> Result<Self> {
        let tol = Tolerances::get();
        if !entries_finite(&rho) {
            return Err(Error::InvalidState { reason: "non-finite entries".into() });
        }
        let herm = hermiticity_defect(&rho);
        if herm > tol.herm {
            return Err(Error::InvalidState {
                reason: format!("density matrix not Hermitian (deviation {herm:.3e})"),
            });
        }
        let trace = rho.trace().re;
        if (trace - 1.0).abs() > tol.norm {
            return Err(Error::InvalidState {
                reason: format!("trace {trace} is not 1"),
            });
        }
        let eig = SymmetricEigen::new(rho.clone());
        let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig < -tol.psd {
            return Err(Error::InvalidState {
                reason: format!("not positive semidefinite (min eigenvalue {min_eig:.3e})"),
            });
        }
        Ok(QuantumState::Mixed(rho))
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        QuantumState::Mixed(CMatrix::identity(dim, dim) * scale)
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(psi) => psi.len(),
            QuantumState::Mixed(rho) => rho.nrows(),
        }
    }

    /// Density operator T (|ψ⟩⟨ψ| for pure states).
    pub fn density(&self) -> CMatrix {
        match self {
            QuantumState::Pure(psi) => CMatrix::from(psi * psi.adjoint()),
            QuantumState::Mixed(rho) => rho.clone(),
        }
    }
}

/// tr(T·M) for a Hermitian M: the probability tr[T P] when M is a projector.
///
/// The result is clamped to [0, 1] when `clamp_probability` is requested by
/// the caller via [`expectation_projector`]; the raw value is returned here.
pub fn expectation(state: &QuantumState, m: &CMatrix) -> Result<f64> {
    check_same_dim(state.dim(), m.nrows())?;
    check_hermitian(m)?;
    let value = match state {
        QuantumState::Pure(psi) => (psi.adjoint() * m * psi)[(0, 0)],
        QuantumState::Mixed(rho) => (rho * m).trace(),
    };
    Ok(value.re)
}

/// tr(T·P) for a projector, clamped to [0, 1] for reporting.
pub fn expectation_projector(state: &QuantumState, p: &Projector) -> Result<f64> {
    Ok(expectation(state, p.matrix())?.clamp(0.0, 1.0))
}
