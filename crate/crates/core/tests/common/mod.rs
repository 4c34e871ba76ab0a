//! Shared test helpers: seeded random matrices/projectors and the
//! alternating-projection meet oracle, kept independent of the SVD-based
//! implementation it cross-checks.

use complement_lab::hilbert::{max_norm, CMatrix, CVector, Projector};
use num_complex::Complex64;
use rand::Rng;

pub fn random_complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Random Hermitian matrix (Gaussian-free; uniform entries symmetrized).
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let m = random_complex_matrix(rng, dim, dim);
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Random Hermitian with eigenvalues drawn from a small integer set, so
/// degeneracies occur with sizeable probability.
pub fn random_hermitian_degenerate<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let basis = random_unitary(rng, dim);
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        let lambda = rng.gen_range(0..=2) as f64;
        let col = basis.column(i);
        m += CMatrix::from(&col * col.adjoint()) * Complex64::new(lambda, 0.0);
    }
    m
}

/// Random unitary via Gram-Schmidt on a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    loop {
        let m = random_complex_matrix(rng, dim, dim);
        if let Some(u) = gram_schmidt(&m) {
            return u;
        }
    }
}

fn gram_schmidt(m: &CMatrix) -> Option<CMatrix> {
    let dim = m.nrows();
    let mut cols: Vec<CVector> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = m.column(j).clone_owned();
        for u in &cols {
            let overlap = (u.adjoint() * &v)[(0, 0)];
            v -= u * overlap;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            return None;
        }
        cols.push(v / Complex64::new(norm, 0.0));
    }
    Some(CMatrix::from_columns(&cols))
}

/// Random projector of the given rank.
pub fn random_projector<R: Rng>(rng: &mut R, dim: usize, rank: usize) -> Projector {
    assert!(rank <= dim);
    if rank == 0 {
        return Projector::zero(dim);
    }
    let u = random_unitary(rng, dim);
    let vectors: Vec<CVector> = (0..rank).map(|j| u.column(j).clone_owned()).collect();
    Projector::from_span(&vectors).expect("orthonormal columns span cleanly")
}

/// Random projector with rank uniform in 0..=dim.
pub fn random_projector_any_rank<R: Rng>(rng: &mut R, dim: usize) -> Projector {
    let rank = rng.gen_range(0..=dim);
    random_projector(rng, dim, rank)
}

/// Von Neumann alternating-projection oracle for the lattice meet:
/// lim_{n→∞} (PQP)ⁿ, evaluated by repeated squaring (n = 2^k) with early
/// exit once the iterate stops moving. Squaring reaches n ≈ 10⁷ in a few
/// dozen multiplications, far past where slowly decaying principal-angle
/// directions die out, while directions in the true intersection stay at 1.
#[allow(dead_code)] // used by the acceptance suite only
pub fn meet_oracle(p: &Projector, q: &Projector) -> CMatrix {
    let mut m = p.matrix() * q.matrix() * p.matrix();
    for _ in 0..24 {
        let next = &m * &m;
        if max_norm(&(&next - &m)) <= 1e-10 {
            return next;
        }
        m = next;
    }
    m
}
