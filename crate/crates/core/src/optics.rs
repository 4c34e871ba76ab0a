//! Single-photon mode optics: beam-splitter/mirror/phase networks over a
//! small set of path modes, plus the two builtin scenes analysed by the
//! crate (the three-path interferometer of Fig. 1 type and the biprism).
//!
//! Conventions, fixed once for reproducible amplitudes: a beam splitter of
//! reflectivity r acts on its mode pair as [[√(1−r), i√r], [i√r, √(1−r)]]
//! (transmitted amplitude real, reflected amplitude picks up i); a mirror
//! multiplies its mode by i (single bounce). All probabilities are
//! independent of these phase choices up to a φ-offset.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{
    expectation_projector, max_norm, CMatrix, CVector, Projector, QuantumState,
};
use crate::tol::Tolerances;

/// One optical element of a mode network.
#[derive(Debug, Clone)]
pub enum Element {
    /// Reflectivity r ∈ [0, 1] acting on a distinct mode pair.
    BeamSplitter { reflectivity: f64, modes: (usize, usize) },
    /// Multiplies one mode by e^{iφ}.
    PhaseShifter { phase: f64, mode: usize },
    /// Multiplies one mode by i.
    Mirror { mode: usize },
    /// Arbitrary unitary on all modes.
    CustomUnitary(CMatrix),
}

/// Embed an element into the full dim×dim unitary.
pub fn element_unitary(e: &Element, dim: usize) -> Result<CMatrix> {
    let mut u = CMatrix::identity(dim, dim);
    match e {
        Element::BeamSplitter { reflectivity, modes: (a, b) } => {
            let r = *reflectivity;
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidReflectivity(r));
            }
            if a == b {
                return Err(Error::DuplicateModes(*a));
            }
            for &m in [a, b] {
                if m >= dim {
                    return Err(Error::ModeOutOfRange { mode: m, dim });
                }
            }
            let t_amp = Complex64::new((1.0 - r).sqrt(), 0.0);
            let r_amp = Complex64::new(0.0, r.sqrt());
            u[(*a, *a)] = t_amp;
            u[(*b, *b)] = t_amp;
            u[(*a, *b)] = r_amp;
            u[(*b, *a)] = r_amp;
        }
        Element::PhaseShifter { phase, mode } => {
            if *mode >= dim {
                return Err(Error::ModeOutOfRange { mode: *mode, dim });
            }
            u[(*mode, *mode)] = Complex64::from_polar(1.0, *phase);
        }
        Element::Mirror { mode } => {
            if *mode >= dim {
                return Err(Error::ModeOutOfRange { mode: *mode, dim });
            }
            u[(*mode, *mode)] = Complex64::new(0.0, 1.0);
        }
        Element::CustomUnitary(m) => {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch { left: m.nrows(), right: dim });
            }
            let defect = max_norm(&(m.adjoint() * m - CMatrix::identity(dim, dim)));
            if defect > Tolerances::get().herm {
                return Err(Error::InvalidScene(format!(
                    "custom element is not unitary (deviation {defect:.3e})"
                )));
            }
            u = m.clone();
        }
    }
    Ok(u)
}

/// Labeled mode network: ordered elements, input state, named analysis
/// projectors and detector projectors.
#[derive(Debug, Clone)]
pub struct OpticalScene {
    pub mode_labels: Vec<String>,
    pub elements: Vec<Element>,
    pub input_state: QuantumState,
    pub named_projectors: BTreeMap<String, Projector>,
    pub detectors: BTreeMap<String, Projector>,
}

impl OpticalScene {
    pub fn dim(&self) -> usize {
        self.mode_labels.len()
    }

    /// Deficit I − Σ detectors; nonzero rank means explicit loss.
    pub fn detection_deficit(&self) -> f64 {
        let dim = self.dim();
        let mut sum = CMatrix::zeros(dim, dim);
        for p in self.detectors.values() {
            sum += p.matrix();
        }
        max_norm(&(CMatrix::identity(dim, dim) - sum))
    }

    /// Apply the element unitaries in order to the input state.
    pub fn propagate(&self) -> Result<QuantumState> {
        let dim = self.dim();
        if self.input_state.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: self.input_state.dim(),
                right: dim,
            });
        }
        let mut u = CMatrix::identity(dim, dim);
        for e in &self.elements {
            u = element_unitary(e, dim)? * u;
        }
        Ok(match &self.input_state {
            QuantumState::Pure(psi) => QuantumState::Pure(&u * psi),
            QuantumState::Mixed(rho) => QuantumState::Mixed(&u * rho * u.adjoint()),
        })
    }

    /// Probability at each detector for the propagated state.
    pub fn detection_probabilities(&self) -> Result<BTreeMap<String, f64>> {
        let out = self.propagate()?;
        let mut probs = BTreeMap::new();
        for (name, p) in &self.detectors {
            probs.insert(name.clone(), expectation_projector(&out, p)?);
        }
        Ok(probs)
    }

    /// Joint second-order probability at two detectors for a single-photon
    /// input: the expectation of the meet of their projectors. Zero exactly
    /// when the detectors are orthogonal. A non-orthogonal pair of distinct
    /// detectors is an error, not a silent answer.
    pub fn anticoincidence(&self, d1: &str, d2: &str) -> Result<f64> {
        let p1 = self
            .detectors
            .get(d1)
            .ok_or_else(|| Error::UnknownDetector(d1.into()))?;
        let p2 = self
            .detectors
            .get(d2)
            .ok_or_else(|| Error::UnknownDetector(d2.into()))?;
        if d1 != d2 {
            let product = max_norm(&(p1.matrix() * p2.matrix()));
            if product > Tolerances::get().comm {
                return Err(Error::NonOrthogonalDetectors(d1.into(), d2.into()));
            }
        }
        let out = self.propagate()?;
        expectation_projector(&out, &p1.meet(p2)?)
    }
}

fn basis_vector(dim: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

/// The three-path interferometer of Fig. 1 type: BS₁ splits the input into a
/// reflected path Ψ_r and a transmitted path; BS₂ splits the transmitted
/// path into Ψ_tr and Ψ_tt; mirrors fold the arms, a phase φ sits on the
/// Ψ_tr arm, and BS₃ recombines the two transmitted arms onto detectors
/// D_t1 and D_t2. Modes: 0 = Ψ_r, 1 = Ψ_tr, 2 = Ψ_tt; the input photon
/// enters on mode 2 (the straight-through line).
///
/// Named projectors: `path_r`, `path_t1t2`, `interf_plus` (onto
/// (Ψ_tt+Ψ_tr)/√2), `interf_minus` (onto (Ψ_tt−Ψ_tr)/√2).
pub fn build_rangwala_roy(phi: f64) -> OpticalScene {
    let dim = 3;
    let s = 1.0 / 2f64.sqrt();
    let c = |x: f64| Complex64::new(x, 0.0);

    let path_r = Projector::from_span(&[basis_vector(dim, 0)]).unwrap();
    let path_t1t2 =
        Projector::from_span(&[basis_vector(dim, 1), basis_vector(dim, 2)]).unwrap();
    let interf_plus = Projector::from_span(&[CVector::from_vec(vec![
        c(0.0),
        c(s),
        c(s),
    ])])
    .unwrap();
    let interf_minus = Projector::from_span(&[CVector::from_vec(vec![
        c(0.0),
        c(-s),
        c(s),
    ])])
    .unwrap();

    let mut named_projectors = BTreeMap::new();
    named_projectors.insert("path_r".to_string(), path_r.clone());
    named_projectors.insert("path_t1t2".to_string(), path_t1t2);
    named_projectors.insert("interf_plus".to_string(), interf_plus);
    named_projectors.insert("interf_minus".to_string(), interf_minus);

    let mut detectors = BTreeMap::new();
    detectors.insert("D_r".to_string(), path_r);
    detectors.insert(
        "D_t1".to_string(),
        Projector::from_span(&[basis_vector(dim, 1)]).unwrap(),
    );
    detectors.insert(
        "D_t2".to_string(),
        Projector::from_span(&[basis_vector(dim, 2)]).unwrap(),
    );

    OpticalScene {
        mode_labels: vec!["Psi_r".into(), "Psi_tr".into(), "Psi_tt".into()],
        elements: vec![
            Element::BeamSplitter { reflectivity: 0.5, modes: (0, 2) },
            Element::BeamSplitter { reflectivity: 0.5, modes: (1, 2) },
            Element::Mirror { mode: 1 },
            Element::Mirror { mode: 2 },
            Element::PhaseShifter { phase: phi, mode: 1 },
            Element::BeamSplitter { reflectivity: 0.5, modes: (1, 2) },
        ],
        input_state: QuantumState::Pure(basis_vector(dim, 2)),
        named_projectors,
        detectors,
    }
}

/// Finite truncation of the biprism Hilbert space H = H_r ⊕ H_t, with a wave
/// (tunneling) projector supported inside the transmitted block.
#[derive(Debug, Clone)]
pub struct BiprismScene {
    pub dim_r: usize,
    pub dim_t: usize,
    pub wave_rank: usize,
    pub p_r: Projector,
    pub p_t: Projector,
    pub p_wave: Projector,
    pub state: QuantumState,
}

impl BiprismScene {
    pub fn dim(&self) -> usize {
        self.dim_r + self.dim_t
    }

    /// A unit state supported in range(P_t) − range(P_wave); only exists
    /// when wave_rank < dim_t. Exhibits the strict inequality
    /// ⟨P_wave⟩ < ⟨P_t⟩.
    pub fn state_outside_wave(&self) -> Option<QuantumState> {
        if self.wave_rank < self.dim_t {
            Some(QuantumState::Pure(basis_vector(
                self.dim(),
                self.dim_r + self.wave_rank,
            )))
        } else {
            None
        }
    }
}

/// Build a biprism scene: block projectors P_r, P_t on H_r ⊕ H_t, a wave
/// projector onto the first `wave_rank` transmitted coordinates, and the
/// superposition state α·(reflected unit vector) + β·(unit vector inside
/// range(P_wave)). With wave_rank = dim_t, P_wave = P_t exactly.
pub fn build_biprism(
    dim_r: usize,
    dim_t: usize,
    wave_rank: usize,
    alpha: Complex64,
    beta: Complex64,
) -> Result<BiprismScene> {
    if dim_r < 1 || dim_t < 1 {
        return Err(Error::InvalidScene("dim_r and dim_t must be at least 1".into()));
    }
    if wave_rank < 1 || wave_rank > dim_t {
        return Err(Error::InvalidScene(format!(
            "wave_rank {wave_rank} must satisfy 1 ≤ wave_rank ≤ dim_t = {dim_t}"
        )));
    }
    let norm2 = alpha.norm_sqr() + beta.norm_sqr();
    if (norm2 - 1.0).abs() > Tolerances::get().norm {
        return Err(Error::InvalidState {
            reason: format!("|α|² + |β|² = {norm2} is not 1"),
        });
    }
    let dim = dim_r + dim_t;
    // block projectors are exactly diagonal: P_r + P_t = I holds bit-exactly
    let diagonal = |range: std::ops::Range<usize>| {
        let mut m = CMatrix::zeros(dim, dim);
        for i in range {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Projector::new(m)
    };
    let p_r = diagonal(0..dim_r)?;
    let p_t = diagonal(dim_r..dim)?;
    let p_wave = diagonal(dim_r..dim_r + wave_rank)?;

    let psi = basis_vector(dim, 0) * alpha + basis_vector(dim, dim_r) * beta;
    Ok(BiprismScene {
        dim_r,
        dim_t,
        wave_rank,
        p_r,
        p_t,
        p_wave,
        state: QuantumState::Pure(psi),
    })
}
