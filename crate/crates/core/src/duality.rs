//! Which-path predictability and fringe visibility for two-path
//! superpositions, the P² + V² relation, and the biprism normalization
//! report.
//!
//! The quantitative forms are the standard ones: predictability
//! P = ||α|² − |β|²| and visibility V = 2μ|α||β|, where μ ∈ [0, 1] damps
//! the off-diagonal coherence (μ = 1 for a pure state). For pure states
//! P² + V² = 1 identically; for μ < 1 the sum is P² + μ²(1 − P²) ≤ 1.
//!
//! The biprism report deliberately labels |α|² + |β|² as *normalization*:
//! the wave projector is contained in the transmitted-path projector, so
//! the transmission amplitude carries which-path information as well and
//! the sum is not a complementarity trade-off.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::expectation;
use crate::optics::BiprismScene;
use crate::tol::Tolerances;

/// Two-path superposition α·(reflected) + β·(transmitted) with an optional
/// coherence damping μ (1 = pure).
#[derive(Debug, Clone, Copy)]
pub struct TwoPathState {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub coherence: f64,
}

impl TwoPathState {
    pub fn new(alpha: Complex64, beta: Complex64, coherence: f64) -> Result<Self> {
        let norm2 = alpha.norm_sqr() + beta.norm_sqr();
        if (norm2 - 1.0).abs() > Tolerances::get().norm {
            return Err(Error::InvalidState {
                reason: format!("|α|² + |β|² = {norm2} is not 1"),
            });
        }
        if !(0.0..=1.0).contains(&coherence) {
            return Err(Error::InvalidState {
                reason: format!("coherence {coherence} outside [0, 1]"),
            });
        }
        Ok(TwoPathState { alpha, beta, coherence })
    }

    /// Balanced or unbalanced state from |α|² alone (real amplitudes).
    pub fn from_alpha2(alpha2: f64, coherence: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(Error::InvalidState {
                reason: format!("|α|² = {alpha2} outside [0, 1]"),
            });
        }
        TwoPathState::new(
            Complex64::new(alpha2.sqrt(), 0.0),
            Complex64::new((1.0 - alpha2).sqrt(), 0.0),
            coherence,
        )
    }
}

/// Quantitative duality figures plus the biprism bookkeeping columns.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DualityReport {
    pub predictability: f64,
    pub visibility: f64,
    pub sum_of_squares: f64,
    /// |α|² + |β|² — always 1 for a lossless scene; labeled normalization,
    /// never a duality value.
    pub normalization: f64,
    pub wave_expectation: f64,
    pub transmit_expectation: f64,
}

/// P, V and P² + V² for a two-path state.
pub fn duality_measures(s: &TwoPathState) -> DualityReport {
    let a2 = s.alpha.norm_sqr();
    let b2 = s.beta.norm_sqr();
    let predictability = (a2 - b2).abs();
    let visibility = 2.0 * s.coherence * s.alpha.norm() * s.beta.norm();
    DualityReport {
        predictability,
        visibility,
        sum_of_squares: predictability * predictability + visibility * visibility,
        normalization: a2 + b2,
        wave_expectation: b2,
        transmit_expectation: b2,
    }
}

/// The biprism normalization chain: ⟨P_r⟩ + ⟨P_t⟩ = 1 regardless of the
/// wave projector, with ⟨P_wave⟩ ≤ ⟨P_t⟩ always. Equality of the last two
/// holds for the prepared state (built inside range(P_wave)); the strict
/// case is exhibited by a state supported in P_t − P_wave.
pub fn normalization_vs_duality(scene: &BiprismScene) -> Result<DualityReport> {
    let refl = expectation(&scene.state, scene.p_r.matrix())?;
    let trans = expectation(&scene.state, scene.p_t.matrix())?;
    let wave = expectation(&scene.state, scene.p_wave.matrix())?;
    let alpha2 = refl;
    let beta2 = wave;
    let predictability = (alpha2 - beta2).abs();
    let visibility = 2.0 * alpha2.max(0.0).sqrt() * beta2.max(0.0).sqrt();
    Ok(DualityReport {
        predictability,
        visibility,
        sum_of_squares: predictability * predictability + visibility * visibility,
        normalization: refl + trans,
        wave_expectation: wave,
        transmit_expectation: trans,
    })
}

/// Fringe visibility (max − min)/(max + min) from sampled counts.
pub fn visibility_from_counts(counts: &[(f64, f64)]) -> Result<f64> {
    if counts.len() < 3 {
        return Err(Error::Degenerate(format!(
            "visibility needs at least 3 samples, got {}",
            counts.len()
        )));
    }
    let max = counts.iter().map(|&(_, p)| p).fold(f64::NEG_INFINITY, f64::max);
    let min = counts.iter().map(|&(_, p)| p).fold(f64::INFINITY, f64::min);
    if max + min == 0.0 {
        return Err(Error::Degenerate(
            "all counts are zero; visibility is undefined".into(),
        ));
    }
    Ok((max - min) / (max + min))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_which_path() {
        let s = TwoPathState::from_alpha2(1.0, 1.0).unwrap();
        let r = duality_measures(&s);
        assert_eq!(r.predictability, 1.0);
        assert_eq!(r.visibility, 0.0);
        assert!((r.sum_of_squares - 1.0).abs() < 1e-15);
    }

    #[test]
    fn balanced_pure() {
        let s = TwoPathState::from_alpha2(0.5, 1.0).unwrap();
        let r = duality_measures(&s);
        assert!(r.predictability.abs() < 1e-15);
        assert!((r.visibility - 1.0).abs() < 1e-12);
        assert!((r.sum_of_squares - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fully_decohered() {
        let s = TwoPathState::from_alpha2(0.5, 0.0).unwrap();
        let r = duality_measures(&s);
        assert_eq!(r.visibility, 0.0);
        assert!(r.sum_of_squares < 1e-15);
    }

    #[test]
    fn three_quarters_split() {
        let s = TwoPathState::from_alpha2(0.75, 1.0).unwrap();
        let r = duality_measures(&s);
        assert!((r.predictability - 0.5).abs() < 1e-12);
        assert!((r.visibility - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((r.sum_of_squares - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(TwoPathState::from_alpha2(1.5, 1.0).is_err());
        assert!(TwoPathState::from_alpha2(0.5, 2.0).is_err());
        assert!(TwoPathState::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            1.0
        )
        .is_err());
    }

    #[test]
    fn visibility_from_sampled_fringe() {
        let counts: Vec<(f64, f64)> = (0..64)
            .map(|i| {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
                (phi, (1.0 + phi.cos()) / 4.0)
            })
            .collect();
        let v = visibility_from_counts(&counts).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_of_offset_fringe() {
        let counts: Vec<(f64, f64)> = (0..64)
            .map(|i| {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
                (phi, 0.3 + 0.1 * phi.cos())
            })
            .collect();
        let v = visibility_from_counts(&counts).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_degenerate_cases() {
        let constant: Vec<(f64, f64)> = (0..8).map(|i| (i as f64, 0.25)).collect();
        assert_eq!(visibility_from_counts(&constant).unwrap(), 0.0);
        assert!(visibility_from_counts(&[(0.0, 0.1), (1.0, 0.2)]).is_err());
        let zeros: Vec<(f64, f64)> = (0..8).map(|i| (i as f64, 0.0)).collect();
        assert!(visibility_from_counts(&zeros).is_err());
    }

    #[test]
    fn biprism_normalization_report() {
        let s = 1.0 / 2f64.sqrt();
        let scene = crate::optics::build_biprism(
            2,
            2,
            2,
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
        )
        .unwrap();
        let r = normalization_vs_duality(&scene).unwrap();
        assert!((r.normalization - 1.0).abs() < 1e-12);
        assert!((r.wave_expectation - 0.5).abs() < 1e-12);
        assert!((r.transmit_expectation - 0.5).abs() < 1e-12);
    }

    #[test]
    fn biprism_strict_containment() {
        let scene = crate::optics::build_biprism(
            2,
            3,
            1,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        // α = 1: all weight reflected
        let r = normalization_vs_duality(&scene).unwrap();
        assert!((r.normalization - 1.0).abs() < 1e-12);
        assert!(r.wave_expectation.abs() < 1e-15);
        // state in P_t − P_wave: wave expectation strictly below transmit
        let outside = BiprismScene { state: scene.state_outside_wave().unwrap(), ..scene };
        let r2 = normalization_vs_duality(&outside).unwrap();
        assert!(r2.wave_expectation < r2.transmit_expectation);
        assert!((r2.transmit_expectation - 1.0).abs() < 1e-12);
    }
}
