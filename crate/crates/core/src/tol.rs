//! Centralized numerical tolerances.
//!
//! Every comparison threshold used by the library lives here. The
//! `COMPLEMENT_LAB_TOL` environment variable scales all of them uniformly
//! (default 1.0); it is read once per process.

use std::sync::OnceLock;

/// Tolerance configuration shared by all modules.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Hermiticity check: ‖M − M†‖_max.
    pub herm: f64,
    /// Idempotence check: ‖P² − P‖_max.
    pub idem: f64,
    /// Commutator check: ‖PQ − QP‖_max.
    pub comm: f64,
    /// Principal-angle threshold: σ ≥ 1 − angle means the direction is shared.
    pub angle: f64,
    /// Rank-revealing threshold, relative to the largest singular value.
    pub rank_rel: f64,
    /// State normalization: |‖ψ‖ − 1| or |tr T − 1|.
    pub norm: f64,
    /// Positive semidefiniteness slack: min eigenvalue ≥ −psd.
    pub psd: f64,
    /// Eigenvalue-of-projector check: distance from {0, 1}.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            idem: 1e-10,
            comm: 1e-10,
            angle: 1e-8,
            rank_rel: 1e-10,
            norm: 1e-10,
            psd: 1e-10,
            eig: 1e-8,
        }
    }
}

impl Tolerances {
    /// All tolerances multiplied by `scale`.
    pub fn scaled(scale: f64) -> Self {
        let t = Tolerances::default();
        Tolerances {
            herm: t.herm * scale,
            idem: t.idem * scale,
            comm: t.comm * scale,
            angle: t.angle * scale,
            rank_rel: t.rank_rel * scale,
            norm: t.norm * scale,
            psd: t.psd * scale,
            eig: t.eig * scale,
        }
    }

    /// Process-wide tolerances, scaled by `COMPLEMENT_LAB_TOL` if set.
    pub fn get() -> &'static Tolerances {
        static TOL: OnceLock<Tolerances> = OnceLock::new();
        TOL.get_or_init(|| {
            let scale = std::env::var("COMPLEMENT_LAB_TOL")
                .ok()
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|s| s.is_finite() && *s > 0.0)
                .unwrap_or(1.0);
            Tolerances::scaled(scale)
        })
    }
}
