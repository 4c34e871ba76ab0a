//! The verdict engine: decide complementarity of projector pairs and
//! observable pairs, check the totally-noncommuting necessary condition, and
//! classify relationships with machine-checkable witnesses.
//!
//! Two sharp observables are complementary when every pair of nontrivial
//! spectral projectors has zero meet (their ranges are disjoint). The
//! probabilistic route asks instead that no unit vector certain for one
//! projector is certain for the other; for sharp observables the two
//! conditions are equivalent and both are implemented.

use crate::error::{Error, Result};
use crate::hilbert::{commutes, CVector, Projector};
use crate::spectral::{common_eigenvectors, Observable, ValueSet};
use crate::tol::Tolerances;

/// Hard cap on spectral points per observable: the subset enumeration is
/// exponential (2^k − 2 proper subsets).
pub const MAX_SPECTRAL_POINTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Relation {
    Complementary,
    Noncomplementary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Commutation {
    Commuting,
    /// Some but not all eigenvectors shared; a convention of this artifact,
    /// interpolating between the commuting and totally noncommuting extremes.
    PartiallyCommuting,
    TotallyNoncommuting,
    /// A scalar multiple of the identity: every vector is an eigenvector, so
    /// "totally noncommuting" is vacuously false and the verdict is flagged
    /// rather than guessed.
    DegenerateIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WitnessKind {
    NonzeroMeet,
    CommonEigenvector,
    ProbabilityOne,
    AllMeetsZero,
}

/// Evidence payload of a witness: a projector (shared subspace) or a unit
/// vector (certain state).
#[derive(Debug, Clone)]
pub enum Evidence {
    Projector(Projector),
    Vector(CVector),
}

/// Independently re-checkable piece of evidence backing a verdict.
#[derive(Debug, Clone)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub value_set_a: ValueSet,
    pub value_set_b: ValueSet,
    pub evidence: Evidence,
    /// Squared overlap cos²θ of the closest principal directions, in [0, 1].
    pub magnitude: f64,
    pub note: Option<String>,
}

/// Complementarity classification with witnesses and pair counts.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub relation: Relation,
    pub commutation: Commutation,
    pub pairs_total: usize,
    pub pairs_zero_meet: usize,
    pub pairs_nonzero_meet: usize,
    pub witnesses: Vec<WitnessRecord>,
}

/// Condition (i) for a single projector pair: complementary iff the meet is
/// zero. Improper projectors (zero or identity) make the pair trivially
/// noncomplementary and are flagged in the witness note.
pub fn complementary_pair(p: &Projector, q: &Projector) -> Result<(bool, WitnessRecord)> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { left: p.dim(), right: q.dim() });
    }
    let trivial_sets = (ValueSet::point(1.0), ValueSet::point(1.0));
    if !p.is_proper() || !q.is_proper() {
        return Ok((
            false,
            WitnessRecord {
                kind: WitnessKind::NonzeroMeet,
                value_set_a: trivial_sets.0,
                value_set_b: trivial_sets.1,
                evidence: Evidence::Projector(p.meet(q)?),
                magnitude: if p.is_zero() || q.is_zero() { 0.0 } else { 1.0 },
                note: Some("trivial pair: a zero or identity projector is excluded".into()),
            },
        ));
    }
    let m = p.meet(q)?;
    if m.is_zero() {
        let (overlap, psi) = p.max_overlap(q)?;
        Ok((
            true,
            WitnessRecord {
                kind: WitnessKind::AllMeetsZero,
                value_set_a: trivial_sets.0,
                value_set_b: trivial_sets.1,
                evidence: Evidence::Vector(psi),
                magnitude: overlap,
                note: None,
            },
        ))
    } else {
        let basis = m.range_basis().column(0).clone_owned();
        Ok((
            false,
            WitnessRecord {
                kind: WitnessKind::NonzeroMeet,
                value_set_a: trivial_sets.0,
                value_set_b: trivial_sets.1,
                evidence: Evidence::Vector(basis),
                magnitude: 1.0,
                note: None,
            },
        ))
    }
}

/// All nonempty proper subsets of an observable's spectral points, as
/// (projector, value set) pairs, in deterministic bitmask order over
/// ascending eigenvalues.
fn subset_projectors(a: &Observable) -> Result<Vec<(Projector, ValueSet)>> {
    let k = a.spectrum().len();
    if k > MAX_SPECTRAL_POINTS {
        return Err(Error::TooManySpectralPoints { points: k, cap: MAX_SPECTRAL_POINTS });
    }
    let mut out = Vec::new();
    let full: u32 = (1 << k) - 1;
    for mask in 1..full {
        let eigenvalues: Vec<f64> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| a.spectrum()[i].eigenvalue)
            .collect();
        let vs = ValueSet::points(&eigenvalues);
        out.push((a.spectral_projector(&vs), vs));
    }
    Ok(out)
}

fn check_dims(a: &Observable, b: &Observable) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// Commutation taxonomy for a pair of observables.
pub fn commutation_class(a: &Observable, b: &Observable) -> Result<Commutation> {
    check_dims(a, b)?;
    if a.is_degenerate_identity() || b.is_degenerate_identity() {
        return Ok(Commutation::DegenerateIdentity);
    }
    if commutes(a.matrix(), b.matrix())? {
        return Ok(Commutation::Commuting);
    }
    if common_eigenvectors(a, b)?.is_empty() {
        Ok(Commutation::TotallyNoncommuting)
    } else {
        Ok(Commutation::PartiallyCommuting)
    }
}

fn degenerate_verdict(a: &Observable, _b: &Observable) -> Verdict {
    let which = if a.is_degenerate_identity() { "first" } else { "second" };
    Verdict {
        relation: Relation::Noncomplementary,
        commutation: Commutation::DegenerateIdentity,
        pairs_total: 0,
        pairs_zero_meet: 0,
        pairs_nonzero_meet: 0,
        witnesses: vec![WitnessRecord {
            kind: WitnessKind::NonzeroMeet,
            value_set_a: ValueSet::points(&[]),
            value_set_b: ValueSet::points(&[]),
            evidence: Evidence::Projector(Projector::identity(a.dim())),
            magnitude: 1.0,
            note: Some(format!(
                "{which} observable is a scalar multiple of the identity; \
                 it has no nontrivial spectral projectors"
            )),
        }],
    }
}

/// Condition (i) over the full spectral enumeration: complementary iff every
/// cross pair of nontrivial spectral projectors has zero meet.
pub fn complementary_observables(a: &Observable, b: &Observable) -> Result<Verdict> {
    check_dims(a, b)?;
    if a.is_degenerate_identity() || b.is_degenerate_identity() {
        return Ok(degenerate_verdict(a, b));
    }
    let subs_a = subset_projectors(a)?;
    let subs_b = subset_projectors(b)?;
    let mut pairs_total = 0;
    let mut pairs_zero = 0;
    let mut pairs_nonzero = 0;
    let mut first_nonzero: Option<WitnessRecord> = None;
    let mut best_zero: Option<WitnessRecord> = None;
    for (pa, va) in &subs_a {
        for (pb, vb) in &subs_b {
            pairs_total += 1;
            let m = pa.meet(pb)?;
            if m.is_zero() {
                pairs_zero += 1;
                if best_zero.is_none() {
                    let (overlap, psi) = pa.max_overlap(pb)?;
                    best_zero = Some(WitnessRecord {
                        kind: WitnessKind::AllMeetsZero,
                        value_set_a: va.clone(),
                        value_set_b: vb.clone(),
                        evidence: Evidence::Vector(psi),
                        magnitude: overlap,
                        note: None,
                    });
                }
            } else {
                pairs_nonzero += 1;
                if first_nonzero.is_none() {
                    first_nonzero = Some(WitnessRecord {
                        kind: WitnessKind::NonzeroMeet,
                        value_set_a: va.clone(),
                        value_set_b: vb.clone(),
                        evidence: Evidence::Vector(m.range_basis().column(0).clone_owned()),
                        magnitude: 1.0,
                        note: None,
                    });
                }
            }
        }
    }
    let relation = if pairs_nonzero == 0 {
        Relation::Complementary
    } else {
        Relation::Noncomplementary
    };
    let mut witnesses = Vec::new();
    if let Some(w) = first_nonzero {
        witnesses.push(w);
    } else if let Some(w) = best_zero {
        witnesses.push(w);
    }
    Ok(Verdict {
        relation,
        commutation: commutation_class(a, b)?,
        pairs_total,
        pairs_zero_meet: pairs_zero,
        pairs_nonzero_meet: pairs_nonzero,
        witnesses,
    })
}

/// Condition (ii), the probabilistic route: for every cross pair (P, Q) the
/// largest probability ⟨ψ|Q|ψ⟩ over unit ψ certain for P must stay below 1.
pub fn probabilistic_check(a: &Observable, b: &Observable) -> Result<Verdict> {
    check_dims(a, b)?;
    if a.is_degenerate_identity() || b.is_degenerate_identity() {
        return Ok(degenerate_verdict(a, b));
    }
    let tol = Tolerances::get();
    let subs_a = subset_projectors(a)?;
    let subs_b = subset_projectors(b)?;
    let mut pairs_total = 0;
    let mut pairs_pass = 0;
    let mut pairs_fail = 0;
    let mut first_fail: Option<WitnessRecord> = None;
    let mut best_pass: Option<WitnessRecord> = None;
    for (pa, va) in &subs_a {
        for (pb, vb) in &subs_b {
            pairs_total += 1;
            let (sup, psi) = pa.max_overlap(pb)?;
            if sup < 1.0 - tol.angle {
                pairs_pass += 1;
                if best_pass.is_none() {
                    best_pass = Some(WitnessRecord {
                        kind: WitnessKind::AllMeetsZero,
                        value_set_a: va.clone(),
                        value_set_b: vb.clone(),
                        evidence: Evidence::Vector(psi),
                        magnitude: sup,
                        note: None,
                    });
                }
            } else {
                pairs_fail += 1;
                if first_fail.is_none() {
                    first_fail = Some(WitnessRecord {
                        kind: WitnessKind::ProbabilityOne,
                        value_set_a: va.clone(),
                        value_set_b: vb.clone(),
                        evidence: Evidence::Vector(psi),
                        magnitude: sup,
                        note: None,
                    });
                }
            }
        }
    }
    let relation = if pairs_fail == 0 {
        Relation::Complementary
    } else {
        Relation::Noncomplementary
    };
    let mut witnesses = Vec::new();
    if let Some(w) = first_fail {
        witnesses.push(w);
    } else if let Some(w) = best_pass {
        witnesses.push(w);
    }
    Ok(Verdict {
        relation,
        commutation: commutation_class(a, b)?,
        pairs_total,
        pairs_zero_meet: pairs_pass,
        pairs_nonzero_meet: pairs_fail,
        witnesses,
    })
}

/// Conditions (i) and (ii) agree for sharp observables; this cross-checks the
/// two engines on concrete inputs.
pub fn conditions_agree(a: &Observable, b: &Observable) -> Result<bool> {
    let lattice = complementary_observables(a, b)?;
    let probabilistic = probabilistic_check(a, b)?;
    Ok(lattice.relation == probabilistic.relation)
}

/// Full classification: relation from condition (i) plus the commutation
/// taxonomy and, when present, a common-eigenvector witness.
pub fn classify(a: &Observable, b: &Observable) -> Result<Verdict> {
    let mut verdict = complementary_observables(a, b)?;
    if verdict.commutation != Commutation::DegenerateIdentity {
        let shared = common_eigenvectors(a, b)?;
        if let Some(first) = shared.first() {
            verdict.witnesses.push(WitnessRecord {
                kind: WitnessKind::CommonEigenvector,
                value_set_a: ValueSet::points(&[]),
                value_set_b: ValueSet::points(&[]),
                evidence: Evidence::Vector(first.range_basis().column(0).clone_owned()),
                magnitude: 1.0,
                note: Some(format!("{} common eigenprojector(s)", shared.len())),
            });
        }
    }
    // necessary condition: complementary observables share no eigenvector
    debug_assert!(
        verdict.relation != Relation::Complementary
            || verdict.commutation == Commutation::TotallyNoncommuting
    );
    Ok(verdict)
}
