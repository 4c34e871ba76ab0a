//! Randomized invariants for the projection lattice, spectral measures,
//! verdicts, and the duality identities. Matrix-valued properties use seeded
//! loops over the shared generators; scalar-valued ones use proptest.

mod common;

use common::*;
use complement_lab::complementarity::{
    classify, complementary_observables, probabilistic_check, Commutation, Evidence, Relation,
    WitnessKind,
};
use complement_lab::duality::{
    duality_measures, normalization_vs_duality, visibility_from_counts, TwoPathState,
};
use complement_lab::hilbert::{
    commutes, expectation, expectation_projector, max_norm, CVector, Projector, QuantumState,
};
use complement_lab::optics::{build_biprism, build_rangwala_roy};
use complement_lab::spectral::{Observable, ValueSet};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = random_complex_matrix(rng, dim, 1).column(0).clone_owned();
        let n = v.norm();
        if n > 1e-3 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

/// R ≤ S in the Löwner order for projectors ⟺ S·R = R.
fn loewner_leq(r: &Projector, s: &Projector) -> bool {
    max_norm(&(s.matrix() * r.matrix() - r.matrix())) <= 1e-8
}

#[test]
fn lattice_laws_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A77);
    for case in 0..1000 {
        let dim = 2 + case % 7; // dims 2–8
        let p = random_projector_any_rank(&mut rng, dim);
        let q = random_projector_any_rank(&mut rng, dim);
        let m = p.meet(&q).unwrap();

        assert!(loewner_leq(&m, &p), "meet ≤ P failed (case {case})");
        assert!(loewner_leq(&m, &q), "meet ≤ Q failed (case {case})");
        for _ in 0..8 {
            let psi = random_unit_vector(&mut rng, dim);
            let state = QuantumState::pure(psi).unwrap();
            let em = expectation_projector(&state, &m).unwrap();
            let ep = expectation_projector(&state, &p).unwrap();
            assert!(em <= ep + 1e-8, "sampled Löwner violation (case {case})");
        }

        // greatest lower bound: meet itself, and any sub-projector of it,
        // stays below the meet
        assert!(loewner_leq(&m, &m));
        if m.rank() > 0 {
            let first = m.range_basis().column(0).clone_owned();
            let sub = Projector::from_span(&[first]).unwrap();
            assert!(loewner_leq(&sub, &p) && loewner_leq(&sub, &q));
            assert!(loewner_leq(&sub, &m), "sub-projector escapes meet (case {case})");
        }
    }
}

#[test]
fn rank_bound_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2B88);
    for case in 0..1000 {
        let dim = 2 + case % 7;
        let p = random_projector_any_rank(&mut rng, dim);
        let q = random_projector_any_rank(&mut rng, dim);
        let m = p.meet(&q).unwrap();
        let lower = (p.rank() + q.rank()).saturating_sub(dim);
        assert!(m.rank() >= lower, "rank bound failed: dim {dim} ranks {} {} meet {}",
            p.rank(), q.rank(), m.rank());
    }
}

#[test]
fn orthogonal_projectors_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3C99);
    for case in 0..300 {
        let dim = 2 + case % 7;
        let u = random_unitary(&mut rng, dim);
        let split = rng.gen_range(1..dim);
        let p_cols: Vec<CVector> = (0..split).map(|j| u.column(j).clone_owned()).collect();
        let q_count = rng.gen_range(1..=dim - split);
        let q_cols: Vec<CVector> =
            (split..split + q_count).map(|j| u.column(j).clone_owned()).collect();
        let p = Projector::from_span(&p_cols).unwrap();
        let q = Projector::from_span(&q_cols).unwrap();
        assert!(max_norm(&(p.matrix() * q.matrix())) <= 1e-10, "PQ ≠ 0 (case {case})");
        assert!(commutes(p.matrix(), q.matrix()).unwrap());
    }
}

#[test]
fn de_morgan_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4DAA);
    for case in 0..500 {
        let dim = 2 + case % 7;
        let p = random_projector_any_rank(&mut rng, dim);
        let q = random_projector_any_rank(&mut rng, dim);
        let join = p.join(&q).unwrap();
        let via_meet = p
            .orthocomplement()
            .meet(&q.orthocomplement())
            .unwrap()
            .orthocomplement();
        assert!(
            max_norm(&(join.matrix() - via_meet.matrix())) <= 1e-10,
            "join ≠ (P⊥ ∧ Q⊥)⊥ (case {case})"
        );
        let meet = p.meet(&q).unwrap();
        let via_join = p
            .orthocomplement()
            .join(&q.orthocomplement())
            .unwrap()
            .orthocomplement();
        assert!(
            max_norm(&(meet.matrix() - via_join.matrix())) <= 1e-10,
            "meet ≠ (P⊥ ∨ Q⊥)⊥ (case {case})"
        );
    }
}

#[test]
fn expectation_linear_and_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EBB);
    for case in 0..300 {
        let dim = 2 + case % 5;
        let m = random_hermitian(&mut rng, dim);
        let rho1 = QuantumState::pure(random_unit_vector(&mut rng, dim)).unwrap();
        let rho2 = QuantumState::pure(random_unit_vector(&mut rng, dim)).unwrap();
        let t: f64 = rng.gen_range(0.0..1.0);
        let mix = QuantumState::mixed(
            rho1.density() * Complex64::new(t, 0.0)
                + rho2.density() * Complex64::new(1.0 - t, 0.0),
        )
        .unwrap();
        let lhs = expectation(&mix, &m).unwrap();
        let rhs = t * expectation(&rho1, &m).unwrap() + (1.0 - t) * expectation(&rho2, &m).unwrap();
        assert!((lhs - rhs).abs() <= 1e-10, "linearity failed (case {case})");

        // monotone in the Löwner order: meet(P,Q) ≤ P
        let p = random_projector_any_rank(&mut rng, dim);
        let q = random_projector_any_rank(&mut rng, dim);
        let meet = p.meet(&q).unwrap();
        let em = expectation_projector(&mix, &meet).unwrap();
        let ep = expectation_projector(&mix, &p).unwrap();
        assert!(em <= ep + 1e-10, "monotonicity failed (case {case})");
    }
}

#[test]
fn spectral_measure_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6FCC);
    for case in 0..300 {
        let dim = 2 + case % 5;
        let a = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();

        // partition of ℝ into one value set per spectral point sums to I
        let mut sum = complement_lab::hilbert::CMatrix::zeros(dim, dim);
        for pt in a.spectrum() {
            sum += a.spectral_projector(&ValueSet::point(pt.eigenvalue)).matrix();
        }
        let identity = Projector::identity(dim);
        assert!(
            max_norm(&(&sum - identity.matrix())) <= 1e-10,
            "partition does not sum to identity (case {case})"
        );

        // disjoint additivity on a random split of the spectrum
        if a.spectrum().len() >= 2 {
            let split = rng.gen_range(1..a.spectrum().len());
            let xs: Vec<f64> = a.spectrum()[..split].iter().map(|p| p.eigenvalue).collect();
            let ys: Vec<f64> = a.spectrum()[split..].iter().map(|p| p.eigenvalue).collect();
            let px = a.spectral_projector(&ValueSet::points(&xs));
            let py = a.spectral_projector(&ValueSet::points(&ys));
            let all: Vec<f64> = xs.iter().chain(ys.iter()).copied().collect();
            let pxy = a.spectral_projector(&ValueSet::points(&all));
            assert!(
                max_norm(&(px.matrix() + py.matrix() - pxy.matrix())) <= 1e-10,
                "disjoint additivity failed (case {case})"
            );
        }
    }
}

#[test]
fn common_eigenvectors_contrapositive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7FDD);
    for case in 0..300 {
        let dim = 2 + case % 5;
        let a = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();
        let b = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();
        if a.is_degenerate_identity() || b.is_degenerate_identity() {
            continue;
        }
        let shared = complement_lab::spectral::common_eigenvectors(&a, &b).unwrap();
        if shared.is_empty() {
            assert!(
                !commutes(a.matrix(), b.matrix()).unwrap(),
                "no common eigenvector but commuting (case {case})"
            );
        }
    }
}

#[test]
fn decompose_reconstruct_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8AEE);
    for case in 0..200 {
        let dim = 2 + case % 5;
        let a = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();
        let again = Observable::decompose(&a.reconstruct(), None).unwrap();
        assert_eq!(a.spectrum().len(), again.spectrum().len(), "cluster count changed");
        for (x, y) in a.spectrum().iter().zip(again.spectrum()) {
            assert!((x.eigenvalue - y.eigenvalue).abs() <= 1e-8, "eigenvalue moved");
            assert!(
                max_norm(&(x.projector.matrix() - y.projector.matrix())) <= 1e-8,
                "eigenprojector moved (case {case})"
            );
        }
    }
}

#[test]
fn witnesses_reverify() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9BFF);
    let mut nonzero_seen = 0;
    let mut prob_one_seen = 0;
    for case in 0..150 {
        let dim = 2 + case % 5;
        let a = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();
        let b = Observable::decompose(&random_hermitian_degenerate(&mut rng, dim), None).unwrap();
        if a.is_degenerate_identity() || b.is_degenerate_identity() {
            continue;
        }

        let verdict = classify(&a, &b).unwrap();
        for w in &verdict.witnesses {
            if w.kind != WitnessKind::NonzeroMeet {
                continue;
            }
            let pa = a.spectral_projector(&w.value_set_a);
            let pb = b.spectral_projector(&w.value_set_b);
            if let Evidence::Vector(psi) = &w.evidence {
                assert!((pa.matrix() * psi - psi).norm() <= 1e-8, "P·w ≠ w (case {case})");
                assert!((pb.matrix() * psi - psi).norm() <= 1e-8, "Q·w ≠ w (case {case})");
                nonzero_seen += 1;
            }
        }

        let prob = probabilistic_check(&a, &b).unwrap();
        for w in &prob.witnesses {
            if w.kind != WitnessKind::ProbabilityOne {
                continue;
            }
            let pa = a.spectral_projector(&w.value_set_a);
            let pb = b.spectral_projector(&w.value_set_b);
            if let Evidence::Vector(psi) = &w.evidence {
                let state = QuantumState::pure(psi.clone()).unwrap();
                assert!(expectation_projector(&state, &pa).unwrap() >= 1.0 - 1e-8);
                assert!(expectation_projector(&state, &pb).unwrap() >= 1.0 - 1e-8);
                prob_one_seen += 1;
            }
        }
    }
    assert!(nonzero_seen > 20, "too few NonzeroMeet witnesses exercised");
    assert!(prob_one_seen > 20, "too few ProbabilityOne witnesses exercised");
}

#[test]
fn complementary_implies_totally_noncommuting() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACE0);
    for case in 0..300 {
        let dim = 2 + case % 5;
        let a = Observable::decompose(&random_hermitian(&mut rng, dim), None).unwrap();
        let b = Observable::decompose(&random_hermitian(&mut rng, dim), None).unwrap();
        let verdict = complementary_observables(&a, &b).unwrap();
        if verdict.relation == Relation::Complementary {
            assert_eq!(verdict.commutation, Commutation::TotallyNoncommuting, "case {case}");
        }
    }
}

#[test]
fn cross_module_visibility_consistency() {
    let counts: Vec<(f64, f64)> = (0..64)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / 64.0;
            let scene = build_rangwala_roy(phi);
            let probs = scene.detection_probabilities().unwrap();
            // conditional on the transmitted branch (p_r = 1/2)
            (phi, probs["D_t1"] / (probs["D_t1"] + probs["D_t2"]))
        })
        .collect();
    let v_counts = visibility_from_counts(&counts).unwrap();
    let s = TwoPathState::from_alpha2(0.5, 1.0).unwrap();
    let v_duality = duality_measures(&s).visibility;
    assert!(
        (v_counts - v_duality).abs() <= 1e-6,
        "fringe visibility {v_counts} vs duality V {v_duality}"
    );
}

#[test]
fn pure_state_duality_identity_grid() {
    for i in 0..=1000 {
        let alpha2 = i as f64 / 1000.0;
        let r = duality_measures(&TwoPathState::from_alpha2(alpha2, 1.0).unwrap());
        assert!((r.sum_of_squares - 1.0).abs() <= 1e-12, "alpha2 = {alpha2}");
    }
}

#[test]
fn mixed_state_inequality_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBDF1);
    for _ in 0..500 {
        let alpha2: f64 = rng.gen_range(0.0..=1.0);
        let mu: f64 = rng.gen_range(0.0..=1.0);
        let r = duality_measures(&TwoPathState::from_alpha2(alpha2, mu).unwrap());
        assert!(r.sum_of_squares <= 1.0 + 1e-10);
        let expected = r.predictability * r.predictability
            + mu * mu * (1.0 - r.predictability * r.predictability);
        assert!((r.sum_of_squares - expected).abs() <= 1e-10);

        // V nondecreasing in μ at fixed amplitudes; P independent of μ
        let mu2 = rng.gen_range(mu..=1.0);
        let r2 = duality_measures(&TwoPathState::from_alpha2(alpha2, mu2).unwrap());
        assert!(r2.visibility >= r.visibility - 1e-12);
        assert!((r2.predictability - r.predictability).abs() <= 1e-12);
    }
}

#[test]
fn biprism_expectation_containment() {
    for dim_r in 1..=4 {
        for dim_t in 1..=4 {
            for wave_rank in 1..=dim_t {
                for &alpha2 in &[0.0f64, 0.25, 0.5, 0.9, 1.0] {
                    let alpha = Complex64::new(alpha2.sqrt(), 0.0);
                    let beta = Complex64::new((1.0 - alpha2).sqrt(), 0.0);
                    let scene = build_biprism(dim_r, dim_t, wave_rank, alpha, beta).unwrap();
                    let report = normalization_vs_duality(&scene).unwrap();
                    assert!(report.wave_expectation <= report.transmit_expectation + 1e-12);
                    assert!((report.normalization - 1.0).abs() <= 1e-10);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn duality_measures_bounded(alpha2 in 0.0f64..=1.0, mu in 0.0f64..=1.0) {
        let r = duality_measures(&TwoPathState::from_alpha2(alpha2, mu).unwrap());
        prop_assert!((0.0..=1.0).contains(&r.predictability));
        prop_assert!((0.0..=1.0+ 1e-12).contains(&r.visibility));
        prop_assert!(r.sum_of_squares <= 1.0 + 1e-10);
    }

    #[test]
    fn cosine_counts_visibility(a in 0.1f64..1.0, frac in 0.0f64..=1.0) {
        // counts a + b·cosφ with 0 ≤ b ≤ a have V = b/a
        let b = a * frac;
        let counts: Vec<(f64, f64)> = (0..64)
            .map(|i| {
                let phi = 2.0 * PI * i as f64 / 64.0;
                (phi, a + b * phi.cos())
            })
            .collect();
        let v = visibility_from_counts(&counts).unwrap();
        prop_assert!((v - frac).abs() <= 1e-9);
    }

    #[test]
    fn value_set_display_parse_round_trip(
        lo in -5.0f64..5.0,
        width in 0.1f64..5.0,
        pt in -5.0f64..5.0,
    ) {
        let hi = lo + width;
        prop_assume!(pt < lo || pt >= hi);
        let vs = ValueSet::new(vec![(lo, hi)], vec![pt]).unwrap();
        let back = ValueSet::parse(&vs.to_string()).unwrap();
        for &x in &[lo, hi, pt, lo - 1.0, (lo + hi) / 2.0] {
            prop_assert_eq!(vs.contains(x), back.contains(x));
        }
    }
}
