use proptest::prelude::*;

use ucgsynth::circuit::{CircuitIR, Clifford, Gate, QubitLayout};
use ucgsynth::f2::{eliminate, transition, LinearState};
use ucgsynth::gray::{gp_ancilla, gp_k_ancilla, gp_k_star, gp_star, TraversalPlan};
use ucgsynth::group::{Dyadic, GroupElement, PhaseVector};
use ucgsynth::instances::*;
use ucgsynth::kgate::spectral_support;
use ucgsynth::partition::{greedy, matroid_partition, partition_constant_weight, partition_nonzero};
use ucgsynth::realization::Realization;
use ucgsynth::synth::depth::{expected_angles, rotation_angles};
use ucgsynth::synth::{synth_diag_depth, synth_kdiag_depth, synth_rucg, SizeOptions};
use ucgsynth::transform::{
    frequency_vector, reconstruct_entry, weight, wht_forward, wht_inverse, TargetVector,
};
use ucgsynth::verify::{equiv_global_phase, naive_wht, reference_unitary, simulate};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn add(a: &TargetVector<Dyadic>, b: &TargetVector<Dyadic>) -> TargetVector<Dyadic> {
    let v = a.entries().iter().zip(b.entries()).map(|(x, y)| x.plus(y)).collect();
    TargetVector::new(a.n(), v).unwrap()
}

/// Runs the plan's CNOTs classically on basis state `c` (ancilla at 0)
/// and checks every activated qubit holds `c·ω`.
fn basis_sound(plan: &TraversalPlan, c: u64) -> bool {
    let mut bits: Vec<bool> = (0..plan.width()).map(|q| q < plan.n && c >> q & 1 == 1).collect();
    for s in &plan.steps {
        for &(ctl, t) in &s.cnots {
            bits[t] ^= bits[ctl];
        }
        for &(q, w) in &s.activations {
            if bits[q] != ((c & w).count_ones() % 2 == 1) {
                return false;
            }
        }
    }
    (0..plan.width()).all(|q| bits[q] == (q < plan.n && c >> q & 1 == 1))
}

fn check_plan(plan: &TraversalPlan, n: usize, k: usize) -> Result<(), TestCaseError> {
    prop_assert!(plan.is_closed());
    prop_assert!(plan.activations_sound());
    let mut seen = plan.visited();
    seen.sort_unstable();
    let expected: Vec<u64> = (1..1u64 << n).filter(|&w| weight(w) <= k).collect();
    prop_assert_eq!(seen, expected);
    for c in 0..1u64 << n {
        prop_assert!(basis_sound(plan, c));
    }
    Ok(())
}

fn gate_strategy(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    prop_oneof![
        (q.clone(), 1..width).prop_map(move |(c, d)| Gate::cnot(c, (c + d) % width)),
        (q.clone(), -3.0..3.0f64).prop_map(|(q, a)| Gate::rz(q, a)),
        (q.clone(), -3.0..3.0f64).prop_map(|(q, a)| Gate::phase(q, a)),
        q.clone().prop_map(|q| Gate::clifford(q, Clifford::H)),
        q.prop_map(|q| Gate::clifford(q, Clifford::S)),
    ]
}

fn circuit(gates: Vec<Gate>, width: usize) -> CircuitIR {
    let mut c = CircuitIR::new(QubitLayout::new(width, 0, 0));
    c.extend(gates);
    c
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn wht_round_trip_is_exact(n in 1usize..=8, seed: u64, exp in 0u32..6) {
        let chi = random_dyadics(&mut rng(seed), n, exp);
        prop_assert_eq!(wht_inverse(&wht_forward(&chi)), chi);
    }

    #[test]
    fn wht_round_trip_float(n in 1usize..=8, seed: u64) {
        let chi = random_angles(&mut rng(seed), n);
        let back = wht_inverse(&wht_forward(&chi));
        for (a, b) in back.entries().iter().zip(chi.entries()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn reconstruction_is_exact(n in 1usize..=7, seed: u64) {
        let chi = random_dyadics(&mut rng(seed), n, 3);
        let y = frequency_vector(&chi);
        for c in 0..1u64 << n {
            prop_assert_eq!(&reconstruct_entry(&y, c).unwrap(), &chi.entries()[c as usize]);
        }
    }

    #[test]
    fn butterfly_matches_double_loop(n in 1usize..=8, seed: u64) {
        let chi = random_dyadics(&mut rng(seed), n, 2);
        prop_assert_eq!(naive_wht(&chi).unwrap(), wht_forward(&chi));
    }

    #[test]
    fn transform_is_additive(n in 1usize..=7, s1: u64, s2: u64) {
        let a = random_dyadics(&mut rng(s1), n, 4);
        let b = random_dyadics(&mut rng(s2), n, 1);
        let lhs = frequency_vector(&add(&a, &b));
        let (fa, fb) = (frequency_vector(&a), frequency_vector(&b));
        for (i, v) in lhs.entries().iter().enumerate() {
            prop_assert_eq!(v, &fa.entries()[i].plus(&fb.entries()[i]));
        }
    }

    #[test]
    fn halving_is_a_square_root(num in -1000i128..1000, exp in 0u32..20) {
        let d = Dyadic::new(num, exp);
        let h = d.halved();
        prop_assert_eq!(h.plus(&h), d);
    }

    #[test]
    fn standardize_preserves_the_operator(n in 1usize..=7, k in 1usize..=4, seed: u64) {
        let k = k.min(n);
        let list = random_kgate_list(&mut rng(seed), n, k, 12, |r| random_dyadic(r, 3));
        let std = list.standardize();
        prop_assert!(std.is_standard());
        prop_assert!(std.k() <= k);
        prop_assert_eq!(std.to_target_vector(&Dyadic::ZERO), list.to_target_vector(&Dyadic::ZERO));
    }

    #[test]
    fn k_lists_have_k_sparse_spectra(n in 1usize..=8, k in 1usize..=4, seed: u64) {
        let k = k.min(n);
        let list = random_kgate_list(&mut rng(seed), n, k, 10, |r| random_dyadic(r, 2));
        let (support, found) = spectral_support(&frequency_vector(&list.to_target_vector(&Dyadic::ZERO)), 0.0);
        prop_assert!(found <= k);
        prop_assert!(support.iter().all(|&w| weight(w) <= k));
    }

    #[test]
    fn linear_state_algebra(width in 1usize..=8, ops in prop::collection::vec((0usize..8, 1usize..8), 0..40)) {
        let mut s = LinearState::identity(width);
        let cnots: Vec<(usize, usize)> = ops
            .iter()
            .filter(|_| width > 1)
            .map(|&(c, d)| (c % width, (c % width + d % (width - 1).max(1) + 1) % width))
            .filter(|(c, t)| c != t)
            .collect();
        s.apply_all(&cnots);
        prop_assert!(s.compose(&s.inverse()).is_identity());
        let mut back = s.clone();
        back.apply_all(&eliminate(&s));
        prop_assert!(back.is_identity());
        let mut t = LinearState::identity(width);
        t.apply_all(&cnots.iter().rev().copied().collect::<Vec<_>>());
        let mut moved = s.clone();
        moved.apply_all(&transition(&s, &t));
        prop_assert_eq!(moved, t);
    }

    #[test]
    fn matroid_partition_is_valid_and_no_worse(vs in prop::collection::btree_set(1u64..64, 1..40)) {
        let vs: Vec<u64> = vs.into_iter().collect();
        let m = matroid_partition(&vs);
        prop_assert!(m.len() <= greedy(&vs).len());
        prop_assert!(m.iter().all(|g| ucgsynth::f2::is_independent(g)));
        let mut all: Vec<u64> = m.into_iter().flatten().collect();
        all.sort_unstable();
        prop_assert_eq!(all, vs);
    }

    #[test]
    fn simulation_is_multiplicative(
        a in prop::collection::vec(gate_strategy(3), 0..12),
        b in prop::collection::vec(gate_strategy(3), 0..12),
    ) {
        let ua = simulate(&circuit(a.clone(), 3)).unwrap();
        let ub = simulate(&circuit(b.clone(), 3)).unwrap();
        let both = simulate(&circuit(a.into_iter().chain(b).collect(), 3)).unwrap();
        let product = ub.mul(&ua).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                prop_assert!((both.get(r, c) - product.get(r, c)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn depth_is_subadditive_under_concatenation(
        a in prop::collection::vec(gate_strategy(4), 0..20),
        b in prop::collection::vec(gate_strategy(4), 0..20),
    ) {
        let da = circuit(a.clone(), 4).depth_schedule().unwrap();
        let db = circuit(b.clone(), 4).depth_schedule().unwrap();
        let d = circuit(a.into_iter().chain(b).collect(), 4).depth_schedule().unwrap();
        prop_assert!(d.depth_total <= da.depth_total + db.depth_total);
        prop_assert!(d.depth_total >= da.depth_total.max(db.depth_total));
        prop_assert_eq!(d.count_cnot, da.count_cnot + db.count_cnot);
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn synthesis_is_deterministic(n in 1usize..=7, seed: u64) {
        let chi = random_angles(&mut rng(seed), n);
        prop_assert_eq!(synth_diag_depth(&chi).unwrap(), synth_diag_depth(&chi).unwrap());
        let opts = SizeOptions::default();
        prop_assert_eq!(
            synth_rucg(&chi, &Realization::Ry, opts).unwrap(),
            synth_rucg(&chi, &Realization::Ry, opts).unwrap()
        );
    }

    #[test]
    fn depth_rotations_are_the_spectrum(n in 1usize..=8, k in 1usize..=4, seed: u64) {
        let chi = random_angles(&mut rng(seed), n);
        let y: Vec<f64> = frequency_vector(&chi).into_entries();
        let mut got = rotation_angles(&synth_diag_depth(&chi).unwrap());
        let mut want = expected_angles(&y, n, 1e-12);
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        prop_assert_eq!(got, want);

        let k = k.min(n);
        let sparse = random_sparse_diagonal(&mut rng(seed), n, k);
        let y: Vec<f64> = frequency_vector(&sparse).into_entries();
        let mut got = rotation_angles(&synth_kdiag_depth(&sparse, k).unwrap());
        let mut want = expected_angles(&y, k, 1e-12);
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn references_are_unitary(n in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let chi = random_angles(&mut r, n);
        for real in [Realization::Phase, Realization::Rz, Realization::Rx, Realization::Ry] {
            prop_assert!(reference_unitary(&chi, &real).unwrap().is_unitary(1e-12));
        }
        let diag = random_phase_vectors(&mut r, n, 2);
        let u = reference_unitary(&diag, &Realization::Diag { m: 2 }).unwrap();
        prop_assert!(u.is_unitary(1e-12));
    }

    #[test]
    fn global_phase_is_ignored(n in 1usize..=4, seed: u64, phase in -3.0..3.0f64) {
        let chi = random_angles(&mut rng(seed), n);
        let shifted: Vec<f64> = chi.entries().iter().map(|a| a + phase).collect();
        let shifted = TargetVector::new(n, shifted).unwrap();
        let a = reference_unitary(&chi, &Realization::Phase).unwrap();
        let b = reference_unitary(&shifted, &Realization::Phase).unwrap();
        prop_assert!(equiv_global_phase(&a, &b, 1e-12).unwrap().0);
        let mut bumped = chi.clone().into_entries();
        bumped[0] += 0.5;
        let c = reference_unitary(&TargetVector::new(n, bumped).unwrap(), &Realization::Phase).unwrap();
        prop_assert!(!equiv_global_phase(&a, &c, 1e-6).unwrap().0);
    }
}

#[test]
fn plans_cover_each_state_once() {
    for n in 1..=8 {
        check_plan(&gp_star(n).unwrap(), n, n).unwrap();
        check_plan(&gp_ancilla(n).unwrap(), n, n).unwrap();
        for k in 1..=n.min(4) {
            check_plan(&gp_k_star(n, k).unwrap(), n, k).unwrap();
            check_plan(&gp_k_ancilla(n, k).unwrap(), n, k).unwrap();
        }
    }
}

#[test]
fn partitions_are_valid() {
    for n in 1..=9 {
        for k in 1..=n {
            assert!(partition_constant_weight(n, k).is_valid(), "n={n} k={k}");
        }
    }
    for n in 1..=8 {
        assert!(partition_nonzero(n).is_valid());
    }
}

#[test]
fn phase_vectors_halve_componentwise() {
    let v = PhaseVector(vec![1.0, -2.0]);
    assert_eq!(v.halved().plus(&v.halved()), v);
}
