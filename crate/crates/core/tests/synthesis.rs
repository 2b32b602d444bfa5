use ucgsynth::circuit::CircuitIR;
use ucgsynth::f2::LinearState;
use ucgsynth::instances::{random_angle, random_angles, random_kgate_list, random_phase_vectors, random_sparse_diagonal, rng};
use ucgsynth::synth::*;
use ucgsynth::verify::verify_against;
use ucgsynth::{Gate, Realization, TargetVector};

const TOL: f64 = 1e-9;

fn check<G: ucgsynth::GroupElement>(c: &CircuitIR, chi: &TargetVector<G>, r: &Realization) {
    let (ok, dev) = verify_against(c, chi, r, TOL).unwrap();
    assert!(ok, "deviation {dev:e}");
}

fn cnot_network_closed(c: &CircuitIR) -> bool {
    let mut s = LinearState::identity(c.layout.total());
    for g in &c.gates {
        if let Gate::Cnot { control, target } = g {
            s.apply_cnot(*control, *target);
        }
    }
    s.is_identity()
}

#[test]
fn size_rucg_all_realizations() {
    let mut r = rng(11);
    for n in 1..=6 {
        for real in [Realization::Phase, Realization::Rz, Realization::Rx, Realization::Ry] {
            let chi = random_angles(&mut r, n);
            for opts in [SizeOptions::default(), SizeOptions::keep_identities()] {
                let c = synth_rucg(&chi, &real, opts).unwrap();
                check(&c, &chi, &real);
            }
        }
    }
}

#[test]
fn size_rucg_diagonal_targets() {
    let mut r = rng(12);
    for n in 1..=4 {
        for m in 1..=2 {
            let chi = random_phase_vectors(&mut r, n, m);
            let real = Realization::Diag { m };
            check(&synth_rucg(&chi, &real, SizeOptions::default()).unwrap(), &chi, &real);
            check(&synth_rucg_diag_depth(&chi).unwrap(), &chi, &real);
        }
    }
}

#[test]
fn size_krucg_matches_gate_product() {
    let mut r = rng(13);
    for n in 1..=6 {
        for k in 1..=n.min(4) {
            for real in [Realization::Rz, Realization::Ry, Realization::Phase] {
                let list = random_kgate_list(&mut r, n, k, 6, random_angle);
                let chi = list.to_target_vector(&0.0);
                let c = synth_krucg(&list, &0.0, &real, SizeOptions::default()).unwrap();
                check(&c, &chi, &real);
                let b = synth_brute_force_list(&list, &real).unwrap();
                check(&b, &chi, &real);
            }
        }
    }
}

#[test]
fn brute_force_per_state() {
    let mut r = rng(14);
    for n in 1..=5 {
        for real in [Realization::Phase, Realization::Rx] {
            let chi = random_angles(&mut r, n);
            check(&synth_brute_force(&chi, &real).unwrap(), &chi, &real);
        }
    }
}

#[test]
fn depth_diag_correct() {
    let mut r = rng(15);
    for n in 1..=10 {
        let chi = random_angles(&mut r, n);
        let c = synth_diag_depth(&chi).unwrap();
        assert!(cnot_network_closed(&c));
        check(&c, &chi, &Realization::Phase);
    }
}

#[test]
fn depth_kdiag_correct() {
    let mut r = rng(16);
    for n in 1..=10 {
        for k in 1..=n.min(4) {
            let chi = random_sparse_diagonal(&mut r, n, k);
            let c = synth_kdiag_depth(&chi, k).unwrap();
            assert!(cnot_network_closed(&c));
            check(&c, &chi, &Realization::Phase);
        }
    }
}

#[test]
fn depth_rucg_lift_correct() {
    let mut r = rng(17);
    for n in 1..=6 {
        for real in [Realization::Rz, Realization::Rx, Realization::Ry] {
            let chi = random_angles(&mut r, n);
            check(&synth_rucg_rz_depth(&chi, &real, None).unwrap(), &chi, &real);
        }
        for k in 1..=n.min(3) {
            let list = random_kgate_list(&mut r, n, k, 5, random_angle);
            let chi = list.to_target_vector(&0.0);
            let c = synth_rucg_rz_depth(&chi, &Realization::Rz, Some(k)).unwrap();
            check(&c, &chi, &Realization::Rz);
        }
    }
}

#[test]
fn qaoa_and_baseline_correct() {
    for n in 2..=10 {
        let chi = qaoa_target_vector(n, 0.37).unwrap();
        check(&synth_qaoa(n, 0.37).unwrap(), &chi, &Realization::Phase);
        check(&baseline_rzz_ladder(n, 0.37).unwrap(), &chi, &Realization::Phase);
        check(&synth_kdiag_depth(&chi, 2).unwrap(), &chi, &Realization::Phase);
    }
}

#[test]
fn depth_report() {
    let mut r = rng(18);
    for n in 3..=11 {
        let chi = random_angles(&mut r, n);
        let d = synth_diag_depth(&chi).unwrap().depth_schedule().unwrap();
        let s = synth_rucg(&chi, &Realization::Phase, SizeOptions::default()).unwrap().depth_schedule().unwrap();
        println!("n={n} depth {} vs size {} rot layers {} ratio {:.2}", d.depth_total, s.depth_total, d.layers_rot, d.layers_rot as f64 * n as f64 / (1u64 << n) as f64);
    }
}
