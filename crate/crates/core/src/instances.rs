//! Seeded random problem instances.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::group::{Dyadic, PhaseVector};
use crate::kgate::{ControlledGateSpec, KGateList, Polarity};
use crate::transform::TargetVector;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_angle(rng: &mut InstanceRng) -> f64 {
    rng.gen_range(-PI..PI)
}

/// Dyadic multiple of π with denominator `2^exp`, in `(−2π, 2π)`.
pub fn random_dyadic(rng: &mut InstanceRng, exp: u32) -> Dyadic {
    let span = 1i128 << (exp + 1);
    Dyadic::new(rng.gen_range(-span + 1..span), exp)
}

pub fn random_angles(rng: &mut InstanceRng, n: usize) -> TargetVector<f64> {
    let chi = (0..1usize << n).map(|_| random_angle(rng)).collect();
    TargetVector::new(n, chi).expect("length 2^n")
}

pub fn random_dyadics(rng: &mut InstanceRng, n: usize, exp: u32) -> TargetVector<Dyadic> {
    let chi = (0..1usize << n).map(|_| random_dyadic(rng, exp)).collect();
    TargetVector::new(n, chi).expect("length 2^n")
}

pub fn random_phase_vectors(rng: &mut InstanceRng, n: usize, m: usize) -> TargetVector<PhaseVector> {
    let chi = (0..1usize << n)
        .map(|_| PhaseVector((0..1usize << m).map(|_| random_angle(rng)).collect()))
        .collect();
    TargetVector::new(n, chi).expect("length 2^n")
}

/// Random controls of size at most `k` with mixed polarity.
pub fn random_controls(rng: &mut InstanceRng, n: usize, k: usize) -> Vec<(usize, Polarity)> {
    let size = rng.gen_range(0..=k.min(n));
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let mut controls: Vec<(usize, Polarity)> = qubits[..size]
        .iter()
        .map(|&q| {
            let pol = if rng.gen_bool(0.5) {
                Polarity::Pos
            } else {
                Polarity::Neg
            };
            (q, pol)
        })
        .collect();
    controls.sort_unstable();
    controls
}

/// `count` gates with at most `k` controls each, one of them using
/// exactly `k` controls so that the list's `k` is as requested.
pub fn random_kgate_list<G>(
    rng: &mut InstanceRng,
    n: usize,
    k: usize,
    count: usize,
    mut element: impl FnMut(&mut InstanceRng) -> G,
) -> KGateList<G>
where
    G: crate::group::GroupElement,
{
    let mut gates = Vec::with_capacity(count.max(1));
    for i in 0..count.max(1) {
        let mut controls = random_controls(rng, n, k);
        if i == 0 {
            while controls.len() < k.min(n) {
                controls = random_controls(rng, n, k);
            }
        }
        gates.push(ControlledGateSpec::new(controls, element(rng)));
    }
    KGateList::new(n, gates).expect("controls drawn inside 0..n")
}

/// Diagonal phases whose spectrum has weight at most `k`, built from a
/// random positive `k`-gate list.
pub fn random_sparse_diagonal(rng: &mut InstanceRng, n: usize, k: usize) -> TargetVector<f64> {
    let count = 2 * n + 4;
    random_kgate_list(rng, n, k, count, random_angle)
        .standardize()
        .to_target_vector(&0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let a = random_angles(&mut rng(7), 4);
        let b = random_angles(&mut rng(7), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn list_reaches_requested_k() {
        let mut r = rng(1);
        for k in 1..=4 {
            let l = random_kgate_list(&mut r, 6, k, 10, random_angle);
            assert_eq!(l.k(), k);
        }
    }
}
