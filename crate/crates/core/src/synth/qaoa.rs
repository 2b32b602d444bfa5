//! The QAOA phase separator `Π_{i<j} e^{jγ(−1)^{c_i ⊕ c_j}}` on the
//! complete graph.

use crate::circuit::{CircuitIR, Gate, QubitLayout};
use crate::error::{Error, Result};
use crate::group::DEFAULT_TOL;
use crate::kgate::spectral_support;
use crate::transform::{frequency_vector, TargetVector};

/// `χ_c = γ Σ_{i<j} (−1)^{c_i ⊕ c_j}`.
pub fn qaoa_target_vector(n: usize, gamma: f64) -> Result<TargetVector<f64>> {
    if !(2..=30).contains(&n) {
        return Err(Error::Parameter(format!("QAOA needs 2 ≤ n ≤ 30, got {n}")));
    }
    let chi = (0..1u64 << n)
        .map(|c| {
            // pairs with equal bits minus pairs with different bits
            let ones = c.count_ones() as i64;
            let zeros = n as i64 - ones;
            let pairs = (n * (n - 1) / 2) as i64;
            let differ = ones * zeros;
            gamma * (pairs - 2 * differ) as f64
        })
        .collect();
    TargetVector::new(n, chi)
}

/// Circle-method round robin: `n − 1` rounds of disjoint pairs for even
/// `n`, `n` rounds for odd `n`. Pairs are `(low, high)`.
pub fn round_robin(n: usize) -> Vec<Vec<(usize, usize)>> {
    let players = n + n % 2;
    let ring = players - 1;
    (0..ring)
        .map(|r| {
            let mut pairs = vec![(r, ring)];
            for i in 1..players / 2 {
                pairs.push(((r + i) % ring, (r + ring - i) % ring));
            }
            pairs
                .into_iter()
                .filter(|&(a, b)| a < n && b < n)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect()
        })
        .collect()
}

/// Depth-optimized phase separator.
///
/// Every weight-2 state `e_i ⊕ e_j` is produced on qubit `j` by one CNOT,
/// rotated, and undone; round-robin rounds keep each round three layers
/// deep, for total depth `3(n−1)` (even `n`) or `3n` (odd `n`).
pub fn synth_qaoa(n: usize, gamma: f64) -> Result<CircuitIR> {
    let chi = qaoa_target_vector(n, gamma)?;
    let y = frequency_vector(&chi);
    let (_, k) = spectral_support(&y, DEFAULT_TOL);
    if k > 2 {
        return Err(Error::SupportExceeded { found: k, declared: 2 });
    }
    let y = y.entries();
    let mut circuit = CircuitIR::new(QubitLayout::new(n, 0, 0));
    if y[0].abs() > DEFAULT_TOL {
        circuit.push(Gate::GlobalPhase { angle: y[0] });
    }
    for q in 0..n {
        let a = y[1 << q];
        if a.abs() > DEFAULT_TOL {
            circuit.push(Gate::phase(q, a));
        }
    }
    for round in round_robin(n) {
        for (i, j) in round {
            let a = y[(1 << i) | (1 << j)];
            if a.abs() > DEFAULT_TOL {
                circuit.push(Gate::cnot(i, j));
                circuit.push(Gate::phase(j, a));
                circuit.push(Gate::cnot(i, j));
            }
        }
    }
    Ok(circuit)
}

/// Reference ladder: `CNOT·Rz(−2γ)·CNOT` for every pair in lexicographic
/// order, scheduled as soon as possible.
pub fn baseline_rzz_ladder(n: usize, gamma: f64) -> Result<CircuitIR> {
    if n < 2 {
        return Err(Error::Parameter(format!("QAOA needs n ≥ 2, got {n}")));
    }
    let mut circuit = CircuitIR::new(QubitLayout::new(n, 0, 0));
    for i in 0..n {
        for j in i + 1..n {
            circuit.push(Gate::cnot(i, j));
            circuit.push(Gate::rz(j, -2.0 * gamma));
            circuit.push(Gate::cnot(i, j));
        }
    }
    Ok(circuit)
}
