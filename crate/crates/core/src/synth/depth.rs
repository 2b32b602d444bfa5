//! Depth-optimized divide-and-conquer synthesis of (k-sparse) diagonal
//! unitaries and of Rz/Rx/Ry-family rUCGs through a one-qubit lift.
//!
//! An `n`-qubit register splits into a prefix (the low `⌈n/2⌉` qubits) and
//! a suffix (the high `⌊n/2⌋`). Every state with a nonzero suffix part is
//! reached by placing an independent group of suffix patterns on the
//! suffix qubits (generate stage) and sweeping all prefix patterns into
//! each of them in parallel (Gray-path stage). A reset stage restores the
//! suffix, and the prefix-only states recurse.
//!
//! Suffix qubit `p` of a group walks the prefix patterns with bit `b`
//! relabeled to `(b + p) mod r_c`. At every step the pipelines then use
//! distinct control qubits, so each step costs one CNOT layer per flipped
//! bit plus one rotation layer. Pipelines whose qubits free up early are
//! given a head start along a translated walk so that they stay in step.

use crate::circuit::{CircuitIR, Clifford, Gate, QubitLayout};
use crate::error::{Error, Result};
use crate::f2::{eliminate, is_independent, transition, LinearState, XorBasis};
use crate::gray::{gp_k_star, weight_range_walk};
use crate::group::{GroupElement, PhaseVector, DEFAULT_TOL};
use crate::kgate::spectral_support;
use crate::partition::{partition_constant_weight, partition_nonzero};
use crate::realization::Realization;
use crate::transform::{frequency_vector, weight, FrequencyVector, TargetVector};

/// CNOTs placing a group on distinct qubits, as local `(control, target)`
/// pairs, together with the new state and the `(qubit, ω)` assignment.
pub type GenerateOutput = (Vec<(usize, usize)>, LinearState, Vec<(usize, u64)>);

/// Places every member of an independent `group` on its own qubit.
///
/// Members already held by some qubit stay put; the rest prefer a qubit
/// whose unit bit they contain. Unassigned qubits keep their row when it
/// stays independent and otherwise take the first fitting unit vector.
pub fn generate_stage(group: &[u64], state: &LinearState) -> Result<GenerateOutput> {
    let r = state.n();
    if group.len() > r
        || !is_independent(group)
        || group.iter().any(|&w| w == 0 || w >> r != 0)
    {
        return Err(Error::DependentGroup);
    }
    let mut slot: Vec<Option<u64>> = vec![None; r];
    let mut pending = Vec::new();
    for &w in group {
        match (0..r).find(|&q| slot[q].is_none() && state.row(q) == w) {
            Some(q) => slot[q] = Some(w),
            None => pending.push(w),
        }
    }
    for w in pending {
        let q = (0..r)
            .filter(|&q| slot[q].is_none())
            .min_by_key(|&q| (w >> q & 1 == 0, q))
            .expect("group no larger than register");
        slot[q] = Some(w);
    }
    let mut basis = XorBasis::new();
    for &w in group {
        basis.insert(w);
    }
    let mut rows = vec![0u64; r];
    for q in 0..r {
        rows[q] = match slot[q] {
            Some(w) => w,
            None => {
                let keep = state.row(q);
                let pick = if basis.is_independent_of(keep) {
                    keep
                } else {
                    (0..r)
                        .map(|j| 1u64 << j)
                        .find(|&e| basis.is_independent_of(e))
                        .expect("basis not yet full")
                };
                basis.insert(pick);
                pick
            }
        };
    }
    let target = LinearState::from_rows(rows)?;
    let ops = transition(state, &target);
    let assignment = (0..r).filter_map(|q| slot[q].map(|w| (q, w))).collect();
    Ok((ops, target, assignment))
}

/// CNOTs (in order) returning `state` to the identity.
pub fn reset_stage(state: &LinearState) -> Vec<(usize, usize)> {
    eliminate(state)
}

fn relabel(s: u64, shift: usize, width: usize) -> u64 {
    if s == 0 {
        return 0;
    }
    (0..width)
        .filter(|b| s >> b & 1 == 1)
        .fold(0, |acc, b| acc | 1 << ((b + shift) % width))
}

/// Gray-path stage over `prefix` qubits for suffix qubits already holding
/// their patterns.
///
/// `suffix` lists `(qubit, ω_suffix)` with `ω_suffix` already positioned
/// in the global state index; prefix bit `b` is global bit `b`. Every
/// prefix pattern in `walk` (which starts at 0) is combined with every
/// suffix pattern exactly once, and a phase rotation `Y_ω` is applied on
/// the suffix qubit while it holds `ω`. Rotations with `|Y_ω| ≤ tol` are
/// skipped.
pub fn gray_path_stage(
    prefix: &[usize],
    suffix: &[(usize, u64)],
    walk: &[u64],
    y: &[f64],
    tol: f64,
) -> Vec<Gate> {
    let none = vec![0; suffix.len()];
    staged(prefix, suffix, walk, y, tol, &vec![false; suffix.len()], &none)
}

/// As [`gray_path_stage`] with per-pipeline timing.
///
/// Pipelines flagged in `late` apply their pattern-0 rotation after the
/// closing CNOTs instead of first. Pipeline `p` walks `walk` XOR-translated
/// back by `lead[p]` positions (`walk[i − lead] ⊕ walk[−lead]`), which for a
/// cyclic walk is again a walk from 0 over every pattern; a pipeline that
/// starts `lead` steps early then flips the same bit as the others at
/// every shared step.
fn staged(
    prefix: &[usize],
    suffix: &[(usize, u64)],
    walk: &[u64],
    y: &[f64],
    tol: f64,
    late: &[bool],
    lead: &[usize],
) -> Vec<Gate> {
    let r_c = prefix.len();
    debug_assert!(suffix.len() <= r_c || walk.len() <= 1);
    let len = walk.len();
    let pattern = |p: usize, i: usize| {
        if i >= len {
            return 0;
        }
        let d = (len - lead[p] % len) % len;
        walk[(i + d) % len] ^ walk[d]
    };
    // emit in shared-time order so ASAP never queues an early step behind
    // a later one on the same control
    let top = lead.iter().max().copied().unwrap_or(0);
    let local = |p: usize, g: usize| (g + lead[p]).checked_sub(top).filter(|&i| i <= len);
    let mut gates = Vec::new();
    for g in 0..=len + top {
        for b in 0..r_c {
            for (p, &(q, _)) in suffix.iter().enumerate() {
                let Some(i) = local(p, g) else { continue };
                let prev = if i == 0 { 0 } else { pattern(p, i - 1) };
                if (prev ^ pattern(p, i)) >> b & 1 == 1 {
                    gates.push(Gate::cnot(prefix[(b + p) % r_c], q));
                }
            }
        }
        for (p, &(q, ws)) in suffix.iter().enumerate() {
            let Some(i) = local(p, g) else { continue };
            let s = pattern(p, i);
            let skip = if i == len { !late[p] } else { s == 0 && late[p] };
            if skip {
                continue;
            }
            let a = y[(ws | relabel(s, p, r_c)) as usize];
            if a.abs() > tol {
                gates.push(Gate::phase(q, a));
            }
        }
    }
    gates
}

/// Next free ASAP layer of each qubit after `gates`.
fn frontier(gates: &[Gate], width: usize) -> Vec<usize> {
    let width = gates
        .iter()
        .flat_map(Gate::qubits)
        .map(|q| q + 1)
        .fold(width, usize::max);
    let mut f = vec![0; width];
    advance(&mut f, gates);
    f
}

/// Schedules `gates` on top of `f`; returns the rotation layers used.
fn advance(f: &mut [usize], gates: &[Gate]) -> Vec<usize> {
    let mut rot = Vec::new();
    for g in gates {
        let qs = g.qubits();
        let Some(layer) = qs.iter().map(|&q| f[q]).max() else {
            continue;
        };
        for &q in &qs {
            f[q] = layer + 1;
        }
        if matches!(g, Gate::Rot { .. }) {
            rot.push(layer);
        }
    }
    rot.sort_unstable();
    rot.dedup();
    rot
}

/// Times the pipelines of a stage that starts on top of frontier `f`.
///
/// A pipeline whose qubit frees up on the wrong layer parity rotates
/// first; earlier pipelines lead by the number of steps they gain, which
/// keeps all CNOT layers on distinct controls. The untimed stage is kept
/// when it is no worse.
fn aligned_stage(
    f: &[usize],
    prefix: &[usize],
    suffix: &[(usize, u64)],
    walk: &[u64],
    y: &[f64],
    tol: f64,
) -> Vec<Gate> {
    let cost = |gates: &[Gate]| {
        let mut g = f.to_vec();
        let rot = advance(&mut g, gates);
        (rot.len(), g.into_iter().max().unwrap_or(0))
    };
    let plain = gray_path_stage(prefix, suffix, walk, y, tol);
    let cyclic = walk.len() == 1 << prefix.len();
    if !cyclic || suffix.len() < 2 {
        return plain;
    }
    let ready: Vec<usize> = suffix.iter().map(|&(q, _)| f[q]).collect();
    let parity = ready.iter().max().copied().unwrap_or(0) % 2;
    let late: Vec<bool> = ready.iter().map(|&t| t % 2 != parity).collect();
    let first: Vec<usize> = ready
        .iter()
        .zip(&late)
        .map(|(&t, &l)| t + usize::from(!l))
        .collect();
    let last = first.iter().max().copied().unwrap_or(0);
    let lead: Vec<usize> = first.iter().map(|&t| (last - t) / 2).collect();
    let timed = staged(prefix, suffix, walk, y, tol, &late, &lead);
    if cost(&timed) <= cost(&plain) {
        timed
    } else {
        plain
    }
}

/// Recursive core over qubits `0..n`; `y` is indexed by global state and
/// `kmax` bounds the weight of the states handled (`kmax ≥ n` is dense).
fn diag_rec(gates: &mut Vec<Gate>, n: usize, y: &[f64], kmax: usize, tol: f64) {
    if n == 0 || kmax == 0 {
        return;
    }
    if n <= 2 {
        let plan = gp_k_star(n, kmax.min(n)).expect("1 ≤ k ≤ n");
        if plan.visited().iter().all(|&w| y[w as usize].abs() <= tol) {
            return;
        }
        for step in &plan.steps {
            gates.extend(step.cnots.iter().map(|&(c, t)| Gate::cnot(c, t)));
            for &(q, w) in &step.activations {
                let a = y[w as usize];
                if a.abs() > tol {
                    gates.push(Gate::phase(q, a));
                }
            }
        }
        return;
    }
    let r_c = n.div_ceil(2);
    let r_t = n - r_c;
    let prefix: Vec<usize> = (0..r_c).collect();
    let mut state = LinearState::identity(r_t);

    let run_group = |gates: &mut Vec<Gate>, state: &mut LinearState, group: &[u64], k_c: usize| {
        let walk = weight_range_walk(r_c, k_c);
        let touched = group.iter().any(|&ws| {
            walk.iter()
                .any(|&s| y[((ws << r_c) | s) as usize].abs() > tol)
        });
        if !touched {
            return;
        }
        let (ops, next, assignment) = generate_stage(group, state).expect("partition groups are independent");
        gates.extend(ops.iter().map(|&(c, t)| Gate::cnot(r_c + c, r_c + t)));
        *state = next;
        let suffix: Vec<(usize, u64)> = assignment
            .iter()
            .map(|&(q, w)| (r_c + q, w << r_c))
            .collect();
        let f = frontier(gates, n);
        gates.extend(aligned_stage(&f, &prefix, &suffix, &walk, y, tol));
    };

    if kmax >= n {
        for group in &partition_nonzero(r_t).groups {
            run_group(gates, &mut state, group, r_c);
        }
    } else {
        for k_t in 1..=kmax.min(r_t) {
            for group in &partition_constant_weight(r_t, k_t).groups {
                run_group(gates, &mut state, group, kmax - k_t);
            }
        }
    }
    gates.extend(
        reset_stage(&state)
            .into_iter()
            .map(|(c, t)| Gate::cnot(r_c + c, r_c + t)),
    );
    diag_rec(gates, r_c, y, kmax, tol);
}

fn angles<G: GroupElement>(y: &FrequencyVector<G>) -> Result<Vec<f64>> {
    y.entries()
        .iter()
        .map(|v| {
            v.to_param()
                .as_angle()
                .ok_or_else(|| Error::UnsupportedRealization("diagonal synthesis needs scalar phases".into()))
        })
        .collect()
}

fn build_diag(layout: QubitLayout, y: &[f64], kmax: usize, tol: f64) -> CircuitIR {
    let n = layout.total();
    let mut circuit = CircuitIR::new(layout);
    if y[0].abs() > tol {
        circuit.push(Gate::GlobalPhase { angle: y[0] });
    }
    diag_rec(&mut circuit.gates, n, y, kmax, tol);
    circuit
}

/// Depth-optimized `Λ(χ) = Σ_c e^{jχ_c}|c⟩⟨c|`.
pub fn synth_diag_depth<G: GroupElement>(chi: &TargetVector<G>) -> Result<CircuitIR> {
    let n = chi.n();
    if n == 0 {
        return Err(Error::Parameter("at least one qubit required".into()));
    }
    let y = angles(&frequency_vector(chi))?;
    Ok(build_diag(QubitLayout::new(n, 0, 0), &y, n, DEFAULT_TOL))
}

/// Depth-optimized diagonal whose spectrum has weight at most `k`.
pub fn synth_kdiag_depth<G: GroupElement>(chi: &TargetVector<G>, k: usize) -> Result<CircuitIR> {
    let n = chi.n();
    if n == 0 || k == 0 || k > n {
        return Err(Error::Parameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let fy = frequency_vector(chi);
    let (_, found) = spectral_support(&fy, DEFAULT_TOL);
    if found > k {
        return Err(Error::SupportExceeded { found, declared: k });
    }
    let y = angles(&fy)?;
    Ok(build_diag(QubitLayout::new(n, 0, 0), &y, k, DEFAULT_TOL))
}

/// Wraps the lifted diagonal with the fixed Clifford conjugation for
/// `rx`/`ry` on target qubit `t`.
fn conjugate(circuit: CircuitIR, realization: &Realization, t: usize) -> Result<CircuitIR> {
    let (before, after): (&[Clifford], &[Clifford]) = match realization {
        Realization::Rz => (&[], &[]),
        Realization::Rx => (&[Clifford::H], &[Clifford::H]),
        // Ry = S·H·Rz·H·S†: S† acts first
        Realization::Ry => (&[Clifford::Sdg, Clifford::H], &[Clifford::H, Clifford::S]),
        other => {
            return Err(Error::UnsupportedRealization(format!(
                "{other}: depth synthesis of rUCGs supports rz, rx and ry"
            )))
        }
    };
    let mut out = CircuitIR::new(circuit.layout);
    out.extend(before.iter().map(|&k| Gate::clifford(t, k)));
    out.extend(circuit.gates);
    out.extend(after.iter().map(|&k| Gate::clifford(t, k)));
    Ok(out)
}

/// Depth-optimized rUCG for the `rz`/`rx`/`ry` families.
///
/// `Σ_c |c⟩⟨c| ⊗ Rz(χ_c)` is the `(n+1)`-qubit diagonal with phases
/// `∓χ_c/2` on target values 0/1. With `k = Some(k)` the control spectrum
/// is `k`-sparse and the lifted one `(k+1)`-sparse.
pub fn synth_rucg_rz_depth<G: GroupElement>(
    chi: &TargetVector<G>,
    realization: &Realization,
    k: Option<usize>,
) -> Result<CircuitIR> {
    let n = chi.n();
    if n == 0 {
        return Err(Error::Parameter("at least one control qubit required".into()));
    }
    if !matches!(realization, Realization::Rz | Realization::Rx | Realization::Ry) {
        return Err(Error::UnsupportedRealization(realization.to_string()));
    }
    let half: Vec<G> = chi.entries().iter().map(|v| v.halved()).collect();
    let lifted: Vec<G> = half
        .iter()
        .map(|h| h.negated())
        .chain(half.iter().cloned())
        .collect();
    let lifted = TargetVector::new(n + 1, lifted)?;
    let fy = frequency_vector(&lifted);
    let kmax = match k {
        Some(k) => {
            let (_, found) = spectral_support(&fy, DEFAULT_TOL);
            if found > k + 1 {
                return Err(Error::SupportExceeded {
                    found: found - 1,
                    declared: k,
                });
            }
            k + 1
        }
        None => n + 1,
    };
    let y = angles(&fy)?;
    let circuit = build_diag(QubitLayout::new(n, 1, 0), &y, kmax, DEFAULT_TOL);
    conjugate(circuit, realization, n)
}

/// Depth-optimized rUCG with `m`-qubit diagonal targets, lifted to an
/// `(n+m)`-qubit diagonal with phase `v_c[t]` at index `c | t << n`.
pub fn synth_rucg_diag_depth(chi: &TargetVector<PhaseVector>) -> Result<CircuitIR> {
    let n = chi.n();
    let m = chi.entries().first().map(PhaseVector::qubits).unwrap_or(0);
    if n == 0 || chi.entries().iter().any(|v| v.0.len() != 1 << m) {
        return Err(Error::Parameter("inconsistent diagonal target sizes".into()));
    }
    let mut flat = vec![0.0; 1 << (n + m)];
    for (c, v) in chi.entries().iter().enumerate() {
        for (t, a) in v.0.iter().enumerate() {
            flat[c | t << n] = *a;
        }
    }
    let y = angles(&frequency_vector(&TargetVector::new(n + m, flat)?))?;
    Ok(build_diag(QubitLayout::new(n, m, 0), &y, n + m, DEFAULT_TOL))
}

/// Angles of all rotation gates in emission order.
pub fn rotation_angles(circuit: &CircuitIR) -> Vec<f64> {
    circuit
        .gates
        .iter()
        .filter_map(|g| match g {
            Gate::Rot { angle, .. } => Some(*angle),
            _ => None,
        })
        .collect()
}

/// Expected multiset of rotation angles: nonzero `Y_ω` with `1 ≤ wt(ω) ≤ k`.
pub fn expected_angles(y: &[f64], k: usize, tol: f64) -> Vec<f64> {
    y.iter()
        .enumerate()
        .skip(1)
        .filter(|&(w, a)| weight(w as u64) <= k && a.abs() > tol)
        .map(|(_, a)| *a)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_identity_group() {
        let s = LinearState::identity(3);
        let (ops, next, assign) = generate_stage(&[1, 2, 4], &s).unwrap();
        assert!(ops.is_empty());
        assert!(next.is_identity());
        assert_eq!(assign, vec![(0, 1), (1, 2), (2, 4)]);
    }

    #[test]
    fn generate_parity_pair() {
        let s = LinearState::identity(2);
        let (ops, next, assign) = generate_stage(&[0b11], &s).unwrap();
        assert_eq!(ops.len(), 1);
        let (q, w) = assign[0];
        assert_eq!((next.row(q), w), (0b11, 0b11));
    }

    #[test]
    fn generate_rejects_dependent() {
        let s = LinearState::identity(2);
        assert!(matches!(
            generate_stage(&[1, 2, 3], &s),
            Err(Error::DependentGroup)
        ));
    }

    #[test]
    fn stage_without_prefix_is_one_layer() {
        let y = vec![0.0, 0.0, 0.3, 0.0, 0.5, 0.0, 0.0, 0.0];
        let g = gray_path_stage(&[], &[(1, 2), (2, 4)], &[0], &y, 0.0);
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|g| matches!(g, Gate::Rot { .. })));
    }

    #[test]
    fn stage_full_two_bit_prefix() {
        let y = vec![1.0; 8];
        let walk = weight_range_walk(2, 2);
        let g = gray_path_stage(&[0, 1], &[(2, 4)], &walk, &y, 0.0);
        let cx = g.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count();
        assert_eq!((cx, g.len() - cx), (4, 4));
    }

    #[test]
    fn sparse_stage_depth_bound() {
        let y = vec![1.0; 32];
        let walk = weight_range_walk(4, 2);
        let mut c = CircuitIR::new(QubitLayout::new(5, 0, 0));
        c.extend(gray_path_stage(&[0, 1, 2, 3], &[(4, 16)], &walk, &y, 0.0));
        assert!(c.depth_schedule().unwrap().depth_total <= 33);
    }

    #[test]
    fn constant_diagonal_is_global_phase() {
        let chi = TargetVector::new(4, vec![0.3; 16]).unwrap();
        let c = synth_diag_depth(&chi).unwrap();
        assert_eq!(c.gates, vec![Gate::GlobalPhase { angle: 0.3 }]);
    }

    #[test]
    fn rejects_vector_parameters() {
        let chi = TargetVector::new(1, vec![PhaseVector(vec![0.0, 1.0]); 2]).unwrap();
        assert!(synth_diag_depth(&chi).is_err());
        assert!(synth_rucg_rz_depth(&TargetVector::new(1, vec![0.0, 1.0]).unwrap(), &Realization::Phase, None).is_err());
    }
}
