//! Multi-controlled gate lists: polarity standardization, embedding into
//! target vectors and spectral-sparsity detection.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::transform::{weight, FrequencyVector, TargetVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Fires on `|1⟩`.
    Pos,
    /// Fires on `|0⟩`.
    Neg,
}

/// A gate `U(μ)` fired when every listed control matches its polarity.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlledGateSpec<G> {
    pub controls: Vec<(usize, Polarity)>,
    pub mu: G,
}

impl<G: GroupElement> ControlledGateSpec<G> {
    pub fn new(controls: Vec<(usize, Polarity)>, mu: G) -> Self {
        ControlledGateSpec { controls, mu }
    }

    /// All-positive gate on the qubits set in `mask`.
    pub fn positive(mask: u64, mu: G) -> Self {
        let controls = (0..64)
            .filter(|q| mask >> q & 1 == 1)
            .map(|q| (q, Polarity::Pos))
            .collect();
        ControlledGateSpec { controls, mu }
    }

    fn mask(&self, pol: Polarity) -> u64 {
        self.controls
            .iter()
            .filter(|(_, p)| *p == pol)
            .fold(0, |m, (q, _)| m | 1u64 << q)
    }

    pub fn pos_mask(&self) -> u64 {
        self.mask(Polarity::Pos)
    }

    pub fn neg_mask(&self) -> u64 {
        self.mask(Polarity::Neg)
    }

    /// Whether the gate fires on control state `c`.
    pub fn fires_on(&self, c: u64) -> bool {
        c & self.pos_mask() == self.pos_mask() && c & self.neg_mask() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KGateList<G> {
    n: usize,
    gates: Vec<ControlledGateSpec<G>>,
}

impl<G: GroupElement> KGateList<G> {
    pub fn new(n: usize, gates: Vec<ControlledGateSpec<G>>) -> Result<Self> {
        if n == 0 || n >= 64 {
            return Err(Error::Parameter(format!("control count {n} out of range")));
        }
        for (i, g) in gates.iter().enumerate() {
            let mut seen = 0u64;
            for &(q, _) in &g.controls {
                if q >= n {
                    return Err(Error::Parameter(format!(
                        "gate {i}: control qubit {q} outside 0..{n}"
                    )));
                }
                if seen >> q & 1 == 1 {
                    return Err(Error::Parameter(format!(
                        "gate {i}: control qubit {q} listed twice"
                    )));
                }
                seen |= 1 << q;
            }
        }
        Ok(KGateList { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[ControlledGateSpec<G>] {
        &self.gates
    }

    /// Largest control count over the list.
    pub fn k(&self) -> usize {
        self.gates.iter().map(|g| g.controls.len()).max().unwrap_or(0)
    }

    pub fn is_standard(&self) -> bool {
        self.gates.iter().all(|g| g.neg_mask() == 0)
    }

    /// Removes negative controls: `C_q̄[U(μ)] = U(μ) · C_q[U(−μ)]`, applied
    /// to every negative control in turn.
    pub fn standardize(&self) -> Self {
        let mut out = Vec::new();
        for g in &self.gates {
            let pos = g.pos_mask();
            let neg = g.neg_mask();
            // subsets S of the negative controls carry (−1)^|S| μ
            let mut sub = 0u64;
            loop {
                let mu = if weight(sub).is_multiple_of(2) {
                    g.mu.clone()
                } else {
                    g.mu.negated()
                };
                out.push(ControlledGateSpec::positive(pos | sub, mu));
                if sub == neg {
                    break;
                }
                sub = (sub.wrapping_sub(neg)) & neg;
            }
        }
        KGateList {
            n: self.n,
            gates: out,
        }
    }

    /// Merges gates with identical control sets by adding their elements and
    /// drops gates whose merged element is zero.
    pub fn merge_duplicates(&self, tol: f64) -> Self {
        let mut merged: BTreeMap<(u64, u64), G> = BTreeMap::new();
        let mut order = Vec::new();
        for g in &self.gates {
            let key = (g.pos_mask(), g.neg_mask());
            match merged.get_mut(&key) {
                Some(acc) => *acc = acc.plus(&g.mu),
                None => {
                    merged.insert(key, g.mu.clone());
                    order.push(key);
                }
            }
        }
        let gates = order
            .into_iter()
            .filter_map(|key| {
                let mu = merged.remove(&key)?;
                if mu.is_zero_within(tol) {
                    return None;
                }
                let mut controls: Vec<_> = (0..self.n)
                    .filter(|q| key.0 >> q & 1 == 1)
                    .map(|q| (q, Polarity::Pos))
                    .chain(
                        (0..self.n)
                            .filter(|q| key.1 >> q & 1 == 1)
                            .map(|q| (q, Polarity::Neg)),
                    )
                    .collect();
                controls.sort_unstable();
                Some(ControlledGateSpec { controls, mu })
            })
            .collect();
        KGateList { n: self.n, gates }
    }

    /// `χ_c = Σ_i μ_i [gate i fires on c]`; `zero` fixes the element shape
    /// for empty lists.
    pub fn to_target_vector(&self, zero: &G) -> TargetVector<G> {
        let len = 1usize << self.n;
        let mut chi = vec![zero.zero_like(); len];
        for g in &self.gates {
            let pos = g.pos_mask();
            let neg = g.neg_mask();
            let free = !(pos | neg) & ((len as u64) - 1);
            // walk only the states where the gate fires
            let mut sub = 0u64;
            loop {
                let c = (pos | sub) as usize;
                chi[c] = chi[c].plus(&g.mu);
                if sub == free {
                    break;
                }
                sub = (sub.wrapping_sub(free)) & free;
            }
        }
        TargetVector::new(self.n, chi).expect("length is 2^n by construction")
    }
}

/// Support of `Y` and its largest Hamming weight (0 when empty).
pub fn spectral_support<G: GroupElement>(y: &FrequencyVector<G>, tol: f64) -> (Vec<u64>, usize) {
    let support: Vec<u64> = y
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero_within(tol))
        .map(|(w, _)| w as u64)
        .collect();
    let max = support.iter().map(|&w| weight(w)).max().unwrap_or(0);
    (support, max)
}
