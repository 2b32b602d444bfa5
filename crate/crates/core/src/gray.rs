//! CNOT-only closed walks over control states.
//!
//! A plan is a list of steps; after a step's CNOTs, each activation qubit
//! `q` holds the parity `c·ω` of its declared state `ω`. The last step
//! carries no activations and returns every qubit to its initial value.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::LinearState;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraversalStep {
    pub cnots: Vec<(usize, usize)>,
    pub activations: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalPlan {
    /// Number of control qubits; the ancilla, when used, is qubit `n`.
    pub n: usize,
    pub uses_ancilla: bool,
    pub steps: Vec<TraversalStep>,
}

/// Binary reflected Gray code `g_i = i ⊕ (i >> 1)` on `n` bits.
pub fn reflected_gray(n: usize) -> Vec<u64> {
    (0..1u64 << n).map(|i| i ^ (i >> 1)).collect()
}

/// Revolving-door ordering of the weight-`k` subsets of `n` bits.
///
/// `R(n,k) = R(n−1,k) ++ reverse(R(n−1,k−1)) ⊕ e_{n−1}`. Consecutive
/// entries, including last → first, differ in exactly two bits.
pub fn revolving_door(n: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    if k == n {
        return vec![(1u64 << n) - 1];
    }
    if k > n {
        return Vec::new();
    }
    let top = 1u64 << (n - 1);
    let mut out = revolving_door(n - 1, k);
    out.extend(revolving_door(n - 1, k - 1).into_iter().rev().map(|v| v | top));
    out
}

/// Closed-walk visiting order of all states with weight `0..=kmax`,
/// starting at 0 (closure back to 0 is implicit).
///
/// With `kmax ≥ n` this is the reflected Gray code. Otherwise weight
/// classes are visited in increasing order, each as a rotation of its
/// revolving-door cycle entered at the numerically smallest one-bit
/// extension of the previous class's last state.
pub fn weight_range_walk(n: usize, kmax: usize) -> Vec<u64> {
    if kmax >= n {
        return reflected_gray(n);
    }
    let mut walk = vec![0u64];
    for w in 1..=kmax {
        let class = revolving_door(n, w);
        let last = *walk.last().expect("walk starts at 0");
        let entry = (0..n)
            .map(|b| last | 1 << b)
            .filter(|&v| v != last)
            .min()
            .expect("class below n has a free bit");
        let at = class
            .iter()
            .position(|&v| v == entry)
            .expect("entry has weight w");
        walk.extend(class[at..].iter().chain(&class[..at]));
    }
    walk
}

fn flips(from: u64, to: u64) -> impl Iterator<Item = usize> {
    let d = from ^ to;
    (0..64).filter(move |b| d >> b & 1 == 1)
}

/// Steps that drive `carrier` (initially holding `base` on top of its own
/// unit row, or 0 for an ancilla) through `base ⊕ s` for `s` in `walk`,
/// using the lower qubits as CNOT sources. Returns the steps and the
/// closure CNOTs back to `s = 0`.
fn carrier_steps(
    walk: &[u64],
    carrier: usize,
    base: u64,
    skip_first: bool,
) -> (Vec<TraversalStep>, Vec<(usize, usize)>) {
    let mut steps = Vec::with_capacity(walk.len());
    let mut prev = 0u64;
    for (i, &s) in walk.iter().enumerate() {
        if i == 0 && skip_first {
            continue;
        }
        steps.push(TraversalStep {
            cnots: flips(prev, s).map(|b| (b, carrier)).collect(),
            activations: vec![(carrier, base | s)],
        });
        prev = s;
    }
    let closure = flips(prev, 0).map(|b| (b, carrier)).collect();
    (steps, closure)
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if n == 0 || n >= 63 {
        return Err(Error::Parameter(format!("n = {n} out of range")));
    }
    if k < 1 || k > n {
        return Err(Error::Parameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// `GP(n)`: reflected Gray code accumulated into ancilla `n`; `2^n` CNOTs.
pub fn gp_ancilla(n: usize) -> Result<TraversalPlan> {
    gp_k_ancilla(n, n)
}

/// `GP(n,k)`: every state of weight `1..=k`, accumulated into ancilla `n`.
pub fn gp_k_ancilla(n: usize, k: usize) -> Result<TraversalPlan> {
    check_range(n, k)?;
    let walk = weight_range_walk(n, k);
    let (mut steps, closure) = carrier_steps(&walk, n, 0, true);
    steps.push(TraversalStep {
        cnots: closure,
        activations: Vec::new(),
    });
    Ok(TraversalPlan {
        n,
        uses_ancilla: true,
        steps,
    })
}

/// `GP*(n)`: ancilla-free, `2^n − 2` CNOTs.
pub fn gp_star(n: usize) -> Result<TraversalPlan> {
    gp_k_star(n, n)
}

/// `GP*(n,k)`: `GP*(n−1,k)` on the low qubits, then qubit `n−1` carries
/// `e_{n−1} ⊕ s` for every low state `s` of weight `0..k`.
pub fn gp_k_star(n: usize, k: usize) -> Result<TraversalPlan> {
    check_range(n, k)?;
    let mut steps = Vec::new();
    build_star(n, k, &mut steps);
    Ok(TraversalPlan {
        n,
        uses_ancilla: false,
        steps,
    })
}

fn build_star(n: usize, k: usize, steps: &mut Vec<TraversalStep>) {
    let carrier = n - 1;
    let top = 1u64 << carrier;
    let mut pending = Vec::new();
    if n > 1 {
        build_star(n - 1, k.min(n - 1), steps);
        // fold the sub-plan's closure into the first carrier step
        pending = steps.pop().map(|s| s.cnots).unwrap_or_default();
    }
    let walk = weight_range_walk(carrier, k - 1);
    let (carrier_part, closure) = carrier_steps(&walk, carrier, top, false);
    let mut carrier_part = carrier_part.into_iter();
    let mut first = carrier_part.next().expect("walk starts at 0");
    pending.append(&mut first.cnots);
    first.cnots = pending;
    steps.push(first);
    steps.extend(carrier_part);
    steps.push(TraversalStep {
        cnots: closure,
        activations: Vec::new(),
    });
}

#[derive(Serialize)]
struct JsonStep {
    cnots: Vec<[usize; 2]>,
    act: Vec<(usize, String)>,
}

#[derive(Serialize)]
struct JsonPlan {
    n: usize,
    uses_ancilla: bool,
    steps: Vec<JsonStep>,
}

impl TraversalPlan {
    /// Qubits touched by the plan.
    pub fn width(&self) -> usize {
        self.n + usize::from(self.uses_ancilla)
    }

    pub fn cnot_count(&self) -> usize {
        self.steps.iter().map(|s| s.cnots.len()).sum()
    }

    /// Activated states in visiting order.
    pub fn visited(&self) -> Vec<u64> {
        self.steps
            .iter()
            .flat_map(|s| s.activations.iter().map(|&(_, w)| w))
            .collect()
    }

    /// Whether the composed CNOT network is the identity map.
    pub fn is_closed(&self) -> bool {
        let mut state = LinearState::identity(self.width());
        for s in &self.steps {
            state.apply_all(&s.cnots);
        }
        state.is_identity()
    }

    /// Checks every activation against the tracked linear state; the
    /// ancilla starts in `|0⟩` so its own variable is ignored.
    pub fn activations_sound(&self) -> bool {
        let mask = (1u64 << self.n) - 1;
        let mut state = LinearState::identity(self.width());
        for s in &self.steps {
            state.apply_all(&s.cnots);
            if !s
                .activations
                .iter()
                .all(|&(q, w)| q < self.width() && state.row(q) & mask == w)
            {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        let steps = self
            .steps
            .iter()
            .map(|s| JsonStep {
                cnots: s.cnots.iter().map(|&(c, t)| [c, t]).collect(),
                act: s
                    .activations
                    .iter()
                    .map(|&(q, w)| (q, format!("{w:0width$b}", width = self.n)))
                    .collect(),
            })
            .collect();
        serde_json::to_string(&JsonPlan {
            n: self.n,
            uses_ancilla: self.uses_ancilla,
            steps,
        })
        .expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflected_code_n2() {
        let g = reflected_gray(2);
        assert_eq!(g, vec![0, 1, 3, 2]);
        let plan = gp_ancilla(2).unwrap();
        let sources: Vec<usize> = plan.steps.iter().flat_map(|s| &s.cnots).map(|c| c.0).collect();
        assert_eq!(sources, vec![0, 1, 0, 1]);
    }

    #[test]
    fn gp_ancilla_counts() {
        let p = gp_ancilla(3).unwrap();
        assert_eq!(p.cnot_count(), 8);
        let mut v = p.visited();
        v.sort_unstable();
        assert_eq!(v, (1..8).collect::<Vec<u64>>());
        let p1 = gp_ancilla(1).unwrap();
        assert_eq!((p1.cnot_count(), p1.visited()), (2, vec![1]));
    }

    #[test]
    fn gp_star_small() {
        let p = gp_star(1).unwrap();
        assert_eq!(p.cnot_count(), 0);
        assert_eq!(p.steps[0].activations, vec![(0, 1)]);
        assert_eq!(gp_star(2).unwrap().cnot_count(), 2);
        let p3 = gp_star(3).unwrap();
        assert_eq!((p3.cnot_count(), p3.visited().len()), (6, 7));
        assert!(p3.is_closed() && p3.activations_sound());
    }

    #[test]
    fn revolving_door_is_cyclic() {
        for n in 1..=10 {
            for k in 1..=n {
                let r = revolving_door(n, k);
                assert_eq!(r.len(), crate::partition::binomial(n, k));
                for i in 0..r.len() {
                    let d = (r[i] ^ r[(i + 1) % r.len()]).count_ones();
                    assert!(d <= 2, "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn sparse_examples() {
        let p = gp_k_ancilla(4, 2).unwrap();
        assert_eq!(p.visited().len(), 10);
        assert!(p.cnot_count() <= 22);
        let p = gp_k_ancilla(4, 1).unwrap();
        assert_eq!(p.cnot_count(), 8);
        let p = gp_k_star(2, 1).unwrap();
        assert_eq!(p.visited(), vec![1, 2]);
        assert_eq!(gp_k_star(3, 3).unwrap(), gp_star(3).unwrap());
        assert!(gp_k_star(3, 0).is_err());
        assert!(gp_k_ancilla(3, 4).is_err());
    }

    #[test]
    fn json_uses_bit_strings() {
        let j = gp_star(2).unwrap().to_json();
        assert!(j.contains("[0,\"01\"]"));
        assert!(j.contains("\"cnots\":[[0,1]]"));
    }
}
