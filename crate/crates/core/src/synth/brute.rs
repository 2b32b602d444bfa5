//! Textbook baseline: every multi-controlled gate decomposed on its own
//! with a Toffoli ladder into `k − 1` ancillae.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{CircuitIR, Clifford, Gate, Param, QubitLayout};
use crate::error::{Error, Result};
use crate::group::{GroupElement, DEFAULT_TOL};
use crate::kgate::{KGateList, Polarity};
use crate::realization::Realization;
use crate::synth::size::check_param;
use crate::transform::TargetVector;

/// Toffoli as 6 CNOTs, 7 T/T† and 2 H.
pub fn toffoli(a: usize, b: usize, t: usize) -> Vec<Gate> {
    let t_gate = |q| Gate::phase(q, FRAC_PI_4);
    let tdg = |q| Gate::phase(q, -FRAC_PI_4);
    vec![
        Gate::clifford(t, Clifford::H),
        Gate::cnot(b, t),
        tdg(t),
        Gate::cnot(a, t),
        t_gate(t),
        Gate::cnot(b, t),
        tdg(t),
        Gate::cnot(a, t),
        t_gate(b),
        t_gate(t),
        Gate::clifford(t, Clifford::H),
        Gate::cnot(a, b),
        t_gate(a),
        tdg(b),
        Gate::cnot(a, b),
    ]
}

struct Emitter<'a> {
    layout: QubitLayout,
    realization: &'a Realization,
    gates: Vec<Gate>,
}

impl Emitter<'_> {
    fn target_gate(&self, control: Option<usize>, param: Param) -> Gate {
        let targets = self.layout.targets();
        match (control, self.realization, param) {
            (None, Realization::Phase, Param::Angle(a)) => Gate::GlobalPhase { angle: a },
            (Some(c), Realization::Phase, Param::Angle(a)) => Gate::phase(c, a),
            (None, r, param) => Gate::U {
                targets,
                param,
                label: r.label().to_string(),
            },
            (Some(c), r, param) => Gate::Cu {
                control: c,
                targets,
                param,
                label: r.label().to_string(),
            },
        }
    }

    /// One gate fired on the given controls.
    fn controlled(&mut self, controls: &[(usize, Polarity)], param: Param) {
        let flips: Vec<Gate> = controls
            .iter()
            .filter(|(_, p)| *p == Polarity::Neg)
            .map(|&(q, _)| Gate::clifford(q, Clifford::X))
            .collect();
        self.gates.extend(flips.iter().cloned());
        match controls {
            [] => {
                let g = self.target_gate(None, param);
                self.gates.push(g);
            }
            [(q, _)] => {
                let g = self.target_gate(Some(*q), param);
                self.gates.push(g);
            }
            [(q0, _), rest @ ..] => {
                let mut ladder = Vec::new();
                let mut acc = *q0;
                for (i, &(q, _)) in rest.iter().enumerate() {
                    let anc = self.layout.ancilla(i);
                    ladder.extend(toffoli(acc, q, anc));
                    acc = anc;
                }
                self.gates.extend(ladder.iter().cloned());
                let g = self.target_gate(Some(acc), param);
                self.gates.push(g);
                // a Toffoli is its own inverse; undo in reverse order
                let chunks: Vec<&[Gate]> = ladder.chunks(15).collect();
                for chunk in chunks.into_iter().rev() {
                    self.gates.extend(chunk.iter().cloned());
                }
            }
        }
        self.gates.extend(flips);
    }
}

/// One multi-controlled gate per nonzero control state.
pub fn synth_brute_force<G: GroupElement>(
    chi: &TargetVector<G>,
    realization: &Realization,
) -> Result<CircuitIR> {
    let n = chi.n();
    if n == 0 {
        return Err(Error::Parameter("at least one control qubit required".into()));
    }
    let layout = QubitLayout::new(n, realization.target_qubits(), n - 1);
    let mut e = Emitter {
        layout,
        realization,
        gates: Vec::new(),
    };
    for (c, v) in chi.entries().iter().enumerate() {
        if v.is_zero_within(DEFAULT_TOL) {
            continue;
        }
        let param = v.to_param();
        check_param(realization, &param)?;
        let controls: Vec<(usize, Polarity)> = (0..n)
            .map(|q| {
                let pol = if c >> q & 1 == 1 {
                    Polarity::Pos
                } else {
                    Polarity::Neg
                };
                (q, pol)
            })
            .collect();
        e.controlled(&controls, param);
    }
    Ok(CircuitIR {
        layout,
        gates: e.gates,
    })
}

/// One multi-controlled gate per list entry, polarities kept.
pub fn synth_brute_force_list<G: GroupElement>(
    list: &KGateList<G>,
    realization: &Realization,
) -> Result<CircuitIR> {
    let anc = list.k().saturating_sub(1);
    let layout = QubitLayout::new(list.n(), realization.target_qubits(), anc);
    let mut e = Emitter {
        layout,
        realization,
        gates: Vec::new(),
    };
    for g in list.gates() {
        if g.mu.is_zero_within(DEFAULT_TOL) {
            continue;
        }
        let param = g.mu.to_param();
        check_param(realization, &param)?;
        let mut controls = g.controls.clone();
        controls.sort_unstable();
        e.controlled(&controls, param);
    }
    Ok(CircuitIR {
        layout,
        gates: e.gates,
    })
}
