//! Gate-count-optimal assembly: one traversal plan, one controlled gate per
//! visited state, one unconditional gate for `Y_0`.

use crate::circuit::{CircuitIR, Gate, Param, QubitLayout};
use crate::error::{Error, Result};
use crate::gray::{gp_k_star, gp_star, TraversalPlan};
use crate::group::{GroupElement, DEFAULT_TOL};
use crate::kgate::{spectral_support, KGateList};
use crate::realization::Realization;
use crate::transform::{frequency_vector, FrequencyVector, TargetVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizeOptions {
    /// Drop gates whose element is zero within `tol`.
    pub skip_identities: bool,
    pub tol: f64,
}

impl Default for SizeOptions {
    fn default() -> Self {
        SizeOptions {
            skip_identities: true,
            tol: DEFAULT_TOL,
        }
    }
}

impl SizeOptions {
    pub fn keep_identities() -> Self {
        SizeOptions {
            skip_identities: false,
            ..Self::default()
        }
    }
}

/// Checks that `param` has the shape `realization` expects.
pub(crate) fn check_param(realization: &Realization, param: &Param) -> Result<()> {
    let ok = match (realization, param) {
        (Realization::Diag { m }, Param::Vector(v)) => v.len() == 1 << m,
        (Realization::Diag { .. }, Param::Angle(_)) => false,
        (Realization::Opaque { .. }, _) => true,
        (_, p) => p.as_angle().is_some(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedRealization(format!(
            "{realization} cannot carry parameter {param:?}"
        )))
    }
}

/// Stitches `plan` with controlled gates carrying `Y_ω`.
///
/// For the scalar phase family the controlled gate degenerates to a phase
/// rotation on the activation qubit and `U(Y_0)` to a global phase.
pub fn assemble<G: GroupElement>(
    y: &FrequencyVector<G>,
    plan: &TraversalPlan,
    realization: &Realization,
    opts: SizeOptions,
) -> Result<CircuitIR> {
    let n = y.n();
    if plan.n != n {
        return Err(Error::Parameter(format!(
            "plan is over {} controls, vector over {n}",
            plan.n
        )));
    }
    check_param(realization, &y.y0().to_param())?;
    let m = realization.target_qubits();
    let layout = QubitLayout::new(n, m, usize::from(plan.uses_ancilla));
    let map = |q: usize| if q < n { q } else { layout.ancilla(0) };
    let targets = layout.targets();
    let label = realization.label().to_string();
    let scalar = matches!(realization, Realization::Phase);
    let keep = |v: &G| !(opts.skip_identities && v.is_zero_within(opts.tol));

    let mut circuit = CircuitIR::new(layout);
    if keep(y.y0()) {
        circuit.push(match (scalar, y.y0().to_param()) {
            (true, Param::Angle(a)) => Gate::GlobalPhase { angle: a },
            (_, param) => Gate::U {
                targets: targets.clone(),
                param,
                label: label.clone(),
            },
        });
    }
    for step in &plan.steps {
        circuit.extend(step.cnots.iter().map(|&(c, t)| Gate::cnot(map(c), map(t))));
        for &(q, omega) in &step.activations {
            let v = y.get(omega);
            if !keep(v) {
                continue;
            }
            circuit.push(match (scalar, v.to_param()) {
                (true, Param::Angle(a)) => Gate::phase(map(q), a),
                (_, param) => Gate::Cu {
                    control: map(q),
                    targets: targets.clone(),
                    param,
                    label: label.clone(),
                },
            });
        }
    }
    Ok(circuit)
}

/// Ancilla-free size-optimal rUCG: `2^n − 2` CNOTs, at most `2^n − 1`
/// controlled gates and one unconditional gate.
pub fn synth_rucg<G: GroupElement>(
    chi: &TargetVector<G>,
    realization: &Realization,
    opts: SizeOptions,
) -> Result<CircuitIR> {
    if chi.n() == 0 {
        return Err(Error::Parameter("at least one control qubit required".into()));
    }
    let y = frequency_vector(chi);
    assemble(&y, &gp_star(chi.n())?, realization, opts)
}

/// Size-optimal k-rUCG over the weight-`≤ k` Gray path.
///
/// `zero` fixes the element shape when the list is empty.
pub fn synth_krucg<G: GroupElement>(
    list: &KGateList<G>,
    zero: &G,
    realization: &Realization,
    opts: SizeOptions,
) -> Result<CircuitIR> {
    let std = list.standardize().merge_duplicates(0.0);
    sparse(&frequency_vector(&std.to_target_vector(zero)), list.n(), std.k(), realization, opts)
}

/// Size-optimal rUCG for a target vector whose spectrum has weight at
/// most `k`; `k = n` is the dense case.
pub fn synth_rucg_sparse<G: GroupElement>(
    chi: &TargetVector<G>,
    k: usize,
    realization: &Realization,
    opts: SizeOptions,
) -> Result<CircuitIR> {
    if chi.n() == 0 || k > chi.n() {
        return Err(Error::Parameter(format!("need k ≤ n, got k = {k}, n = {}", chi.n())));
    }
    sparse(&frequency_vector(chi), chi.n(), k, realization, opts)
}

fn sparse<G: GroupElement>(
    y: &FrequencyVector<G>,
    n: usize,
    k: usize,
    realization: &Realization,
    opts: SizeOptions,
) -> Result<CircuitIR> {
    let (_, found) = spectral_support(y, opts.tol);
    if found > k {
        return Err(Error::SupportExceeded { found, declared: k });
    }
    if k == 0 {
        let empty = TraversalPlan {
            n,
            uses_ancilla: false,
            steps: Vec::new(),
        };
        return assemble(y, &empty, realization, opts);
    }
    assemble(y, &gp_k_star(n, k)?, realization, opts)
}
