//! Gate-level circuit IR, layered-depth accounting, JSON and QASM output.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realization::Realization;

/// Gate parameter: a scalar angle or a diagonal phase vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Angle(f64),
    Vector(Vec<f64>),
}

impl Param {
    pub fn as_angle(&self) -> Option<f64> {
        match self {
            Param::Angle(a) => Some(*a),
            Param::Vector(_) => None,
        }
    }

    fn values(&self) -> Vec<f64> {
        match self {
            Param::Angle(a) => vec![*a],
            Param::Vector(v) => v.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `Rz(θ) = diag(e^{-jθ/2}, e^{jθ/2})`.
    Z,
    /// `P(θ) = diag(1, e^{jθ})`.
    Phase,
}

/// Fixed single-qubit Cliffords used for basis changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clifford {
    H,
    S,
    Sdg,
    X,
}

impl Clifford {
    pub fn name(self) -> &'static str {
        match self {
            Clifford::H => "h",
            Clifford::S => "s",
            Clifford::Sdg => "sdg",
            Clifford::X => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Cnot {
        control: usize,
        target: usize,
    },
    Rot {
        qubit: usize,
        angle: f64,
        axis: Axis,
    },
    Clifford {
        qubit: usize,
        kind: Clifford,
    },
    /// Single-controlled target operator; `label` names its realization.
    Cu {
        control: usize,
        targets: Vec<usize>,
        param: Param,
        label: String,
    },
    /// Unconditional target operator.
    U {
        targets: Vec<usize>,
        param: Param,
        label: String,
    },
    GlobalPhase {
        angle: f64,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn rz(qubit: usize, angle: f64) -> Self {
        Gate::Rot {
            qubit,
            angle,
            axis: Axis::Z,
        }
    }

    pub fn phase(qubit: usize, angle: f64) -> Self {
        Gate::Rot {
            qubit,
            angle,
            axis: Axis::Phase,
        }
    }

    pub fn clifford(qubit: usize, kind: Clifford) -> Self {
        Gate::Clifford { qubit, kind }
    }

    /// Qubits the gate acts on, control first for `Cu`.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Rot { qubit, .. } | Gate::Clifford { qubit, .. } => vec![*qubit],
            Gate::Cu {
                control, targets, ..
            } => std::iter::once(*control).chain(targets.iter().copied()).collect(),
            Gate::U { targets, .. } => targets.clone(),
            Gate::GlobalPhase { .. } => Vec::new(),
        }
    }

    pub fn realization(&self) -> Option<Realization> {
        match self {
            Gate::Cu { targets, label, .. } | Gate::U { targets, label, .. } => {
                Some(Realization::from_label(label, targets.len()))
            }
            _ => None,
        }
    }
}

/// Register sizes; qubits are numbered controls, then targets, then ancillae.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitLayout {
    #[serde(rename = "n")]
    pub n_controls: usize,
    #[serde(rename = "m")]
    pub m_targets: usize,
    #[serde(rename = "anc", default)]
    pub n_ancillae: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Control,
    Target,
    Ancilla,
}

impl QubitLayout {
    pub fn new(n_controls: usize, m_targets: usize, n_ancillae: usize) -> Self {
        QubitLayout {
            n_controls,
            m_targets,
            n_ancillae,
        }
    }

    pub fn total(&self) -> usize {
        self.n_controls + self.m_targets + self.n_ancillae
    }

    pub fn control(&self, i: usize) -> usize {
        i
    }

    pub fn target(&self, i: usize) -> usize {
        self.n_controls + i
    }

    pub fn ancilla(&self, i: usize) -> usize {
        self.n_controls + self.m_targets + i
    }

    pub fn targets(&self) -> Vec<usize> {
        (0..self.m_targets).map(|i| self.target(i)).collect()
    }

    pub fn role(&self, q: usize) -> Option<Role> {
        if q < self.n_controls {
            Some(Role::Control)
        } else if q < self.n_controls + self.m_targets {
            Some(Role::Target)
        } else if q < self.total() {
            Some(Role::Ancilla)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitIR {
    pub layout: QubitLayout,
    pub gates: Vec<Gate>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub count_cnot: usize,
    pub count_rot: usize,
    pub count_cu: usize,
    pub count_u: usize,
    pub count_clifford: usize,
    pub depth_total: usize,
    pub depth_cnot: usize,
    pub layers_rot: usize,
    pub layers_cu: usize,
}

/// One invariant violation found by [`CircuitIR::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub gate: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gate {}: {}", self.gate, self.message)
    }
}

impl CircuitIR {
    pub fn new(layout: QubitLayout) -> Self {
        CircuitIR {
            layout,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        self.gates.extend(gates);
    }

    /// Appends `other`, which must share this layout.
    pub fn append(&mut self, other: &CircuitIR) -> Result<()> {
        if other.layout != self.layout {
            return Err(Error::Structure("layouts differ".into()));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Every invariant violation, tagged with its gate index.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let total = self.layout.total();
        let mut out = Vec::new();
        let mut report = |gate: usize, message: String| out.push(Diagnostic { gate, message });
        if self.layout.n_controls == 0 {
            report(0, "layout has no control qubits".into());
        }
        for (i, g) in self.gates.iter().enumerate() {
            let qubits = g.qubits();
            for &q in &qubits {
                if q >= total {
                    report(i, format!("qubit {q} out of range (layout has {total})"));
                }
            }
            let mut sorted = qubits.clone();
            sorted.sort_unstable();
            sorted.dedup();
            match g {
                Gate::Cnot { control, target } if control == target => {
                    report(i, "control equals target".into());
                }
                Gate::Cu { .. } | Gate::U { .. } if sorted.len() != qubits.len() => {
                    report(i, "repeated qubit in controlled gate".into());
                }
                _ => {}
            }
            let finite = match g {
                Gate::Rot { angle, .. } | Gate::GlobalPhase { angle } => angle.is_finite(),
                Gate::Cu { param, .. } | Gate::U { param, .. } => {
                    param.values().iter().all(|v| v.is_finite())
                }
                _ => true,
            };
            if !finite {
                report(i, "non-finite parameter".into());
            }
            if let (Some(Realization::Diag { m }), Gate::Cu { param, .. } | Gate::U { param, .. }) =
                (g.realization(), g)
            {
                let ok = matches!(param, Param::Vector(v) if v.len() == 1 << m);
                if !ok {
                    report(i, format!("diag on {m} qubits needs {} phases", 1 << m));
                }
            }
            if let (
                Some(Realization::Rz | Realization::Rx | Realization::Ry | Realization::Phase),
                Gate::Cu { param, .. } | Gate::U { param, .. },
            ) = (g.realization(), g)
            {
                if param.as_angle().is_none() {
                    report(i, "rotation expects a scalar angle".into());
                }
            }
        }
        out
    }

    /// ASAP layering under qubit-disjointness.
    pub fn depth_schedule(&self) -> Result<CostReport> {
        Ok(self.schedule()?.0)
    }

    /// Layer index (0-based) of every gate; `None` for global phases.
    pub fn layers(&self) -> Result<Vec<Option<usize>>> {
        Ok(self.schedule()?.1)
    }

    fn schedule(&self) -> Result<(CostReport, Vec<Option<usize>>)> {
        let total = self.layout.total();
        let mut frontier = vec![0usize; total];
        let mut report = CostReport::default();
        // per-layer flags: cnot, rot, cu
        let mut flags: Vec<[bool; 3]> = Vec::new();
        let mut assigned = Vec::with_capacity(self.gates.len());
        for (i, g) in self.gates.iter().enumerate() {
            let qubits = g.qubits();
            if let Some(&q) = qubits.iter().find(|&&q| q >= total) {
                return Err(Error::Structure(format!(
                    "gate {i}: qubit {q} out of range (layout has {total})"
                )));
            }
            if let Gate::Cnot { control, target } = g {
                if control == target {
                    return Err(Error::Structure(format!("gate {i}: control equals target")));
                }
            }
            let slot = match g {
                Gate::Cnot { .. } => {
                    report.count_cnot += 1;
                    Some(0)
                }
                Gate::Rot { .. } => {
                    report.count_rot += 1;
                    Some(1)
                }
                Gate::Cu { .. } => {
                    report.count_cu += 1;
                    Some(2)
                }
                Gate::U { .. } => {
                    report.count_u += 1;
                    None
                }
                Gate::Clifford { .. } => {
                    report.count_clifford += 1;
                    None
                }
                Gate::GlobalPhase { .. } => None,
            };
            if qubits.is_empty() {
                assigned.push(None);
                continue;
            }
            let layer = qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0);
            for &q in &qubits {
                frontier[q] = layer + 1;
            }
            if flags.len() <= layer {
                flags.resize(layer + 1, [false; 3]);
            }
            if let Some(s) = slot {
                flags[layer][s] = true;
            }
            assigned.push(Some(layer));
        }
        report.depth_total = flags.len();
        report.depth_cnot = flags.iter().filter(|f| f[0]).count();
        report.layers_rot = flags.iter().filter(|f| f[1]).count();
        report.layers_cu = flags.iter().filter(|f| f[2]).count();
        Ok((report, assigned))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&WireCircuit::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: WireCircuit = serde_json::from_str(text)?;
        CircuitIR::try_from(wire)
    }

    /// QASM-like listing. Diagonal and unknown controlled families are
    /// declared as opaque gates.
    pub fn to_qasm(&self) -> String {
        let mut decls: BTreeMap<String, String> = BTreeMap::new();
        let mut body = String::new();
        let fmt_params = |p: &Param| {
            p.values()
                .iter()
                .map(|v| format!("{v:.17}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let regs = |qs: &[usize]| {
            qs.iter()
                .map(|q| format!("q[{q}]"))
                .collect::<Vec<_>>()
                .join(",")
        };
        for g in &self.gates {
            let line = match g {
                Gate::Cnot { control, target } => format!("cx q[{control}],q[{target}];"),
                Gate::Rot { qubit, angle, axis } => {
                    let name = if *axis == Axis::Z { "rz" } else { "p" };
                    format!("{name}({angle:.17}) q[{qubit}];")
                }
                Gate::Clifford { qubit, kind } => format!("{} q[{qubit}];", kind.name()),
                Gate::GlobalPhase { angle } => format!("gphase({angle:.17});"),
                Gate::Cu {
                    control,
                    targets,
                    param,
                    label,
                } => {
                    let qs = g.qubits();
                    match (g.realization(), param) {
                        (Some(Realization::Rz | Realization::Rx | Realization::Ry), Param::Angle(a))
                            if targets.len() == 1 =>
                        {
                            format!("c{label}({a:.17}) {};", regs(&qs))
                        }
                        (Some(Realization::Phase), Param::Angle(a)) if targets.is_empty() => {
                            format!("p({a:.17}) q[{control}];")
                        }
                        _ => {
                            let name = opaque_name("c", label, targets.len());
                            declare(&mut decls, &name, param, qs.len());
                            format!("{name}({}) {};", fmt_params(param), regs(&qs))
                        }
                    }
                }
                Gate::U {
                    targets,
                    param,
                    label,
                } => match (g.realization(), param) {
                    (Some(Realization::Rz | Realization::Rx | Realization::Ry), Param::Angle(a))
                        if targets.len() == 1 =>
                    {
                        format!("{label}({a:.17}) {};", regs(targets))
                    }
                    (Some(Realization::Phase), Param::Angle(a)) if targets.is_empty() => {
                        format!("gphase({a:.17});")
                    }
                    _ => {
                        let name = opaque_name("", label, targets.len());
                        declare(&mut decls, &name, param, targets.len());
                        format!("{name}({}) {};", fmt_params(param), regs(targets))
                    }
                },
            };
            body.push_str(&line);
            body.push('\n');
        }
        let mut out = String::from("OPENQASM 2.0;\n");
        for d in decls.values() {
            out.push_str(d);
            out.push('\n');
        }
        let _ = writeln!(out, "qreg q[{}];", self.layout.total());
        out.push_str(&body);
        out
    }
}

fn opaque_name(prefix: &str, label: &str, m: usize) -> String {
    let clean: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{prefix}{clean}{m}")
}

fn declare(decls: &mut BTreeMap<String, String>, name: &str, param: &Param, arity: usize) {
    decls.entry(name.to_string()).or_insert_with(|| {
        let params = (0..param.values().len())
            .map(|i| format!("a{i}"))
            .collect::<Vec<_>>()
            .join(",");
        let args = (0..arity)
            .map(|i| format!("q{i}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("opaque {name}({params}) {args};")
    });
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WireGate {
    Cx {
        c: usize,
        t: usize,
    },
    Rz {
        q: usize,
        theta: f64,
    },
    Phase {
        q: usize,
        theta: f64,
    },
    Cu {
        c: usize,
        t: Vec<usize>,
        param: Param,
        label: String,
    },
    U {
        t: Vec<usize>,
        param: Param,
        label: String,
    },
    Gphase {
        theta: f64,
    },
    H {
        q: usize,
    },
    S {
        q: usize,
    },
    Sdg {
        q: usize,
    },
    X {
        q: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct WireCircuit {
    layout: QubitLayout,
    gates: Vec<WireGate>,
}

impl From<&CircuitIR> for WireCircuit {
    fn from(c: &CircuitIR) -> Self {
        let gates = c
            .gates
            .iter()
            .map(|g| match g.clone() {
                Gate::Cnot { control, target } => WireGate::Cx {
                    c: control,
                    t: target,
                },
                Gate::Rot {
                    qubit,
                    angle,
                    axis: Axis::Z,
                } => WireGate::Rz {
                    q: qubit,
                    theta: angle,
                },
                Gate::Rot {
                    qubit,
                    angle,
                    axis: Axis::Phase,
                } => WireGate::Phase {
                    q: qubit,
                    theta: angle,
                },
                Gate::Clifford { qubit: q, kind } => match kind {
                    Clifford::H => WireGate::H { q },
                    Clifford::S => WireGate::S { q },
                    Clifford::Sdg => WireGate::Sdg { q },
                    Clifford::X => WireGate::X { q },
                },
                Gate::Cu {
                    control,
                    targets,
                    param,
                    label,
                } => WireGate::Cu {
                    c: control,
                    t: targets,
                    param,
                    label,
                },
                Gate::U {
                    targets,
                    param,
                    label,
                } => WireGate::U {
                    t: targets,
                    param,
                    label,
                },
                Gate::GlobalPhase { angle } => WireGate::Gphase { theta: angle },
            })
            .collect();
        WireCircuit {
            layout: c.layout,
            gates,
        }
    }
}

impl TryFrom<WireCircuit> for CircuitIR {
    type Error = Error;

    fn try_from(w: WireCircuit) -> Result<Self> {
        let gates = w
            .gates
            .into_iter()
            .map(|g| match g {
                WireGate::Cx { c, t } => Gate::cnot(c, t),
                WireGate::Rz { q, theta } => Gate::rz(q, theta),
                WireGate::Phase { q, theta } => Gate::phase(q, theta),
                WireGate::Cu { c, t, param, label } => Gate::Cu {
                    control: c,
                    targets: t,
                    param,
                    label,
                },
                WireGate::U { t, param, label } => Gate::U {
                    targets: t,
                    param,
                    label,
                },
                WireGate::Gphase { theta } => Gate::GlobalPhase { angle: theta },
                WireGate::H { q } => Gate::clifford(q, Clifford::H),
                WireGate::S { q } => Gate::clifford(q, Clifford::S),
                WireGate::Sdg { q } => Gate::clifford(q, Clifford::Sdg),
                WireGate::X { q } => Gate::clifford(q, Clifford::X),
            })
            .collect();
        let circuit = CircuitIR {
            layout: w.layout,
            gates,
        };
        if let Some(d) = circuit.validate().first() {
            return Err(Error::Structure(d.to_string()));
        }
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(n: usize) -> QubitLayout {
        QubitLayout::new(n, 0, 0)
    }

    #[test]
    fn empty_circuit_reports_zero() {
        let c = CircuitIR::new(layout(3));
        assert_eq!(c.depth_schedule().unwrap(), CostReport::default());
    }

    #[test]
    fn disjoint_cnots_share_a_layer() {
        let mut c = CircuitIR::new(layout(4));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::cnot(2, 3));
        let r = c.depth_schedule().unwrap();
        assert_eq!((r.depth_total, r.count_cnot, r.depth_cnot), (1, 2, 1));
    }

    #[test]
    fn overlapping_gates_serialize() {
        let mut c = CircuitIR::new(layout(3));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::rz(1, 0.5));
        c.push(Gate::rz(2, 0.5));
        c.push(Gate::GlobalPhase { angle: 1.0 });
        let r = c.depth_schedule().unwrap();
        assert_eq!((r.depth_total, r.depth_cnot, r.layers_rot), (2, 1, 2));
        assert_eq!(c.layers().unwrap(), vec![Some(0), Some(1), Some(0), None]);
    }

    #[test]
    fn cu_occupies_control_and_targets() {
        let mut c = CircuitIR::new(QubitLayout::new(2, 1, 0));
        c.push(Gate::Cu {
            control: 0,
            targets: vec![2],
            param: Param::Angle(0.3),
            label: "rz".into(),
        });
        c.push(Gate::rz(1, 0.1));
        c.push(Gate::rz(2, 0.1));
        c.push(Gate::U {
            targets: vec![2],
            param: Param::Angle(0.2),
            label: "rz".into(),
        });
        let r = c.depth_schedule().unwrap();
        assert_eq!((r.depth_total, r.layers_cu, r.count_u), (3, 1, 1));
    }

    #[test]
    fn validate_flags_bad_gates() {
        let mut c = CircuitIR::new(layout(2));
        c.push(Gate::cnot(0, 0));
        c.push(Gate::rz(5, 0.0));
        let d = c.validate();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].gate, 0);
        assert!(d[0].message.contains("control equals target"));
        assert_eq!(d[1].gate, 1);
        assert!(d[1].message.contains("out of range"));
        assert!(c.depth_schedule().is_err());
    }

    #[test]
    fn validate_checks_diag_shape() {
        let mut c = CircuitIR::new(QubitLayout::new(1, 2, 0));
        c.push(Gate::Cu {
            control: 0,
            targets: vec![1, 2],
            param: Param::Vector(vec![0.0; 3]),
            label: "diag".into(),
        });
        assert_eq!(c.validate().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut c = CircuitIR::new(QubitLayout::new(2, 2, 1));
        c.extend([
            Gate::cnot(0, 1),
            Gate::rz(1, -0.25),
            Gate::phase(0, 1.5),
            Gate::clifford(2, Clifford::H),
            Gate::clifford(2, Clifford::Sdg),
            Gate::Cu {
                control: 0,
                targets: vec![2, 3],
                param: Param::Vector(vec![0.0, 1.0, 2.0, 3.0]),
                label: "diag".into(),
            },
            Gate::U {
                targets: vec![2],
                param: Param::Angle(0.5),
                label: "ry".into(),
            },
            Gate::GlobalPhase { angle: 0.125 },
        ]);
        let text = c.to_json().unwrap();
        assert!(text.contains("\"kind\": \"cx\""));
        assert_eq!(CircuitIR::from_json(&text).unwrap(), c);
    }

    #[test]
    fn json_rejects_malformed() {
        let text = r#"{"layout":{"n":1,"m":0,"anc":0},"gates":[{"kind":"cx","c":0,"t":0}]}"#;
        assert!(matches!(
            CircuitIR::from_json(text),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn qasm_declares_opaque_families() {
        let mut c = CircuitIR::new(QubitLayout::new(1, 2, 0));
        c.extend([
            Gate::cnot(0, 1),
            Gate::Cu {
                control: 0,
                targets: vec![1],
                param: Param::Angle(0.5),
                label: "rz".into(),
            },
            Gate::Cu {
                control: 0,
                targets: vec![1, 2],
                param: Param::Angle(1.0),
                label: "adder".into(),
            },
        ]);
        let q = c.to_qasm();
        assert!(q.contains("qreg q[3];"));
        assert!(q.contains("crz(0.5"));
        assert!(q.contains("opaque cadder2(a0) q0,q1,q2;"));
        assert!(q.contains("cadder2(1.0"));
    }
}
