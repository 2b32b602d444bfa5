//! Problem files: target-vector and gate-list JSON.
//!
//! ```json
//! {"n": 2, "realization": "rz", "chi": [0.1, 0.2, 0.3, 0.4]}
//! {"n": 1, "realization": "diag", "m": 1, "chi": [[0.0, 0.5], [0.1, 0.2]]}
//! {"n": 3, "realization": "phase",
//!  "gates": [{"controls": [{"q": 0, "pol": "pos"}, {"q": 2, "pol": "neg"}], "mu": 0.7}]}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circuit::Param;
use crate::error::{Error, Result};
use crate::group::{GroupElement, PhaseVector};
use crate::kgate::{ControlledGateSpec, KGateList, Polarity};
use crate::realization::Realization;
use crate::transform::TargetVector;

/// Target vector with scalar or vector-valued entries.
#[derive(Clone, Debug, PartialEq)]
pub enum Targets {
    Scalar(TargetVector<f64>),
    Vector(TargetVector<PhaseVector>),
}

impl Targets {
    pub fn n(&self) -> usize {
        match self {
            Targets::Scalar(t) => t.n(),
            Targets::Vector(t) => t.n(),
        }
    }
}

/// Multi-controlled gate list with scalar or vector-valued elements.
///
/// `zero` fixes the element shape when the list is empty.
#[derive(Clone, Debug, PartialEq)]
pub enum Lists {
    Scalar(KGateList<f64>),
    Vector { list: KGateList<PhaseVector>, zero: PhaseVector },
}

impl Lists {
    pub fn n(&self) -> usize {
        match self {
            Lists::Scalar(l) => l.n(),
            Lists::Vector { list, .. } => list.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Lists::Scalar(l) => l.k(),
            Lists::Vector { list, .. } => list.k(),
        }
    }

    /// The target vector the list multiplies out to.
    pub fn targets(&self) -> Targets {
        match self {
            Lists::Scalar(l) => Targets::Scalar(l.standardize().to_target_vector(&0.0)),
            Lists::Vector { list, zero } => {
                Targets::Vector(list.standardize().to_target_vector(zero))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Targets(Targets),
    List(Lists),
}

/// A synthesis problem as read from a file or generated for a benchmark.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub realization: Realization,
    pub payload: Payload,
}

impl Problem {
    pub fn n(&self) -> usize {
        match &self.payload {
            Payload::Targets(t) => t.n(),
            Payload::List(l) => l.n(),
        }
    }

    /// Target vector defining the reference operator.
    pub fn targets(&self) -> Targets {
        match &self.payload {
            Payload::Targets(t) => t.clone(),
            Payload::List(l) => l.targets(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        if value.get("gates").is_some() {
            list_from_json(serde_json::from_value(value)?)
        } else if value.get("chi").is_some() {
            targets_from_json(serde_json::from_value(value)?)
        } else {
            Err(Error::Input("expected a `chi` or a `gates` field".into()))
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let realization = self.realization.label().to_string();
        let m = self.realization.target_qubits();
        let text = match &self.payload {
            Payload::Targets(t) => serde_json::to_string(&TargetJson {
                n: t.n(),
                realization,
                m,
                chi: match t {
                    Targets::Scalar(t) => t.entries().iter().map(GroupElement::to_param).collect(),
                    Targets::Vector(t) => t.entries().iter().map(GroupElement::to_param).collect(),
                },
            })?,
            Payload::List(l) => serde_json::to_string(&ListJson {
                n: l.n(),
                realization,
                m,
                gates: match l {
                    Lists::Scalar(l) => gates_json(l),
                    Lists::Vector { list, .. } => gates_json(list),
                },
            })?,
        };
        Ok(text)
    }
}

#[derive(Serialize, Deserialize)]
struct TargetJson {
    n: usize,
    realization: String,
    #[serde(default)]
    m: usize,
    chi: Vec<Param>,
}

#[derive(Serialize, Deserialize)]
struct ControlJson {
    q: usize,
    pol: Polarity,
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    controls: Vec<ControlJson>,
    mu: Param,
}

#[derive(Serialize, Deserialize)]
struct ListJson {
    n: usize,
    realization: String,
    #[serde(default)]
    m: usize,
    gates: Vec<GateJson>,
}

fn gates_json<G: GroupElement>(list: &KGateList<G>) -> Vec<GateJson> {
    list.gates()
        .iter()
        .map(|g| GateJson {
            controls: g.controls.iter().map(|&(q, pol)| ControlJson { q, pol }).collect(),
            mu: g.mu.to_param(),
        })
        .collect()
}

/// Realization named in a file; for `diag` without `m` the width comes
/// from the first vector entry.
fn realization(label: &str, m: usize, first: Option<&Param>) -> Result<Realization> {
    let m = match (label, first) {
        ("diag" | "diag_m", Some(Param::Vector(v))) if m == 0 => {
            if !v.len().is_power_of_two() {
                return Err(Error::Input(format!("diagonal entry of length {}", v.len())));
            }
            v.len().trailing_zeros() as usize
        }
        _ => m,
    };
    Ok(Realization::from_label(label, m))
}

/// Whether the realization takes vector parameters.
fn vector_valued(r: &Realization, first: Option<&Param>) -> bool {
    match r {
        Realization::Diag { .. } => true,
        Realization::Opaque { .. } => matches!(first, Some(Param::Vector(_))),
        _ => false,
    }
}

fn scalar(p: &Param) -> Result<f64> {
    p.as_angle()
        .ok_or_else(|| Error::Input(format!("expected a number, found {p:?}")))
}

fn vector(p: &Param, len: Option<usize>) -> Result<PhaseVector> {
    match p {
        Param::Vector(v) if len.is_none_or(|l| v.len() == l) => Ok(PhaseVector(v.clone())),
        other => Err(Error::Input(format!("expected an array of {len:?} numbers, found {other:?}"))),
    }
}

fn vector_len(r: &Realization, first: Option<&Param>) -> Option<usize> {
    match (r, first) {
        (Realization::Diag { m }, _) => Some(1 << m),
        (_, Some(Param::Vector(v))) => Some(v.len()),
        _ => None,
    }
}

fn targets_from_json(raw: TargetJson) -> Result<Problem> {
    let r = realization(&raw.realization, raw.m, raw.chi.first())?;
    let targets = if vector_valued(&r, raw.chi.first()) {
        let len = vector_len(&r, raw.chi.first());
        let chi = raw.chi.iter().map(|p| vector(p, len)).collect::<Result<_>>()?;
        Targets::Vector(TargetVector::new(raw.n, chi)?)
    } else {
        let chi = raw.chi.iter().map(scalar).collect::<Result<_>>()?;
        Targets::Scalar(TargetVector::new(raw.n, chi)?)
    };
    Ok(Problem {
        realization: r,
        payload: Payload::Targets(targets),
    })
}

fn list_from_json(raw: ListJson) -> Result<Problem> {
    let first = raw.gates.first().map(|g| &g.mu);
    let r = realization(&raw.realization, raw.m, first)?;
    let controls = |g: &GateJson| -> Vec<(usize, Polarity)> {
        g.controls.iter().map(|c| (c.q, c.pol)).collect()
    };
    let lists = if vector_valued(&r, first) {
        let len = vector_len(&r, first);
        let gates = raw
            .gates
            .iter()
            .map(|g| Ok(ControlledGateSpec::new(controls(g), vector(&g.mu, len)?)))
            .collect::<Result<_>>()?;
        let zero = PhaseVector(vec![0.0; len.unwrap_or(1)]);
        Lists::Vector {
            list: KGateList::new(raw.n, gates)?,
            zero,
        }
    } else {
        let gates = raw
            .gates
            .iter()
            .map(|g| Ok(ControlledGateSpec::new(controls(g), scalar(&g.mu)?)))
            .collect::<Result<_>>()?;
        Lists::Scalar(KGateList::new(raw.n, gates)?)
    };
    Ok(Problem {
        realization: r,
        payload: Payload::List(lists),
    })
}
