//! Brute-force references and simulation for certifying circuits.
//!
//! Unitaries are compared column by column. A circuit column is obtained
//! by pushing one basis state through the gate list, so a 12-qubit check
//! never holds a full `2^12 × 2^12` matrix; [`DenseUnitary`] is available
//! when the whole matrix is wanted.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::circuit::{Axis, CircuitIR, Clifford, Gate, Param};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::realization::Realization;
use crate::transform::{parity, SpectrumVector, TargetVector};

/// Largest register handled by any simulation routine.
pub const MAX_QUBITS: usize = 14;

/// Amplitudes below this are dropped from sparse columns.
const PRUNE: f64 = 1e-14;

pub type SparseColumn = Vec<(usize, C64)>;

fn cap(qubits: usize) -> Result<()> {
    if qubits > MAX_QUBITS {
        return Err(Error::Resource {
            qubits,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<C64>,
}

impl DenseUnitary {
    pub fn identity(qubits: usize) -> Result<Self> {
        cap(qubits)?;
        let dim = 1 << qubits;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::new(1.0, 0.0);
        }
        Ok(DenseUnitary { dim, data })
    }

    pub fn from_rows(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim || !dim.is_power_of_two() {
            return Err(Error::Parameter("matrix must be 2^q × 2^q".into()));
        }
        Ok(DenseUnitary { dim, data })
    }

    /// Collects a column source into a dense matrix.
    pub fn from_source(src: &dyn ColumnSource) -> Result<Self> {
        let q = src.qubits();
        cap(q)?;
        let dim = 1 << q;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for j in 0..dim {
            for (i, a) in src.column(j)? {
                data[i * dim + j] += a;
            }
        }
        Ok(DenseUnitary { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn mul(&self, other: &DenseUnitary) -> Result<DenseUnitary> {
        if self.dim != other.dim {
            return Err(Error::Parameter("dimension mismatch".into()));
        }
        let d = self.dim;
        let mut data = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(DenseUnitary { dim: d, data })
    }

    /// Maximum entry of `|U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.data[k * d + i].conj() * self.data[k * d + j];
                }
                let e = if i == j { s - 1.0 } else { s };
                worst = worst.max(e.norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }
}

/// Anything that can produce the columns of a unitary on demand.
pub trait ColumnSource {
    fn qubits(&self) -> usize;
    /// Column `j` as `(row, amplitude)` pairs; rows may repeat.
    fn column(&self, j: usize) -> Result<SparseColumn>;
}

impl ColumnSource for DenseUnitary {
    fn qubits(&self) -> usize {
        DenseUnitary::qubits(self)
    }

    fn column(&self, j: usize) -> Result<SparseColumn> {
        Ok((0..self.dim)
            .map(|i| (i, self.get(i, j)))
            .filter(|(_, a)| a.norm() > 0.0)
            .collect())
    }
}

/// `Σ_c |c⟩⟨c| ⊗ U(χ_c)` with control index in the low bits.
pub struct ReferenceColumns {
    n: usize,
    m: usize,
    blocks: Vec<Vec<C64>>,
}

impl ReferenceColumns {
    pub fn new<G: GroupElement>(chi: &TargetVector<G>, realization: &Realization) -> Result<Self> {
        let n = chi.n();
        let m = realization.target_qubits();
        cap(n + m)?;
        let blocks = chi
            .entries()
            .iter()
            .map(|v| realization.matrix(&v.to_param()))
            .collect::<Result<_>>()?;
        Ok(ReferenceColumns { n, m, blocks })
    }
}

impl ColumnSource for ReferenceColumns {
    fn qubits(&self) -> usize {
        self.n + self.m
    }

    fn column(&self, j: usize) -> Result<SparseColumn> {
        let c = j & ((1 << self.n) - 1);
        let t = j >> self.n;
        let dm = 1 << self.m;
        let block = &self.blocks[c];
        Ok((0..dm)
            .map(|r| (c | r << self.n, block[r * dm + t]))
            .filter(|(_, a)| a.norm() > 0.0)
            .collect())
    }
}

pub fn reference_unitary<G: GroupElement>(
    chi: &TargetVector<G>,
    realization: &Realization,
) -> Result<DenseUnitary> {
    DenseUnitary::from_source(&ReferenceColumns::new(chi, realization)?)
}

enum Op {
    Cnot(usize, usize),
    /// Diagonal phases for bit clear / bit set.
    Diag1(usize, C64, C64),
    Flip(usize),
    Hadamard(usize),
    /// Matrix on `targets`, optionally conditioned on one control.
    Block {
        control: Option<usize>,
        targets: Vec<usize>,
        matrix: Vec<C64>,
        diagonal: bool,
    },
    Scalar(C64),
}

fn prepare(gate: &Gate) -> Result<Op> {
    let e = |a: f64| C64::from_polar(1.0, a);
    let one = C64::new(1.0, 0.0);
    Ok(match gate {
        Gate::Cnot { control, target } => Op::Cnot(*control, *target),
        Gate::Rot {
            qubit,
            angle,
            axis: Axis::Z,
        } => Op::Diag1(*qubit, e(-angle / 2.0), e(angle / 2.0)),
        Gate::Rot {
            qubit,
            angle,
            axis: Axis::Phase,
        } => Op::Diag1(*qubit, one, e(*angle)),
        Gate::Clifford { qubit, kind } => match kind {
            Clifford::H => Op::Hadamard(*qubit),
            Clifford::X => Op::Flip(*qubit),
            Clifford::S => Op::Diag1(*qubit, one, C64::new(0.0, 1.0)),
            Clifford::Sdg => Op::Diag1(*qubit, one, C64::new(0.0, -1.0)),
        },
        Gate::GlobalPhase { angle } => Op::Scalar(e(*angle)),
        Gate::Cu {
            control,
            targets,
            param,
            ..
        } => block(Some(*control), targets, param, gate)?,
        Gate::U { targets, param, .. } => block(None, targets, param, gate)?,
    })
}

fn block(control: Option<usize>, targets: &[usize], param: &Param, gate: &Gate) -> Result<Op> {
    let r = gate.realization().expect("controlled gate has a realization");
    if !r.is_simulable() {
        return Err(Error::Unsimulable(r.label().to_string()));
    }
    if r.target_qubits() != targets.len() {
        return Err(Error::Structure(format!(
            "{r} acts on {} qubits, gate lists {}",
            r.target_qubits(),
            targets.len()
        )));
    }
    let matrix = r.matrix(param)?;
    // phase family on no targets: a scalar, or a phase on the control
    if targets.is_empty() {
        return Ok(match control {
            Some(c) => Op::Diag1(c, C64::new(1.0, 0.0), matrix[0]),
            None => Op::Scalar(matrix[0]),
        });
    }
    let dim = 1 << targets.len();
    let diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || matrix[i * dim + j].norm() == 0.0));
    Ok(Op::Block {
        control,
        targets: targets.to_vec(),
        matrix,
        diagonal,
    })
}

fn merge(col: &mut SparseColumn) {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: SparseColumn = Vec::with_capacity(col.len());
    for &(i, a) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += a,
            _ => out.push((i, a)),
        }
    }
    out.retain(|e| e.1.norm() > PRUNE);
    *col = out;
}

fn apply(op: &Op, col: &mut SparseColumn) {
    match op {
        Op::Cnot(c, t) => {
            for e in col.iter_mut() {
                if e.0 >> c & 1 == 1 {
                    e.0 ^= 1 << t;
                }
            }
        }
        Op::Diag1(q, p0, p1) => {
            for e in col.iter_mut() {
                e.1 *= if e.0 >> q & 1 == 1 { *p1 } else { *p0 };
            }
        }
        Op::Flip(q) => {
            for e in col.iter_mut() {
                e.0 ^= 1 << q;
            }
        }
        Op::Scalar(s) => {
            for e in col.iter_mut() {
                e.1 *= s;
            }
        }
        Op::Hadamard(q) => {
            let mut out = Vec::with_capacity(col.len() * 2);
            for &(i, a) in col.iter() {
                let a = a * FRAC_1_SQRT_2;
                let lo = i & !(1 << q);
                out.push((lo, a));
                out.push((lo | 1 << q, if i >> q & 1 == 1 { -a } else { a }));
            }
            *col = out;
            merge(col);
        }
        Op::Block {
            control,
            targets,
            matrix,
            diagonal,
        } => {
            let dim = 1 << targets.len();
            let local = |i: usize| {
                targets
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (k, &q)| acc | (i >> q & 1) << k)
            };
            let place = |i: usize, r: usize| {
                targets.iter().enumerate().fold(i, |acc, (k, &q)| {
                    (acc & !(1 << q)) | (r >> k & 1) << q
                })
            };
            let fires = |i: usize| control.is_none_or(|c| i >> c & 1 == 1);
            if *diagonal {
                for e in col.iter_mut() {
                    if fires(e.0) {
                        let t = local(e.0);
                        e.1 *= matrix[t * dim + t];
                    }
                }
                return;
            }
            let mut out = Vec::with_capacity(col.len() * dim);
            for &(i, a) in col.iter() {
                if !fires(i) {
                    out.push((i, a));
                    continue;
                }
                let t = local(i);
                for r in 0..dim {
                    let m = matrix[r * dim + t];
                    if m.norm() > 0.0 {
                        out.push((place(i, r), m * a));
                    }
                }
            }
            *col = out;
            merge(col);
        }
    }
}

/// Columns of a circuit restricted to the ancilla-`|0⟩` sector.
pub struct CircuitColumns {
    logical: usize,
    ops: Vec<Op>,
    tol: f64,
}

impl CircuitColumns {
    /// `tol` bounds the amplitude allowed to leak out of the ancilla sector.
    pub fn new(circuit: &CircuitIR, tol: f64) -> Result<Self> {
        if let Some(d) = circuit.validate().first() {
            return Err(Error::Structure(d.to_string()));
        }
        cap(circuit.layout.total())?;
        let ops = circuit.gates.iter().map(prepare).collect::<Result<_>>()?;
        Ok(CircuitColumns {
            logical: circuit.layout.n_controls + circuit.layout.m_targets,
            ops,
            tol,
        })
    }
}

impl ColumnSource for CircuitColumns {
    fn qubits(&self) -> usize {
        self.logical
    }

    fn column(&self, j: usize) -> Result<SparseColumn> {
        let mut col = vec![(j, C64::new(1.0, 0.0))];
        for op in &self.ops {
            apply(op, &mut col);
        }
        merge(&mut col);
        let mask = (1usize << self.logical) - 1;
        for &(i, a) in &col {
            if i & !mask != 0 && a.norm() > self.tol {
                return Err(Error::AncillaLeak(j));
            }
        }
        col.retain(|e| e.0 & !mask == 0);
        Ok(col)
    }
}

/// Gate-by-gate unitary of `circuit` on its control and target qubits.
pub fn simulate(circuit: &CircuitIR) -> Result<DenseUnitary> {
    DenseUnitary::from_source(&CircuitColumns::new(circuit, 1e-9)?)
}

/// Whether `A = λB` for a unit scalar `λ`, and `max |A − λB|`.
///
/// `λ` is read off the largest-magnitude entry of `B`'s first column.
pub fn equiv_columns(a: &dyn ColumnSource, b: &dyn ColumnSource, tol: f64) -> Result<(bool, f64)> {
    if a.qubits() != b.qubits() {
        return Err(Error::Parameter(format!(
            "register sizes differ: {} vs {}",
            a.qubits(),
            b.qubits()
        )));
    }
    let dim = 1usize << a.qubits();
    let mut lambda = None;
    let mut worst: f64 = 0.0;
    for j in 0..dim {
        let mut ca = a.column(j)?;
        let mut cb = b.column(j)?;
        merge(&mut ca);
        merge(&mut cb);
        let l = *lambda.get_or_insert_with(|| {
            let pivot = cb
                .iter()
                .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
                .map(|e| e.0);
            let av = pivot
                .and_then(|p| ca.iter().find(|e| e.0 == p))
                .map_or(C64::new(0.0, 0.0), |e| e.1);
            let bv = pivot
                .and_then(|p| cb.iter().find(|e| e.0 == p))
                .map_or(C64::new(1.0, 0.0), |e| e.1);
            let r = av / bv;
            if r.norm() > 0.0 {
                r / r.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        });
        // both columns are sorted by row
        let (mut x, mut y) = (0, 0);
        while x < ca.len() || y < cb.len() {
            let ix = ca.get(x).map_or(usize::MAX, |e| e.0);
            let iy = cb.get(y).map_or(usize::MAX, |e| e.0);
            let d = if ix == iy {
                x += 1;
                y += 1;
                ca[x - 1].1 - l * cb[y - 1].1
            } else if ix < iy {
                x += 1;
                ca[x - 1].1
            } else {
                y += 1;
                -l * cb[y - 1].1
            };
            worst = worst.max(d.norm());
        }
    }
    Ok((worst <= tol, worst))
}

/// Dense form of [`equiv_columns`].
pub fn equiv_global_phase(a: &DenseUnitary, b: &DenseUnitary, tol: f64) -> Result<(bool, f64)> {
    if a.dim != b.dim {
        return Err(Error::Parameter("dimension mismatch".into()));
    }
    // λ from the largest entry of B overall
    let (k, _) = b
        .data
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .expect("nonempty matrix");
    let r = a.data[k] / b.data[k];
    let l = if r.norm() > 0.0 { r / r.norm() } else { C64::new(1.0, 0.0) };
    let worst = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - l * y).norm())
        .fold(0.0, f64::max);
    Ok((worst <= tol, worst))
}

/// Checks `circuit` against `Σ_c |c⟩⟨c| ⊗ U(χ_c)` without dense matrices.
pub fn verify_against<G: GroupElement>(
    circuit: &CircuitIR,
    chi: &TargetVector<G>,
    realization: &Realization,
    tol: f64,
) -> Result<(bool, f64)> {
    let reference = ReferenceColumns::new(chi, realization)?;
    let sim = CircuitColumns::new(circuit, tol)?;
    equiv_columns(&sim, &reference, tol)
}

/// `X_ω = Σ_i (−1)^{ω·i} χ_i` by the double loop.
pub fn naive_wht<G: GroupElement>(chi: &TargetVector<G>) -> Result<SpectrumVector<G>> {
    if chi.n() > 12 {
        return Err(Error::Resource {
            qubits: chi.n(),
            cap: 12,
        });
    }
    let e = chi.entries();
    let x = (0..e.len() as u64)
        .map(|w| {
            e.iter().enumerate().fold(e[0].zero_like(), |acc, (i, v)| {
                if parity(w, i as u64) {
                    acc.minus(v)
                } else {
                    acc.plus(v)
                }
            })
        })
        .collect();
    SpectrumVector::new(chi.n(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QubitLayout;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn empty_circuit_is_identity() {
        let u = simulate(&CircuitIR::new(QubitLayout::new(2, 0, 0))).unwrap();
        assert_eq!(u, DenseUnitary::identity(2).unwrap());
    }

    #[test]
    fn cnot_permutation() {
        let mut circ = CircuitIR::new(QubitLayout::new(2, 0, 0));
        circ.push(Gate::cnot(0, 1));
        let u = simulate(&circ).unwrap();
        // |01⟩ (index 1, qubit 0 set) ↦ |11⟩
        assert_eq!(u.get(3, 1), c(1.0, 0.0));
        assert_eq!(u.get(1, 3), c(1.0, 0.0));
        assert_eq!(u.get(0, 0), c(1.0, 0.0));
        assert_eq!(u.get(2, 2), c(1.0, 0.0));
    }

    #[test]
    fn phase_reference() {
        let chi = TargetVector::new(1, vec![0.0, PI]).unwrap();
        let u = reference_unitary(&chi, &Realization::Phase).unwrap();
        assert!((u.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((u.get(1, 1) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rz_reference_layout() {
        let t = 0.8;
        let chi = TargetVector::new(1, vec![0.0, t]).unwrap();
        let u = reference_unitary(&chi, &Realization::Rz).unwrap();
        let expect = [c(1.0, 0.0), c(1.0, 0.0), C64::from_polar(1.0, -t / 2.0), C64::from_polar(1.0, t / 2.0)];
        // basis index = c | t << 1
        for (idx, e) in [0, 2, 1, 3].iter().zip(expect) {
            assert!((u.get(*idx, *idx) - e).norm() < 1e-15);
        }
    }

    #[test]
    fn global_phase_equivalence() {
        let chi = TargetVector::new(2, vec![0.1, 0.5, -0.3, 2.0]).unwrap();
        let u = reference_unitary(&chi, &Realization::Ry).unwrap();
        let shifted = TargetVector::new(2, vec![0.1, 0.5, -0.3, 2.0]).unwrap();
        let mut v = reference_unitary(&shifted, &Realization::Ry).unwrap();
        for a in v.data.iter_mut() {
            *a *= C64::from_polar(1.0, PI / 7.0);
        }
        assert!(equiv_global_phase(&u, &v, 1e-12).unwrap().0);
        assert!(equiv_columns(&u, &v, 1e-12).unwrap().0);
    }

    #[test]
    fn identity_is_not_x() {
        let i = DenseUnitary::identity(1).unwrap();
        let x = DenseUnitary::from_rows(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(!equiv_global_phase(&i, &x, 1e-9).unwrap().0);
        assert!(!equiv_columns(&i, &x, 1e-9).unwrap().0);
    }

    #[test]
    fn resource_cap() {
        let chi = TargetVector::new(15, vec![0.0; 1 << 15]).unwrap();
        assert!(matches!(
            ReferenceColumns::new(&chi, &Realization::Phase),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn opaque_gates_cannot_be_simulated() {
        let mut circ = CircuitIR::new(QubitLayout::new(1, 1, 0));
        circ.push(Gate::Cu {
            control: 0,
            targets: vec![1],
            param: Param::Angle(1.0),
            label: "adder".into(),
        });
        assert!(matches!(simulate(&circ), Err(Error::Unsimulable(_))));
    }

    #[test]
    fn ancilla_leak_detected() {
        let mut circ = CircuitIR::new(QubitLayout::new(1, 0, 1));
        circ.push(Gate::cnot(0, 1));
        assert!(matches!(simulate(&circ), Err(Error::AncillaLeak(1))));
    }

    #[test]
    fn hadamard_pair_cancels() {
        let mut circ = CircuitIR::new(QubitLayout::new(1, 0, 0));
        circ.push(Gate::clifford(0, Clifford::H));
        circ.push(Gate::clifford(0, Clifford::H));
        let u = simulate(&circ).unwrap();
        assert!(equiv_global_phase(&u, &DenseUnitary::identity(1).unwrap(), 1e-15).unwrap().0);
    }

    #[test]
    fn naive_transform_impulse_and_constant() {
        let mut v = vec![0.0; 8];
        v[0] = 0.5;
        let x = naive_wht(&TargetVector::new(3, v).unwrap()).unwrap();
        assert!(x.entries().iter().all(|a| *a == 0.5));
        let x = naive_wht(&TargetVector::new(3, vec![1.0; 8]).unwrap()).unwrap();
        assert_eq!(x.entries()[0], 8.0);
        assert!(x.entries()[1..].iter().all(|a| *a == 0.0));
    }
}
