//! Linear reversible (CNOT-only) circuits as bit matrices over F₂.
//!
//! Row `q` of a [`LinearState`] is a bitmask over the initial basis: qubit
//! `q` currently holds `⊕_{j ∈ row_q} x_j`. `CNOT(c→t)` is `row_t ^= row_c`.

use crate::error::{Error, Result};

/// Rank of a set of vectors.
pub fn rank(vectors: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let h = 63 - x.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = x;
                r += 1;
                break;
            }
            x ^= basis[h];
        }
    }
    r
}

pub fn is_independent(vectors: &[u64]) -> bool {
    rank(vectors) == vectors.len()
}

/// Incremental independence test: an echelon basis that accepts vectors.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    basis: Vec<u64>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: u64) -> u64 {
        self.basis.iter().fold(v, |x, &b| x.min(x ^ b))
    }

    pub fn is_independent_of(&self, v: u64) -> bool {
        self.reduce(v) != 0
    }

    /// Adds `v`; false if it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearState {
    rows: Vec<u64>,
}

impl LinearState {
    pub fn identity(n: usize) -> Self {
        LinearState {
            rows: (0..n).map(|q| 1u64 << q).collect(),
        }
    }

    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        if !is_independent(&rows) || rows.iter().any(|&r| r >> rows.len() != 0) {
            return Err(Error::DependentGroup);
        }
        Ok(LinearState { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, q: usize) -> u64 {
        self.rows[q]
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        self.rows[target] ^= self.rows[control];
    }

    pub fn apply_all(&mut self, cnots: &[(usize, usize)]) {
        for &(c, t) in cnots {
            self.apply_cnot(c, t);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(q, &r)| r == 1 << q)
    }

    /// `self · other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &LinearState) -> LinearState {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.n())
                    .filter(|j| r >> j & 1 == 1)
                    .fold(0, |acc, j| acc ^ other.rows[j])
            })
            .collect();
        LinearState { rows }
    }

    pub fn inverse(&self) -> LinearState {
        let mut inv = LinearState::identity(self.n());
        // the ops reducing self to I, applied to I, give self⁻¹
        inv.apply_all(&eliminate(self));
        inv
    }
}

/// CNOTs that, applied in order, take `state` to the identity.
///
/// Gauss–Jordan over rows without swaps; a missing pivot is repaired by
/// adding a lower row into the pivot row.
pub fn eliminate(state: &LinearState) -> Vec<(usize, usize)> {
    let mut m = state.clone();
    let n = m.n();
    let mut ops = Vec::new();
    for j in 0..n {
        if m.rows[j] >> j & 1 == 0 {
            let i = (j + 1..n)
                .find(|&i| m.rows[i] >> j & 1 == 1)
                .expect("state is invertible");
            m.apply_cnot(i, j);
            ops.push((i, j));
        }
        for i in 0..n {
            if i != j && m.rows[i] >> j & 1 == 1 {
                m.apply_cnot(j, i);
                ops.push((j, i));
            }
        }
    }
    debug_assert!(m.is_identity());
    ops
}

/// CNOTs that take `from` to `to`.
pub fn transition(from: &LinearState, to: &LinearState) -> Vec<(usize, usize)> {
    // ops E with E·from = to, i.e. E = to·from⁻¹; reducing E to I gives E⁻¹,
    // and each CNOT is its own inverse.
    let e = to.compose(&from.inverse());
    let mut ops = eliminate(&e);
    ops.reverse();
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[0b01, 0b10, 0b11]), 2);
        assert_eq!(rank(&[0b111, 0b011, 0b001]), 3);
        assert_eq!(rank(&[0]), 0);
        assert!(is_independent(&[]));
    }

    #[test]
    fn xor_basis_tracks_span() {
        let mut b = XorBasis::new();
        assert!(b.insert(0b110));
        assert!(b.insert(0b011));
        assert!(!b.is_independent_of(0b101));
        assert!(b.is_independent_of(0b001));
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn identity_needs_no_ops() {
        assert!(eliminate(&LinearState::identity(5)).is_empty());
    }

    #[test]
    fn single_cnot_resets_with_itself() {
        let mut s = LinearState::identity(3);
        s.apply_cnot(0, 2);
        assert_eq!(eliminate(&s), vec![(0, 2)]);
    }

    #[test]
    fn transition_reaches_target() {
        let from = LinearState::from_rows(vec![0b011, 0b010, 0b111]).unwrap();
        let to = LinearState::from_rows(vec![0b100, 0b011, 0b001]).unwrap();
        let mut s = from.clone();
        s.apply_all(&transition(&from, &to));
        assert_eq!(s, to);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let s = LinearState::from_rows(vec![0b011, 0b110, 0b111]).unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
    }

    #[test]
    fn dependent_rows_rejected() {
        assert!(LinearState::from_rows(vec![0b11, 0b11]).is_err());
    }
}
