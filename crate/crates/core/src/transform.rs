//! Target vectors and their Walsh–Hadamard frequency representation.
//!
//! A target vector `χ` assigns a group element to each control state `c`.
//! The unnormalized transform `X_ω = Σ_i (-1)^{ω·i} χ_i` is rescaled into
//! the frequency vector
//!
//! ```text
//! Y_0 = (1/N) Σ_ω X_ω,      Y_ω = -(2/N) X_ω  (ω ≠ 0)
//! ```
//!
//! so that `χ_c = Y_0 + Σ_{ω≠0, c·ω=1} Y_ω`. Every control state `ω` is
//! then realized by one gate conditioned on the parity `c·ω`.

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Parity of the bitwise dot product `a·b` over F₂.
#[inline]
pub fn parity(a: u64, b: u64) -> bool {
    (a & b).count_ones() & 1 == 1
}

#[inline]
pub fn weight(x: u64) -> usize {
    x.count_ones() as usize
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n >= 64 || len != 1usize << n {
        return Err(Error::Length { n, len });
    }
    Ok(())
}

macro_rules! sized_vector {
    ($(#[$meta:meta])* $name:ident, $field:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name<G> {
            n: usize,
            $field: Vec<G>,
        }

        impl<G: GroupElement> $name<G> {
            pub fn new(n: usize, $field: Vec<G>) -> Result<Self> {
                check_len(n, $field.len())?;
                Ok(Self { n, $field })
            }

            /// Number of control qubits.
            pub fn n(&self) -> usize {
                self.n
            }

            pub fn len(&self) -> usize {
                self.$field.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn entries(&self) -> &[G] {
                &self.$field
            }

            pub fn into_entries(self) -> Vec<G> {
                self.$field
            }

            pub fn get(&self, index: u64) -> &G {
                &self.$field[index as usize]
            }
        }
    };
}

sized_vector!(
    /// `χ`: one group element per control state, length `2^n`.
    TargetVector,
    chi
);
sized_vector!(
    /// `X`: the unnormalized Walsh–Hadamard transform of a target vector.
    SpectrumVector,
    x
);
sized_vector!(
    /// `Y`: the rescaled spectrum; `Y_ω` parameterizes the gate fired when
    /// `c·ω = 1`, and `Y_0` the unconditional factor.
    FrequencyVector,
    y
);

impl<G: GroupElement> FrequencyVector<G> {
    pub fn y0(&self) -> &G {
        &self.y[0]
    }
}

/// In-place butterfly: `v_ω ← Σ_i (-1)^{ω·i} v_i`.
fn butterfly<G: GroupElement>(v: &mut [G]) {
    let mut half = 1;
    while half < v.len() {
        for block in v.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let sum = a.plus(b);
                let diff = a.minus(b);
                *a = sum;
                *b = diff;
            }
        }
        half *= 2;
    }
}

/// Unnormalized Walsh–Hadamard transform in `O(N log N)` group additions.
pub fn wht_forward<G: GroupElement>(chi: &TargetVector<G>) -> SpectrumVector<G> {
    let mut x = chi.entries().to_vec();
    butterfly(&mut x);
    SpectrumVector { n: chi.n(), x }
}

/// Rescales a spectrum into the frequency vector using halvings only.
pub fn freq_from_spectrum<G: GroupElement>(x: &SpectrumVector<G>) -> FrequencyVector<G> {
    let n = x.n();
    let entries = x.entries();
    let total = entries[1..]
        .iter()
        .fold(entries[0].clone(), |acc, v| acc.plus(v));
    let mut y = Vec::with_capacity(entries.len());
    y.push(total.halved_n(n));
    // -(2/N) X = -X / 2^{n-1}
    y.extend(
        entries[1..]
            .iter()
            .map(|v| v.halved_n(n.saturating_sub(1)).negated()),
    );
    FrequencyVector { n, y }
}

/// Inverse transform: `χ_i = (1/N) Σ_ω (-1)^{ω·i} X_ω`.
pub fn wht_inverse<G: GroupElement>(x: &SpectrumVector<G>) -> TargetVector<G> {
    let mut chi = x.entries().to_vec();
    butterfly(&mut chi);
    let n = x.n();
    for v in chi.iter_mut() {
        *v = v.halved_n(n);
    }
    TargetVector { n, chi }
}

/// `χ ↦ Y` in one call.
pub fn frequency_vector<G: GroupElement>(chi: &TargetVector<G>) -> FrequencyVector<G> {
    freq_from_spectrum(&wht_forward(chi))
}

/// `Y_0 + Σ_{ω≠0, c·ω=1} Y_ω`, which must reproduce `χ_c`.
pub fn reconstruct_entry<G: GroupElement>(y: &FrequencyVector<G>, c: u64) -> Result<G> {
    if c >= y.len() as u64 {
        return Err(Error::Parameter(format!(
            "control state {c} out of range for n = {}",
            y.n()
        )));
    }
    let mut acc = y.y0().clone();
    for (omega, value) in y.entries().iter().enumerate().skip(1) {
        if parity(c, omega as u64) {
            acc = acc.plus(value);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Dyadic;

    #[test]
    fn length_checked() {
        assert!(matches!(
            TargetVector::new(2, vec![0.0; 3]),
            Err(Error::Length { n: 2, len: 3 })
        ));
    }

    #[test]
    fn constant_vector_collapses_to_dc() {
        let theta = Dyadic::new(3, 2);
        let chi = TargetVector::new(3, vec![theta; 8]).unwrap();
        let x = wht_forward(&chi);
        assert_eq!(*x.get(0), Dyadic::new(3 * 8, 2));
        assert!(x.entries()[1..].iter().all(|v| *v == Dyadic::ZERO));
    }

    #[test]
    fn single_control_example() {
        let t = Dyadic::new(5, 3);
        let chi = TargetVector::new(1, vec![Dyadic::ZERO, t]).unwrap();
        let x = wht_forward(&chi);
        assert_eq!(x.entries(), &[t, t.negated()]);
        let y = freq_from_spectrum(&x);
        assert_eq!(y.entries(), &[Dyadic::ZERO, t]);
        assert_eq!(reconstruct_entry(&y, 1).unwrap(), t);
    }

    #[test]
    fn zero_spectrum_gives_zero_frequency() {
        let x = SpectrumVector::new(3, vec![Dyadic::ZERO; 8]).unwrap();
        assert!(freq_from_spectrum(&x)
            .entries()
            .iter()
            .all(|v| *v == Dyadic::ZERO));
    }

    #[test]
    fn impulse_spectrum_inverts_to_constant() {
        let theta = Dyadic::from_int(1);
        let mut x = vec![Dyadic::ZERO; 16];
        x[0] = theta;
        let chi = wht_inverse(&SpectrumVector::new(4, x).unwrap());
        assert!(chi.entries().iter().all(|v| *v == Dyadic::new(1, 4)));
    }

    #[test]
    fn reconstruct_rejects_out_of_range() {
        let y = FrequencyVector::new(1, vec![0.0, 0.0]).unwrap();
        assert!(reconstruct_entry(&y, 2).is_err());
    }
}
