//! The 2-divisible Abelian groups that parameterize target operators.
//!
//! Three carriers are provided: plain radians (`f64`), exact dyadic
//! multiples of pi ([`Dyadic`]) for bit-exact transform checks, and
//! componentwise phase vectors ([`PhaseVector`]) for multi-qubit diagonal
//! targets. The only division ever performed is [`GroupElement::halved`].

use std::f64::consts::PI;
use std::fmt;

use crate::circuit::Param;

/// Default tolerance for comparing group elements.
pub const DEFAULT_TOL: f64 = 1e-9;

pub trait GroupElement: Clone + fmt::Debug + PartialEq + Send + Sync {
    /// Identity element with the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// The unique element `h` with `h + h == self` within this carrier.
    fn halved(&self) -> Self;
    fn is_zero_within(&self, tol: f64) -> bool;
    /// Circuit parameter carried by gates realizing this element.
    fn to_param(&self) -> Param;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.minus(other).is_zero_within(tol)
    }

    /// Applies `halved` `times` times, i.e. division by `2^times`.
    fn halved_n(&self, times: usize) -> Self {
        (0..times).fold(self.clone(), |acc, _| acc.halved())
    }
}

impl GroupElement for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn halved(&self) -> Self {
        self * 0.5
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn to_param(&self) -> Param {
        Param::Angle(*self)
    }
}

/// Exact value `num / 2^exp` in units of pi.
///
/// Always kept normalized: `num` is odd unless `exp == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(num: i128) -> Self {
        Dyadic { num, exp: 0 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Value in radians.
    pub fn radians(&self) -> f64 {
        self.num as f64 / 2f64.powi(self.exp as i32) * PI
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}·π", self.num, self.exp)
    }
}

impl GroupElement for Dyadic {
    fn zero_like(&self) -> Self {
        Dyadic::ZERO
    }

    fn plus(&self, other: &Self) -> Self {
        let exp = self.exp.max(other.exp);
        let a = self.num << (exp - self.exp);
        let b = other.num << (exp - other.exp);
        Dyadic::new(a + b, exp)
    }

    fn negated(&self) -> Self {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }

    fn halved(&self) -> Self {
        Dyadic::new(self.num, self.exp + 1)
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.num == 0
    }

    fn to_param(&self) -> Param {
        Param::Angle(self.radians())
    }
}

/// Componentwise phase angles of an `m`-qubit diagonal target.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector(pub Vec<f64>);

impl PhaseVector {
    pub fn zeros(m: usize) -> Self {
        PhaseVector(vec![0.0; 1 << m])
    }

    /// Number of target qubits.
    pub fn qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }
}

impl GroupElement for PhaseVector {
    fn zero_like(&self) -> Self {
        PhaseVector(vec![0.0; self.0.len()])
    }

    fn plus(&self, other: &Self) -> Self {
        PhaseVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn negated(&self) -> Self {
        PhaseVector(self.0.iter().map(|a| -a).collect())
    }

    fn halved(&self) -> Self {
        PhaseVector(self.0.iter().map(|a| a * 0.5).collect())
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.0.iter().all(|a| a.abs() <= tol)
    }

    fn to_param(&self) -> Param {
        Param::Vector(self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_normalizes() {
        let d = Dyadic::new(12, 4);
        assert_eq!((d.numerator(), d.exponent()), (3, 2));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 2), Dyadic::from_int(2));
    }

    #[test]
    fn dyadic_halving_is_exact() {
        let x = Dyadic::new(-7, 3);
        let h = x.halved();
        assert_eq!(h.plus(&h), x);
        assert_eq!(x.plus(&x.negated()), Dyadic::ZERO);
        assert_eq!(Dyadic::from_int(1).halved_n(10), Dyadic::new(1, 10));
    }

    #[test]
    fn dyadic_radians() {
        assert!((Dyadic::new(1, 1).radians() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn phase_vector_group_laws() {
        let a = PhaseVector(vec![0.5, -1.0]);
        let b = PhaseVector(vec![0.25, 2.0]);
        assert_eq!(a.plus(&b), b.plus(&a));
        let h = a.halved();
        assert!(h.plus(&h).approx_eq(&a, 1e-15));
        assert!(a.plus(&a.negated()).is_zero_within(0.0));
        assert_eq!(a.qubits(), 1);
    }
}
