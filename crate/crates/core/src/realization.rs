//! How group elements become target unitaries.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::circuit::Param;
use crate::error::{Error, Result};

/// Target-operator family of an rUCG.
///
/// `Rx`/`Ry` are the Clifford conjugates of `Rz`: `Rx = H Rz H` and
/// `Ry = S H Rz H S†`. `Opaque` families are carried symbolically and can
/// be counted but never simulated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `m = 0`: the element is a scalar phase `e^{jθ}`.
    Phase,
    Rz,
    Rx,
    Ry,
    /// `m`-qubit diagonal `diag(e^{jv_0}, …)`, added componentwise.
    Diag { m: usize },
    Opaque { label: String, m: usize },
}

impl Realization {
    /// Number of target qubits.
    pub fn target_qubits(&self) -> usize {
        match self {
            Realization::Phase => 0,
            Realization::Rz | Realization::Rx | Realization::Ry => 1,
            Realization::Diag { m } | Realization::Opaque { m, .. } => *m,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Realization::Phase => "phase",
            Realization::Rz => "rz",
            Realization::Rx => "rx",
            Realization::Ry => "ry",
            Realization::Diag { .. } => "diag",
            Realization::Opaque { label, .. } => label,
        }
    }

    /// Inverse of [`Realization::label`]; unknown labels become opaque.
    pub fn from_label(label: &str, m: usize) -> Self {
        match label {
            "phase" => Realization::Phase,
            "rz" => Realization::Rz,
            "rx" => Realization::Rx,
            "ry" => Realization::Ry,
            "diag" | "diag_m" => Realization::Diag { m },
            other => Realization::Opaque {
                label: other.to_string(),
                m,
            },
        }
    }

    pub fn is_simulable(&self) -> bool {
        !matches!(self, Realization::Opaque { .. })
    }

    /// Whether every operator in the family is diagonal.
    pub fn is_diagonal(&self) -> bool {
        matches!(
            self,
            Realization::Phase | Realization::Rz | Realization::Diag { .. }
        )
    }

    /// Row-major `2^m × 2^m` matrix of the operator for `param`.
    pub fn matrix(&self, param: &Param) -> Result<Vec<C64>> {
        let angle = |p: &Param| match p {
            Param::Angle(a) => Ok(*a),
            Param::Vector(_) => Err(Error::Parameter(format!(
                "{} expects a scalar angle",
                self.label()
            ))),
        };
        Ok(match self {
            Realization::Phase => vec![C64::from_polar(1.0, angle(param)?)],
            Realization::Rz => {
                let h = angle(param)? / 2.0;
                vec![
                    C64::from_polar(1.0, -h),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::from_polar(1.0, h),
                ]
            }
            Realization::Rx => {
                let h = angle(param)? / 2.0;
                let (c, s) = (C64::new(h.cos(), 0.0), C64::new(0.0, -h.sin()));
                vec![c, s, s, c]
            }
            Realization::Ry => {
                let h = angle(param)? / 2.0;
                let (c, s) = (h.cos(), h.sin());
                vec![
                    C64::new(c, 0.0),
                    C64::new(-s, 0.0),
                    C64::new(s, 0.0),
                    C64::new(c, 0.0),
                ]
            }
            Realization::Diag { m } => {
                let v = match param {
                    Param::Vector(v) if v.len() == 1 << m => v,
                    _ => {
                        return Err(Error::Parameter(format!(
                            "diag on {m} qubits expects {} phases",
                            1 << m
                        )))
                    }
                };
                let dim = v.len();
                let mut out = vec![C64::new(0.0, 0.0); dim * dim];
                for (i, a) in v.iter().enumerate() {
                    out[i * dim + i] = C64::from_polar(1.0, *a);
                }
                out
            }
            Realization::Opaque { label, .. } => return Err(Error::Unsimulable(label.clone())),
        })
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realization::Diag { m } => write!(f, "diag_{m}"),
            other => f.write_str(other.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul2(a: &[C64], b: &[C64]) -> Vec<C64> {
        vec![
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    }

    #[test]
    fn rotations_are_homomorphisms() {
        for r in [Realization::Rz, Realization::Rx, Realization::Ry] {
            let a = r.matrix(&Param::Angle(0.3)).unwrap();
            let b = r.matrix(&Param::Angle(-1.1)).unwrap();
            let ab = r.matrix(&Param::Angle(0.3 - 1.1)).unwrap();
            for (x, y) in mul2(&a, &b).iter().zip(&ab) {
                assert!((x - y).norm() < 1e-12, "{r}");
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for r in [
            Realization::Phase,
            Realization::Rz,
            Realization::Rx,
            Realization::Ry,
            Realization::Diag { m: 2 },
        ] {
            assert_eq!(Realization::from_label(r.label(), r.target_qubits()), r);
        }
        assert!(!Realization::from_label("adder", 3).is_simulable());
    }

    #[test]
    fn opaque_has_no_matrix() {
        let r = Realization::Opaque {
            label: "adder".into(),
            m: 2,
        };
        assert!(matches!(
            r.matrix(&Param::Angle(1.0)),
            Err(Error::Unsimulable(_))
        ));
    }
}
