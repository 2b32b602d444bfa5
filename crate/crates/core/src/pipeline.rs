//! Problem kinds and synthesis methods shared by the CLI, the benchmark
//! driver and the C interface.

use std::fmt;
use std::str::FromStr;

use crate::circuit::CircuitIR;
use crate::error::{Error, Result};
use crate::instances::{
    random_angle, random_angles, random_kgate_list, random_phase_vectors, random_sparse_diagonal,
    rng,
};
use crate::io::{Lists, Payload, Problem, Targets};
use crate::realization::Realization;
use crate::synth::{
    baseline_rzz_ladder, qaoa_target_vector, synth_brute_force, synth_brute_force_list,
    synth_diag_depth, synth_kdiag_depth, synth_krucg, synth_qaoa, synth_rucg, synth_rucg_diag_depth,
    synth_rucg_rz_depth, synth_rucg_sparse, SizeOptions,
};
use crate::group::PhaseVector;
use crate::verify::verify_against;

macro_rules! each_targets {
    ($t:expr, $chi:ident => $body:expr) => {
        match $t {
            Targets::Scalar($chi) => $body,
            Targets::Vector($chi) => $body,
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Rucg,
    Krucg,
    Diag,
    Kdiag,
    Qaoa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Brute,
    Size,
    Depth,
    Baseline,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Rucg, Kind::Krucg, Kind::Diag, Kind::Kdiag, Kind::Qaoa];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Rucg => "rucg",
            Kind::Krucg => "krucg",
            Kind::Diag => "diag",
            Kind::Kdiag => "kdiag",
            Kind::Qaoa => "qaoa",
        }
    }

    pub fn default_realization(self) -> Realization {
        match self {
            Kind::Rucg | Kind::Krucg => Realization::Rz,
            Kind::Diag | Kind::Kdiag | Kind::Qaoa => Realization::Phase,
        }
    }

    pub fn is_sparse(self) -> bool {
        matches!(self, Kind::Krucg | Kind::Kdiag | Kind::Qaoa)
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Size => "size",
            Method::Depth => "depth",
            Method::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown kind `{s}`")))
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Method::Brute, Method::Size, Method::Depth, Method::Baseline]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown method `{s}`")))
    }
}

/// A problem together with how it is to be read.
#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub kind: Kind,
    /// Declared spectral weight bound for the sparse kinds.
    pub k: Option<usize>,
    /// QAOA angle; only read for [`Kind::Qaoa`].
    pub gamma: f64,
    pub problem: Problem,
}

impl Job {
    /// Seeded random instance. `k` defaults to 2 for the sparse kinds.
    pub fn generate(
        kind: Kind,
        n: usize,
        k: Option<usize>,
        gamma: f64,
        seed: u64,
        realization: Option<Realization>,
    ) -> Result<Self> {
        if n == 0 || n > 30 {
            return Err(Error::Parameter(format!("n = {n} outside 1..=30")));
        }
        let realization = realization.unwrap_or_else(|| kind.default_realization());
        let k = if kind.is_sparse() {
            let k = k.unwrap_or(2);
            if k == 0 || k > n {
                return Err(Error::Parameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
            }
            Some(k)
        } else {
            None
        };
        let mut r = rng(seed);
        let m = realization.target_qubits();
        let vector_valued = matches!(realization, Realization::Diag { .. })
            || matches!(realization, Realization::Opaque { .. } if m > 0);
        let payload = match kind {
            Kind::Rucg if vector_valued => Payload::Targets(Targets::Vector(random_phase_vectors(&mut r, n, m))),
            Kind::Rucg => Payload::Targets(Targets::Scalar(random_angles(&mut r, n))),
            Kind::Krucg => {
                let k = k.expect("sparse kind");
                let count = 2 * n + 4;
                if vector_valued {
                    let list = random_kgate_list(&mut r, n, k, count, |r| {
                        PhaseVector((0..1usize << m).map(|_| random_angle(r)).collect())
                    });
                    Payload::List(Lists::Vector {
                        list,
                        zero: PhaseVector::zeros(m),
                    })
                } else {
                    Payload::List(Lists::Scalar(random_kgate_list(&mut r, n, k, count, random_angle)))
                }
            }
            Kind::Diag => Payload::Targets(Targets::Scalar(random_angles(&mut r, n))),
            Kind::Kdiag => {
                Payload::Targets(Targets::Scalar(random_sparse_diagonal(&mut r, n, k.expect("sparse kind"))))
            }
            Kind::Qaoa => {
                if n < 2 {
                    return Err(Error::Parameter("QAOA needs n ≥ 2".into()));
                }
                Payload::Targets(Targets::Scalar(qaoa_target_vector(n, gamma)?))
            }
        };
        let job = Job {
            kind,
            k,
            gamma,
            problem: Problem { realization, payload },
        };
        job.check()?;
        Ok(job)
    }

    /// Wraps a problem read from a file. For gate lists `k` defaults to
    /// the list's own control count.
    pub fn from_problem(kind: Kind, problem: Problem, k: Option<usize>, gamma: f64) -> Result<Self> {
        let k = match (&problem.payload, kind.is_sparse()) {
            (Payload::List(l), _) => Some(k.unwrap_or(l.k()).max(l.k())),
            (_, true) => Some(k.unwrap_or(problem.n())),
            (_, false) => None,
        };
        let job = Job {
            kind,
            k,
            gamma,
            problem,
        };
        job.check()?;
        Ok(job)
    }

    fn check(&self) -> Result<()> {
        let is_list = matches!(self.problem.payload, Payload::List(_));
        if (self.kind == Kind::Krucg) != is_list {
            return Err(Error::Input(format!(
                "kind `{}` expects a {} file",
                self.kind,
                if self.kind == Kind::Krucg { "gate-list" } else { "target-vector" }
            )));
        }
        if matches!(self.kind, Kind::Diag | Kind::Kdiag | Kind::Qaoa)
            && self.problem.realization != Realization::Phase
        {
            return Err(Error::Input(format!("kind `{}` needs the phase realization", self.kind)));
        }
        if let Some(k) = self.k {
            if k > self.problem.n() {
                return Err(Error::Parameter(format!("k = {k} exceeds n = {}", self.problem.n())));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.problem.n()
    }

    /// Circuit for this job by the given method.
    pub fn synthesize(&self, method: Method) -> Result<CircuitIR> {
        let r = &self.problem.realization;
        let n = self.n();
        match (self.kind, method) {
            (Kind::Qaoa, Method::Depth) => return synth_qaoa(n, self.gamma),
            (Kind::Qaoa, Method::Baseline) => return baseline_rzz_ladder(n, self.gamma),
            (_, Method::Baseline) => {
                return Err(Error::Parameter("the baseline method exists for qaoa only".into()))
            }
            _ => {}
        }
        let opts = SizeOptions::default();
        match (&self.problem.payload, method) {
            (Payload::List(Lists::Scalar(l)), Method::Brute) => synth_brute_force_list(l, r),
            (Payload::List(Lists::Vector { list, .. }), Method::Brute) => synth_brute_force_list(list, r),
            (Payload::List(Lists::Scalar(l)), Method::Size) => synth_krucg(l, &0.0, r, opts),
            (Payload::List(Lists::Vector { list, zero }), Method::Size) => synth_krucg(list, zero, r, opts),
            (Payload::Targets(t), Method::Brute) => each_targets!(t, chi => synth_brute_force(chi, r)),
            (Payload::Targets(t), Method::Size) => match self.k {
                Some(k) => each_targets!(t, chi => synth_rucg_sparse(chi, k, r, opts)),
                None => each_targets!(t, chi => synth_rucg(chi, r, opts)),
            },
            (_, Method::Depth) => self.depth(),
            (_, Method::Baseline) => unreachable!("handled above"),
        }
    }

    fn depth(&self) -> Result<CircuitIR> {
        let r = &self.problem.realization;
        let targets = self.problem.targets();
        match (r, &targets) {
            (Realization::Phase, Targets::Scalar(chi)) => match self.k {
                Some(k) => synth_kdiag_depth(chi, k),
                None => synth_diag_depth(chi),
            },
            (Realization::Rz | Realization::Rx | Realization::Ry, Targets::Scalar(chi)) => {
                synth_rucg_rz_depth(chi, r, self.k)
            }
            (Realization::Diag { .. }, Targets::Vector(chi)) => synth_rucg_diag_depth(chi),
            _ => Err(Error::UnsupportedRealization(format!(
                "{r}: depth synthesis supports phase, rz, rx, ry and diag"
            ))),
        }
    }

    /// Checks `circuit` against the job's reference operator.
    pub fn verify(&self, circuit: &CircuitIR, tol: f64) -> Result<(bool, f64)> {
        verify_problem(&self.problem, circuit, tol)
    }
}

/// Checks `circuit` against the operator `problem` describes; returns the
/// verdict and the largest entry deviation.
pub fn verify_problem(problem: &Problem, circuit: &CircuitIR, tol: f64) -> Result<(bool, f64)> {
    let r = &problem.realization;
    if !r.is_simulable() {
        return Err(Error::Unsimulable(r.label().to_string()));
    }
    each_targets!(&problem.targets(), chi => verify_against(circuit, chi, r, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn every_kind_and_method_verifies() {
        for kind in Kind::ALL {
            let job = Job::generate(kind, 4, Some(2), 0.3, 5, None).unwrap();
            let mut methods = vec![Method::Brute, Method::Size, Method::Depth];
            if kind == Kind::Qaoa {
                methods.push(Method::Baseline);
            }
            for m in methods {
                let c = job.synthesize(m).unwrap();
                let (ok, err) = job.verify(&c, 1e-9).unwrap();
                assert!(ok, "{kind} {m}: {err}");
            }
        }
    }

    #[test]
    fn vector_targets() {
        let job = Job::generate(Kind::Rucg, 3, None, 0.0, 1, Some(Realization::Diag { m: 2 })).unwrap();
        for m in [Method::Brute, Method::Size, Method::Depth] {
            let c = job.synthesize(m).unwrap();
            assert!(job.verify(&c, 1e-9).unwrap().0);
        }
    }

    #[test]
    fn mismatched_files_are_input_errors() {
        let job = Job::generate(Kind::Krucg, 3, Some(1), 0.0, 1, None).unwrap();
        assert!(matches!(
            Job::from_problem(Kind::Rucg, job.problem, None, 0.0),
            Err(Error::Input(_))
        ));
        let job = Job::generate(Kind::Rucg, 3, None, 0.0, 1, None).unwrap();
        assert!(Job::from_problem(Kind::Diag, job.problem, None, 0.0).is_err());
    }
}
