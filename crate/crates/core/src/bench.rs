//! Benchmark rows comparing synthesis methods, written as CSV.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pipeline::{Job, Kind, Method};

pub const CSV_HEADER: &str =
    "suite,method,n,k,cnot,cu,rot,u,depth_total,depth_cnot,layers_rot,verified,ms";

/// Rows whose circuits use at most this many qubits are simulated.
pub const VERIFY_QUBITS: usize = 12;

/// The brute-force method is only run up to this many controls.
pub const BRUTE_MAX_N: usize = 12;

/// QAOA angle used by the benchmark suite.
pub const BENCH_GAMMA: f64 = 0.37;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub suite: Kind,
    pub n_min: usize,
    pub n_max: usize,
    /// Weight bound for the sparse suites; 2 when unset.
    pub k: Option<usize>,
    pub seed: u64,
    /// Record wall time; without it `ms` is 0 and reports are reproducible
    /// byte for byte.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verified {
    Yes,
    No,
    Skipped,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub suite: Kind,
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub report: Option<crate::circuit::CostReport>,
    pub verified: Verified,
    pub ms: f64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let counts = match &self.report {
            Some(r) => format!(
                "{},{},{},{},{},{},{}",
                r.count_cnot, r.count_cu, r.count_rot, r.count_u, r.depth_total, r.depth_cnot, r.layers_rot
            ),
            None => ",,,,,,".to_string(),
        };
        let verified = match &self.verified {
            Verified::Yes => "true".to_string(),
            Verified::No => "false".to_string(),
            Verified::Skipped => "skipped".to_string(),
            Verified::Failed(e) => format!("error: {}", e.replace([',', '\n'], ";")),
        };
        format!(
            "{},{},{},{},{counts},{verified},{:.3}",
            self.suite, self.method, self.n, self.k, self.ms
        )
    }
}

fn methods(suite: Kind) -> &'static [Method] {
    match suite {
        Kind::Qaoa => &[Method::Brute, Method::Size, Method::Depth, Method::Baseline],
        _ => &[Method::Brute, Method::Size, Method::Depth],
    }
}

fn run_one(job: &Job, method: Method, timing: bool) -> BenchRow {
    let k = job.k.unwrap_or(job.n());
    let start = Instant::now();
    let result = job.synthesize(method);
    let ms = if timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let mut row = BenchRow {
        suite: job.kind,
        method,
        n: job.n(),
        k,
        report: None,
        verified: Verified::Skipped,
        ms,
    };
    let circuit = match result {
        Ok(c) => c,
        Err(e) => {
            row.verified = Verified::Failed(e.to_string());
            return row;
        }
    };
    match circuit.depth_schedule() {
        Ok(r) => row.report = Some(r),
        Err(e) => {
            row.verified = Verified::Failed(e.to_string());
            return row;
        }
    }
    if circuit.layout.total() <= VERIFY_QUBITS && job.problem.realization.is_simulable() {
        row.verified = match job.verify(&circuit, 1e-9) {
            Ok((true, _)) => Verified::Yes,
            Ok((false, _)) => Verified::No,
            Err(e) => Verified::Failed(e.to_string()),
        };
    }
    row
}

/// All rows of a suite, ordered by (suite, n, k, method).
pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.n_min == 0 || config.n_min > config.n_max {
        return Err(Error::Parameter(format!(
            "bad range {}..={}",
            config.n_min, config.n_max
        )));
    }
    let jobs = (config.n_min..=config.n_max)
        .map(|n| {
            let k = config.k.map(|k| k.min(n));
            let seed = config.seed.wrapping_mul(1_000_003).wrapping_add(n as u64);
            Job::generate(config.suite, n, k, BENCH_GAMMA, seed, None)
        })
        .collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(&Job, Method)> = jobs
        .iter()
        .flat_map(|j| methods(config.suite).iter().map(move |&m| (j, m)))
        .filter(|(j, m)| *m != Method::Brute || j.n() <= BRUTE_MAX_N)
        .collect();
    let mut rows: Vec<BenchRow> = tasks
        .into_par_iter()
        .map(|(j, m)| run_one(j, m, config.timing))
        .collect();
    rows.sort_by_key(|r| (r.suite, r.n, r.k, r.method));
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.to_csv());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suite: Kind) -> BenchConfig {
        BenchConfig {
            suite,
            n_min: 2,
            n_max: 4,
            k: None,
            seed: 3,
            timing: false,
        }
    }

    #[test]
    fn deterministic_and_verified() {
        let a = to_csv(&bench(&config(Kind::Kdiag)).unwrap());
        let b = to_csv(&bench(&config(Kind::Kdiag)).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        let rows = bench(&config(Kind::Rucg)).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.verified == Verified::Yes), "{rows:?}");
    }

    #[test]
    fn size_rows_have_gray_counts() {
        let rows = bench(&config(Kind::Rucg)).unwrap();
        for r in rows.iter().filter(|r| r.method == Method::Size) {
            assert_eq!(r.report.as_ref().unwrap().count_cnot, (1 << r.n) - 2);
        }
    }

    #[test]
    fn bad_range() {
        let mut c = config(Kind::Diag);
        c.n_min = 5;
        assert!(bench(&c).is_err());
    }
}
