use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ucgsynth::bench::{bench, to_csv, BenchConfig};
use ucgsynth::io::Problem;
use ucgsynth::pipeline::{verify_problem, Job, Kind, Method};
use ucgsynth::{CircuitIR, Error, Realization};

const EXIT_VERIFY: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(name = "ucgsynth", version, about = "Synthesis of uniformly controlled gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit from a problem file or a seeded random instance.
    Synth {
        #[arg(long)]
        kind: Kind,
        /// size, depth, brute or baseline (qaoa only)
        #[arg(long, default_value = "size")]
        opt: Method,
        /// Control qubits of a random instance.
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        /// Target-vector or gate-list JSON.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Circuit JSON; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        qasm: Option<PathBuf>,
        /// Cost report JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Realization of random instances (phase, rz, rx, ry, diag).
        #[arg(long)]
        realization: Option<String>,
        /// Target qubits for `--realization diag`.
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Check a circuit against the operator a problem file describes.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Benchmark all methods of a suite and write CSV.
    Bench {
        #[arg(long)]
        suite: Kind,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Output file, `-` for stdout.
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write 0 in the `ms` column.
        #[arg(long)]
        no_timing: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(Error::from)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Synth {
            kind,
            opt,
            n,
            k,
            gamma,
            input,
            out,
            qasm,
            stats,
            seed,
            realization,
            m,
        } => {
            let realization = realization.map(|r| {
                let m = if r.starts_with("diag") { m } else { 0 };
                Realization::from_label(&r, m)
            });
            let job = match input {
                Some(path) => {
                    let problem = Problem::from_json(&read(&path)?)?;
                    Job::from_problem(kind, problem, k, gamma)?
                }
                None => Job::generate(kind, n.unwrap_or_default(), k, gamma, seed, realization)?,
            };
            let circuit = job.synthesize(opt)?;
            let json = circuit.to_json()?;
            match out {
                Some(path) => write(&path, &json)?,
                None => println!("{json}"),
            }
            if let Some(path) = qasm {
                write(&path, &circuit.to_qasm())?;
            }
            if let Some(path) = stats {
                let report = circuit.depth_schedule()?;
                write(&path, &serde_json::to_string_pretty(&report)?)?;
            }
            Ok(0)
        }
        Command::Verify {
            circuit,
            reference,
            tol,
        } => {
            let circuit = CircuitIR::from_json(&read(&circuit)?)?;
            let problem = Problem::from_json(&read(&reference)?)?;
            let (ok, deviation) = verify_problem(&problem, &circuit, tol)?;
            if ok {
                println!("equivalent up to global phase (max deviation {deviation:.3e})");
                Ok(0)
            } else {
                println!("not equivalent (max deviation {deviation:.3e}, tol {tol:e})");
                Ok(EXIT_VERIFY)
            }
        }
        Command::Bench {
            suite,
            n_min,
            n_max,
            k,
            csv,
            seed,
            no_timing,
        } => {
            let rows = bench(&BenchConfig {
                suite,
                n_min,
                n_max,
                k,
                seed,
                timing: !no_timing,
            })?;
            write(&csv, &to_csv(&rows))?;
            let bad = rows.iter().filter(|r| r.verified == ucgsynth::bench::Verified::No).count();
            Ok(if bad > 0 { EXIT_VERIFY } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
