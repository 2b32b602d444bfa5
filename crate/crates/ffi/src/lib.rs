//! C interface to `ucgsynth`.
//!
//! Circuits are handed out as opaque `UcgCircuit` pointers owned by the
//! caller and released with `ucg_circuit_free`. Every fallible call
//! returns a `UcgStatus`; on failure `ucg_last_error_message` describes the
//! error for the calling thread. Strings returned through `char **` are
//! released with `ucg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ucgsynth::io::Problem;
use ucgsynth::pipeline::{verify_problem, Job, Kind, Method};
use ucgsynth::{CircuitIR, Error};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Malformed JSON, wrong file kind or bad UTF-8.
    InputError = 3,
    /// Above the simulation qubit cap.
    ResourceCap = 4,
    Unsupported = 5,
    Internal = 6,
}

/// Gate counts and ASAP depths of a circuit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UcgStats {
    pub qubits: usize,
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

/// Opaque circuit handle.
pub struct UcgCircuit {
    inner: CircuitIR,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> UcgStatus {
    match e {
        Error::Parameter(_) | Error::SupportExceeded { .. } | Error::Length { .. } => {
            UcgStatus::InvalidArgument
        }
        Error::Resource { .. } => UcgStatus::ResourceCap,
        Error::UnsupportedRealization(_) | Error::Unsimulable(_) => UcgStatus::Unsupported,
        Error::Input(_) | Error::Json(_) | Error::Io(_) | Error::Structure(_) => UcgStatus::InputError,
        Error::DependentGroup | Error::AncillaLeak(_) => UcgStatus::Internal,
    }
}

struct Fail(UcgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> UcgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UcgStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            UcgStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(UcgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(UcgStatus::InputError, format!("{what} is not UTF-8")))
}

unsafe fn circuit<'a>(c: *const UcgCircuit) -> Result<&'a CircuitIR, Fail> {
    c.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| Fail(UcgStatus::NullPointer, "circuit is null".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(UcgStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn names(kind: &str, method: &str) -> Result<(Kind, Method), Fail> {
    Ok((kind.parse()?, method.parse()?))
}

fn hand_out(c: CircuitIR) -> *mut UcgCircuit {
    Box::into_raw(Box::new(UcgCircuit { inner: c }))
}

fn optional(k: usize) -> Option<usize> {
    (k != 0).then_some(k)
}

/// Synthesizes a seeded random instance.
///
/// `kind` is one of `rucg`, `krucg`, `diag`, `kdiag`, `qaoa`; `method` one
/// of `size`, `depth`, `brute`, `baseline`. `k = 0` picks the default
/// weight bound. On success `*out` owns a new circuit.
///
/// # Safety
/// `kind` and `method` must be NUL-terminated strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_synth_random(
    kind: *const c_char,
    method: *const c_char,
    n: usize,
    k: usize,
    gamma: f64,
    seed: u64,
    out: *mut *mut UcgCircuit,
) -> UcgStatus {
    guard(|| {
        out_ptr(out)?;
        let (kind, method) = names(text(kind, "kind")?, text(method, "method")?)?;
        let job = Job::generate(kind, n, optional(k), gamma, seed, None)?;
        *out = hand_out(job.synthesize(method)?);
        Ok(())
    })
}

/// Synthesizes the problem in a target-vector or gate-list JSON document.
///
/// # Safety
/// String arguments must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_synth_json(
    kind: *const c_char,
    method: *const c_char,
    problem_json: *const c_char,
    k: usize,
    gamma: f64,
    out: *mut *mut UcgCircuit,
) -> UcgStatus {
    guard(|| {
        out_ptr(out)?;
        let (kind, method) = names(text(kind, "kind")?, text(method, "method")?)?;
        let problem = Problem::from_json(text(problem_json, "problem")?)?;
        let job = Job::from_problem(kind, problem, optional(k), gamma)?;
        *out = hand_out(job.synthesize(method)?);
        Ok(())
    })
}

/// Parses and validates a circuit JSON document.
///
/// # Safety
/// `json` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_circuit_from_json(json: *const c_char, out: *mut *mut UcgCircuit) -> UcgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = hand_out(CircuitIR::from_json(text(json, "json")?)?);
        Ok(())
    })
}

/// Releases a circuit; null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ucg_circuit_free(c: *mut UcgCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live circuit and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_circuit_stats(c: *const UcgCircuit, out: *mut UcgStats) -> UcgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = circuit(c)?;
        let r = c.depth_schedule()?;
        *out = UcgStats {
            qubits: c.layout.total(),
            count_cnot: r.count_cnot,
            count_rot: r.count_rot,
            count_cu: r.count_cu,
            count_u: r.count_u,
            count_clifford: r.count_clifford,
            depth_total: r.depth_total,
            depth_cnot: r.depth_cnot,
            layers_rot: r.layers_rot,
            layers_cu: r.layers_cu,
        };
        Ok(())
    })
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    out_ptr(out)?;
    let s = CString::new(s).map_err(|_| Fail(UcgStatus::Internal, "interior NUL".into()))?;
    *out = s.into_raw();
    Ok(())
}

/// Circuit JSON; release with `ucg_string_free`.
///
/// # Safety
/// `c` must be a live circuit and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_circuit_to_json(c: *const UcgCircuit, out: *mut *mut c_char) -> UcgStatus {
    guard(|| emit(out, circuit(c)?.to_json()?))
}

/// QASM-like text; release with `ucg_string_free`.
///
/// # Safety
/// `c` must be a live circuit and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_circuit_to_qasm(c: *const UcgCircuit, out: *mut *mut c_char) -> UcgStatus {
    guard(|| emit(out, circuit(c)?.to_qasm()))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ucg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks a circuit against the operator described by a problem JSON
/// document, up to global phase.
///
/// A mismatch is not an error: the call returns `Ok` with
/// `*equivalent = false`. `deviation` may be null.
///
/// # Safety
/// `c` must be a live circuit, `problem_json` NUL-terminated and
/// `equivalent` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucg_verify_json(
    c: *const UcgCircuit,
    problem_json: *const c_char,
    tol: f64,
    equivalent: *mut bool,
    deviation: *mut f64,
) -> UcgStatus {
    guard(|| {
        out_ptr(equivalent)?;
        let problem = Problem::from_json(text(problem_json, "problem")?)?;
        let (ok, dev) = verify_problem(&problem, circuit(c)?, tol)?;
        *equivalent = ok;
        if !deviation.is_null() {
            *deviation = dev;
        }
        Ok(())
    })
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn ucg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ucg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
