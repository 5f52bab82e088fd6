//! C ABI over the hisea optimizer.
//!
//! Every function returns a [`HiseaStatus`] or a plain value and never
//! unwinds into the caller. After a non-OK status,
//! [`hisea_last_error_message`] describes the failure on the calling thread.
//! Runs are returned as opaque [`HiseaRun`] handles released with
//! [`hisea_run_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use hisea::benchmarks::{self, Benchmark};
use hisea::{ConvergenceTrace, HiseaError, Problem, RunConfig, SearchSpace, StopReason};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HiseaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfBounds = 3,
    NonFinite = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HiseaStopReason {
    Threshold = 0,
    LoopLimit = 1,
}

/// Run parameters. Quantile levels are fixed at 0.05, 0.10, ..., 0.95.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiseaConfig {
    pub n_f: usize,
    pub n_p: usize,
    pub n_g: usize,
    pub n_s: usize,
    pub max_loops: usize,
    pub epsilon: f64,
    pub seed: u64,
}

/// One row of a convergence trace. `pool_distance` is NaN on the first row.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiseaGenerationRecord {
    pub generation: usize,
    pub evaluations: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub pool_distance: f64,
}

/// A finished run.
pub struct HiseaRun {
    trace: ConvergenceTrace,
}

/// Objective callback: fitness of the `n` coordinates at `x`.
pub type HiseaObjective = Option<unsafe extern "C" fn(x: *const f64, n: usize, user_data: *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
}

fn fail(status: HiseaStatus, message: impl Into<String>) -> HiseaStatus {
    set_error(message);
    status
}

fn from_error(e: HiseaError) -> HiseaStatus {
    let status = match &e {
        HiseaError::OutOfBounds { .. } => HiseaStatus::OutOfBounds,
        HiseaError::NonFiniteFitness { .. } => HiseaStatus::NonFinite,
        _ => HiseaStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> HiseaStatus) -> HiseaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == HiseaStatus::Ok {
                set_error("");
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(HiseaStatus::Panic, format!("panic: {msg}"))
        }
    }
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to fit. Returns the full message length
/// excluding the terminator; pass a null `buf` to query it.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hisea_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            // SAFETY: the caller provides `len` writable bytes and n < len.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

#[no_mangle]
pub extern "C" fn hisea_benchmark_count() -> usize {
    benchmarks::FUNCTION_COUNT
}

/// Default dimension of benchmark `id` (1-30).
///
/// # Safety
/// `out_dim` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hisea_benchmark_dim(id: usize, out_dim: *mut usize) -> HiseaStatus {
    guard(|| {
        if out_dim.is_null() {
            return fail(HiseaStatus::NullPointer, "out_dim is null");
        }
        match benchmarks::default_dim(id) {
            Ok(n) => {
                // SAFETY: checked non-null; validity is the caller's contract.
                unsafe { *out_dim = n };
                HiseaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Writes the box of benchmark `id` into `lower` and `upper`, each holding
/// `len` doubles; `len` must equal the benchmark's dimension.
///
/// # Safety
/// `lower` and `upper` must each be null or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hisea_benchmark_bounds(id: usize, lower: *mut f64, upper: *mut f64, len: usize) -> HiseaStatus {
    guard(|| {
        if lower.is_null() || upper.is_null() {
            return fail(HiseaStatus::NullPointer, "bounds buffer is null");
        }
        let spec = match benchmarks::spec(id) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let n = spec.space.dim();
        if len != n {
            return fail(HiseaStatus::BufferTooSmall, format!("f{id} has {n} dimensions, buffers hold {len}"));
        }
        // SAFETY: both buffers are non-null and hold `len` doubles.
        unsafe {
            slice::from_raw_parts_mut(lower, n).copy_from_slice(spec.space.lower());
            slice::from_raw_parts_mut(upper, n).copy_from_slice(spec.space.upper());
        }
        HiseaStatus::Ok
    })
}

/// Evaluates benchmark `id` at the `len` coordinates of `x`.
///
/// # Safety
/// `x` must be valid for `len` reads and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hisea_benchmark_evaluate(id: usize, x: *const f64, len: usize, out: *mut f64) -> HiseaStatus {
    guard(|| {
        if x.is_null() || out.is_null() {
            return fail(HiseaStatus::NullPointer, "x or out is null");
        }
        // SAFETY: non-null, `len` readable doubles per the contract.
        let point = unsafe { slice::from_raw_parts(x, len) };
        match benchmarks::evaluate(id, point) {
            Ok(v) => {
                unsafe { *out = v };
                HiseaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn config_from(run: RunConfig) -> HiseaConfig {
    HiseaConfig {
        n_f: run.n_f,
        n_p: run.n_p,
        n_g: run.n_g,
        n_s: run.n_s,
        max_loops: run.max_loops,
        epsilon: run.epsilon,
        seed: run.seed,
    }
}

fn run_config(c: &HiseaConfig) -> RunConfig {
    RunConfig {
        n_f: c.n_f,
        n_p: c.n_p,
        n_g: c.n_g,
        n_s: c.n_s,
        max_loops: c.max_loops,
        epsilon: c.epsilon,
        seed: c.seed,
        ..RunConfig::paper()
    }
}

/// Full-size parameters (5000 individuals, 300 cells, 300 loops).
#[no_mangle]
pub extern "C" fn hisea_config_paper() -> HiseaConfig {
    config_from(RunConfig::paper())
}

/// Reduced parameters for quick runs (500 individuals, 100 cells, 60 loops).
#[no_mangle]
pub extern "C" fn hisea_config_desk() -> HiseaConfig {
    config_from(RunConfig::desk())
}

fn finish_run(result: hisea::Result<ConvergenceTrace>, out: *mut *mut HiseaRun) -> HiseaStatus {
    match result {
        Ok(trace) => {
            // SAFETY: `out` was checked non-null by the caller of this helper.
            unsafe { *out = Box::into_raw(Box::new(HiseaRun { trace })) };
            HiseaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Minimises benchmark `id` at its default dimension. On success `*out`
/// receives a handle to release with [`hisea_run_free`].
///
/// # Safety
/// `config` must be valid for reads and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_benchmark(id: usize, config: *const HiseaConfig, out: *mut *mut HiseaRun) -> HiseaStatus {
    guard(|| {
        if config.is_null() || out.is_null() {
            return fail(HiseaStatus::NullPointer, "config or out is null");
        }
        unsafe { *out = ptr::null_mut() };
        let run = run_config(unsafe { &*config });
        let bench = match Benchmark::new(id) {
            Ok(b) => b,
            Err(e) => return from_error(e),
        };
        finish_run(hisea::run(&bench, &run), out)
    })
}

struct CallbackProblem {
    space: SearchSpace,
    f: unsafe extern "C" fn(*const f64, usize, *mut c_void) -> f64,
    user_data: *mut c_void,
}

// SAFETY: `parallel` is false, so the engine only calls back on the thread
// that entered `hisea_run_objective`.
unsafe impl Sync for CallbackProblem {}

impl Problem for CallbackProblem {
    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        // SAFETY: `x` is a live slice; the callback's own contract is the caller's.
        unsafe { (self.f)(x.as_ptr(), x.len(), self.user_data) }
    }

    fn parallel(&self) -> bool {
        false
    }
}

/// Minimises a caller-supplied objective over the box `[lower, upper]` of
/// dimension `n`. The callback runs on the calling thread only and receives
/// `user_data` unchanged; a non-finite return value aborts the run with
/// `HISEA_STATUS_NON_FINITE`.
///
/// # Safety
/// `lower` and `upper` must be valid for `n` reads, `config` for one read and
/// `out` for one write. `objective` must not unwind.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_objective(
    objective: HiseaObjective,
    user_data: *mut c_void,
    lower: *const f64,
    upper: *const f64,
    n: usize,
    config: *const HiseaConfig,
    out: *mut *mut HiseaRun,
) -> HiseaStatus {
    guard(|| {
        let Some(f) = objective else {
            return fail(HiseaStatus::NullPointer, "objective is null");
        };
        if lower.is_null() || upper.is_null() || config.is_null() || out.is_null() {
            return fail(HiseaStatus::NullPointer, "bounds, config or out is null");
        }
        unsafe { *out = ptr::null_mut() };
        let (lo, hi) = unsafe { (slice::from_raw_parts(lower, n).to_vec(), slice::from_raw_parts(upper, n).to_vec()) };
        let space = match SearchSpace::new(lo, hi) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let problem = CallbackProblem { space, f, user_data };
        let run = run_config(unsafe { &*config });
        finish_run(hisea::run(&problem, &run), out)
    })
}

fn with_run<T>(run: *const HiseaRun, default: T, f: impl FnOnce(&HiseaRun) -> T) -> T {
    if run.is_null() {
        set_error("run handle is null");
        return default;
    }
    // SAFETY: non-null handles come from `Box::into_raw` and stay live until freed.
    catch_unwind(AssertUnwindSafe(|| f(unsafe { &*run }))).unwrap_or(default)
}

/// Best fitness found, or NaN for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_best_fitness(run: *const HiseaRun) -> f64 {
    with_run(run, f64::NAN, |r| r.trace.best.f)
}

/// Dimension of the run's search space, or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_dim(run: *const HiseaRun) -> usize {
    with_run(run, 0, |r| r.trace.best.x.len())
}

/// Copies the best point into `out`, which must hold exactly the run's
/// dimension.
///
/// # Safety
/// `run` must be null or a live handle; `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_best_point(run: *const HiseaRun, out: *mut f64, len: usize) -> HiseaStatus {
    guard(|| {
        if run.is_null() || out.is_null() {
            return fail(HiseaStatus::NullPointer, "run or out is null");
        }
        let x = unsafe { &(*run).trace.best.x };
        if len != x.len() {
            return fail(HiseaStatus::BufferTooSmall, format!("run has {} dimensions, buffer holds {len}", x.len()));
        }
        unsafe { slice::from_raw_parts_mut(out, len).copy_from_slice(x) };
        HiseaStatus::Ok
    })
}

/// Generations run after the initial population, or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_generations(run: *const HiseaRun) -> usize {
    with_run(run, 0, |r| r.trace.generations)
}

/// Total objective evaluations, or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_evaluations(run: *const HiseaRun) -> usize {
    with_run(run, 0, |r| r.trace.evaluations)
}

/// Why the run stopped. A null handle reports `LOOP_LIMIT`.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_stop_reason(run: *const HiseaRun) -> HiseaStopReason {
    with_run(run, HiseaStopReason::LoopLimit, |r| match r.trace.stop_reason {
        StopReason::Threshold => HiseaStopReason::Threshold,
        StopReason::LoopLimit => HiseaStopReason::LoopLimit,
    })
}

/// Number of trace rows (generations + 1), or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_trace_len(run: *const HiseaRun) -> usize {
    with_run(run, 0, |r| r.trace.records.len())
}

/// Copies trace row `index` into `out`.
///
/// # Safety
/// `run` must be null or a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_trace_record(
    run: *const HiseaRun,
    index: usize,
    out: *mut HiseaGenerationRecord,
) -> HiseaStatus {
    guard(|| {
        if run.is_null() || out.is_null() {
            return fail(HiseaStatus::NullPointer, "run or out is null");
        }
        let records = unsafe { &(*run).trace.records };
        let Some(r) = records.get(index) else {
            return fail(HiseaStatus::InvalidArgument, format!("trace has {} rows, asked for {index}", records.len()));
        };
        unsafe {
            *out = HiseaGenerationRecord {
                generation: r.generation,
                evaluations: r.evaluations,
                best_fitness: r.best_fitness,
                mean_fitness: r.mean_fitness,
                pool_distance: r.pool_distance.unwrap_or(f64::NAN),
            }
        };
        HiseaStatus::Ok
    })
}

/// Releases a run handle. Null is ignored.
///
/// # Safety
/// `run` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hisea_run_free(run: *mut HiseaRun) {
    if !run.is_null() {
        drop(unsafe { Box::from_raw(run) });
    }
}
