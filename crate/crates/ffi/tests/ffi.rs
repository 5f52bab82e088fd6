use std::ffi::{c_void, CStr};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hisea_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    unsafe {
        hisea_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn small_config(seed: u64) -> HiseaConfig {
    HiseaConfig {
        n_f: 200,
        n_p: 20,
        n_g: 200,
        n_s: 50,
        max_loops: 10,
        seed,
        ..hisea_config_desk()
    }
}

#[test]
fn benchmark_queries() {
    assert_eq!(hisea_benchmark_count(), 30);
    let mut n = 0usize;
    unsafe {
        assert_eq!(hisea_benchmark_dim(12, &mut n), HiseaStatus::Ok);
        assert_eq!(n, 2);
        let (mut lo, mut hi) = ([0.0; 2], [0.0; 2]);
        assert_eq!(hisea_benchmark_bounds(12, lo.as_mut_ptr(), hi.as_mut_ptr(), 2), HiseaStatus::Ok);
        assert_eq!(lo, [-8.142, -12.275]);
        assert_eq!(hi, [6.858, 2.725]);
        assert_eq!(
            hisea_benchmark_bounds(12, lo.as_mut_ptr(), hi.as_mut_ptr(), 1),
            HiseaStatus::BufferTooSmall
        );

        let mut v = f64::NAN;
        let x = [0.0, -1.0];
        assert_eq!(hisea_benchmark_evaluate(13, x.as_ptr(), 2, &mut v), HiseaStatus::Ok);
        assert!((v - 3.0).abs() < 1e-12);
    }
}

#[test]
fn benchmark_errors_map_to_status_codes() {
    let mut n = 0usize;
    let mut v = 0.0;
    unsafe {
        assert_eq!(hisea_benchmark_dim(31, &mut n), HiseaStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(hisea_benchmark_dim(1, ptr::null_mut()), HiseaStatus::NullPointer);
        assert_eq!(last_error(), "out_dim is null");

        let far = [101.0; 30];
        assert_eq!(hisea_benchmark_evaluate(1, far.as_ptr(), 30, &mut v), HiseaStatus::OutOfBounds);
        let edge = [2.0; 30];
        assert_eq!(hisea_benchmark_evaluate(24, edge.as_ptr(), 30, &mut v), HiseaStatus::NonFinite);

        let ok = [0.0; 30];
        assert_eq!(hisea_benchmark_evaluate(1, ok.as_ptr(), 30, &mut v), HiseaStatus::Ok);
        assert_eq!(last_error(), "");
    }
}

#[test]
fn last_error_truncates_and_reports_length() {
    unsafe {
        hisea_benchmark_dim(1, ptr::null_mut());
        let full = hisea_last_error_message(ptr::null_mut(), 0);
        assert_eq!(full, "out_dim is null".len());
        let mut buf = [1 as std::ffi::c_char; 4];
        assert_eq!(hisea_last_error_message(buf.as_mut_ptr(), 4), full);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "out");
    }
}

#[test]
fn benchmark_run_matches_the_rust_api() {
    let cfg = small_config(7);
    let mut run: *mut HiseaRun = ptr::null_mut();
    unsafe {
        assert_eq!(hisea_run_benchmark(11, &cfg, &mut run), HiseaStatus::Ok);
        assert!(!run.is_null());

        let rust = hisea::run(
            &hisea::Benchmark::new(11).unwrap(),
            &hisea::RunConfig {
                n_f: 200,
                n_p: 20,
                n_g: 200,
                n_s: 50,
                max_loops: 10,
                seed: 7,
                ..hisea::RunConfig::desk()
            },
        )
        .unwrap();

        assert_eq!(hisea_run_best_fitness(run), rust.best.f);
        assert_eq!(hisea_run_dim(run), 2);
        let mut x = [0.0; 2];
        assert_eq!(hisea_run_best_point(run, x.as_mut_ptr(), 2), HiseaStatus::Ok);
        assert_eq!(x.to_vec(), rust.best.x);
        assert_eq!(hisea_run_best_point(run, x.as_mut_ptr(), 3), HiseaStatus::BufferTooSmall);
        assert_eq!(hisea_run_generations(run), rust.generations);
        assert_eq!(hisea_run_evaluations(run), rust.evaluations);

        let len = hisea_run_trace_len(run);
        assert_eq!(len, rust.records.len());
        let mut rec = HiseaGenerationRecord {
            generation: 99,
            evaluations: 0,
            best_fitness: 0.0,
            mean_fitness: 0.0,
            pool_distance: 0.0,
        };
        assert_eq!(hisea_run_trace_record(run, 0, &mut rec), HiseaStatus::Ok);
        assert_eq!(rec.generation, 0);
        assert_eq!(rec.evaluations, 200);
        assert!(rec.pool_distance.is_nan());
        assert_eq!(hisea_run_trace_record(run, len - 1, &mut rec), HiseaStatus::Ok);
        assert_eq!(rec.best_fitness, rust.best.f);
        assert_eq!(rec.evaluations, rust.evaluations);
        assert_eq!(hisea_run_trace_record(run, len, &mut rec), HiseaStatus::InvalidArgument);

        let expected = match rust.stop_reason {
            hisea::StopReason::Threshold => HiseaStopReason::Threshold,
            hisea::StopReason::LoopLimit => HiseaStopReason::LoopLimit,
        };
        assert_eq!(hisea_run_stop_reason(run), expected);
        hisea_run_free(run);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        assert!(hisea_run_best_fitness(ptr::null()).is_nan());
        assert_eq!(hisea_run_dim(ptr::null()), 0);
        assert_eq!(hisea_run_trace_len(ptr::null()), 0);
        assert_eq!(hisea_run_generations(ptr::null()), 0);
        assert_eq!(hisea_run_best_point(ptr::null(), ptr::null_mut(), 0), HiseaStatus::NullPointer);
        hisea_run_free(ptr::null_mut());
    }
}

#[test]
fn invalid_config_is_rejected() {
    let mut cfg = small_config(1);
    cfg.n_p = 0;
    let mut run: *mut HiseaRun = ptr::dangling_mut();
    unsafe {
        assert_eq!(hisea_run_benchmark(1, &cfg, &mut run), HiseaStatus::InvalidArgument);
        assert!(run.is_null());
        assert!(last_error().contains("n_p"), "{}", last_error());
        assert_eq!(hisea_run_benchmark(1, ptr::null(), &mut run), HiseaStatus::NullPointer);
    }
}

unsafe extern "C" fn sphere(x: *const f64, n: usize, user_data: *mut c_void) -> f64 {
    let calls = unsafe { &mut *user_data.cast::<usize>() };
    *calls += 1;
    let x = unsafe { std::slice::from_raw_parts(x, n) };
    x.iter().map(|v| (v - 0.5) * (v - 0.5)).sum()
}

unsafe extern "C" fn not_a_number(_: *const f64, _: usize, _: *mut c_void) -> f64 {
    f64::NAN
}

#[test]
fn callback_objective() {
    let cfg = small_config(3);
    let lo = [-2.0; 3];
    let hi = [2.0; 3];
    let mut calls = 0usize;
    let mut run: *mut HiseaRun = ptr::null_mut();
    unsafe {
        let status = hisea_run_objective(
            Some(sphere),
            (&mut calls as *mut usize).cast(),
            lo.as_ptr(),
            hi.as_ptr(),
            3,
            &cfg,
            &mut run,
        );
        assert_eq!(status, HiseaStatus::Ok, "{}", last_error());
        assert_eq!(calls, hisea_run_evaluations(run));
        let f = hisea_run_best_fitness(run);
        assert!(f < 0.5, "{f}");
        let mut x = [0.0; 3];
        hisea_run_best_point(run, x.as_mut_ptr(), 3);
        let recomputed: f64 = x.iter().map(|v| (v - 0.5) * (v - 0.5)).sum();
        assert_eq!(recomputed, f);
        hisea_run_free(run);
    }
}

#[test]
fn callback_errors() {
    let cfg = small_config(3);
    let lo = [0.0; 2];
    let hi = [1.0; 2];
    let mut run: *mut HiseaRun = ptr::null_mut();
    unsafe {
        let s = hisea_run_objective(None, ptr::null_mut(), lo.as_ptr(), hi.as_ptr(), 2, &cfg, &mut run);
        assert_eq!(s, HiseaStatus::NullPointer);
        let s = hisea_run_objective(Some(not_a_number), ptr::null_mut(), lo.as_ptr(), hi.as_ptr(), 2, &cfg, &mut run);
        assert_eq!(s, HiseaStatus::NonFinite);
        assert!(run.is_null());
        let s = hisea_run_objective(Some(not_a_number), ptr::null_mut(), hi.as_ptr(), lo.as_ptr(), 2, &cfg, &mut run);
        assert_eq!(s, HiseaStatus::InvalidArgument);
    }
}

#[test]
fn presets() {
    let p = hisea_config_paper();
    assert_eq!((p.n_f, p.n_p, p.max_loops), (5000, 300, 300));
    let d = hisea_config_desk();
    assert_eq!((d.n_f, d.n_p, d.max_loops), (500, 100, 60));
}

fn header() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hisea.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for symbol in [
        "HISEA_STATUS_OK",
        "HISEA_STOP_REASON_THRESHOLD",
        "typedef struct HiseaRun HiseaRun",
        "HiseaConfig",
        "HiseaGenerationRecord",
        "hisea_last_error_message",
        "hisea_benchmark_count",
        "hisea_benchmark_dim",
        "hisea_benchmark_bounds",
        "hisea_benchmark_evaluate",
        "hisea_config_paper",
        "hisea_config_desk",
        "hisea_run_benchmark",
        "hisea_run_objective",
        "hisea_run_best_fitness",
        "hisea_run_best_point",
        "hisea_run_dim",
        "hisea_run_generations",
        "hisea_run_evaluations",
        "hisea_run_stop_reason",
        "hisea_run_trace_len",
        "hisea_run_trace_record",
        "hisea_run_free",
    ] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(header()).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
