use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use signed_balance_ffi::*;

fn parse(text: &str) -> *mut SbGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sb_graph_parse(text.as_ptr(), &mut g) }, SbStatus::Ok);
    g
}

fn measure(g: *const SbGraph, name: &str) -> (SbStatus, f64) {
    let name = CString::new(name).unwrap();
    let mut v = f64::NAN;
    let s = unsafe { sb_measure(g, name.as_ptr(), &mut v) };
    (s, v)
}

fn last_error() -> String {
    let p = sb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn build_measure_free() {
    let us = [0usize, 1, 0];
    let vs = [1usize, 2, 2];
    let signs = [1i32, 1, -1];
    let mut g = ptr::null_mut();
    let s = unsafe { sb_graph_new(3, us.as_ptr(), vs.as_ptr(), signs.as_ptr(), 3, &mut g) };
    assert_eq!(s, SbStatus::Ok);
    unsafe {
        assert_eq!(sb_graph_node_count(g), 3);
        assert_eq!(sb_graph_edge_count(g), 3);
        assert_eq!(sb_graph_negative_count(g), 1);
        let mut balanced = -1;
        assert_eq!(sb_graph_is_balanced(g, &mut balanced), SbStatus::Ok);
        assert_eq!(balanced, 0);
    }
    // one unbalanced triangle: L = 1, F = 1 - 2/3, T = 0
    assert_eq!(measure(g, "L"), (SbStatus::Ok, 1.0));
    let (s, f) = measure(g, "F");
    assert_eq!(s, SbStatus::Ok);
    assert!((f - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(measure(g, "T"), (SbStatus::Ok, 0.0));
    let (mut lo, mut hi, mut exact) = (0usize, 0usize, 0i32);
    assert_eq!(unsafe { sb_frustration(g, 0, &mut lo, &mut hi, &mut exact) }, SbStatus::Ok);
    assert_eq!((lo, hi, exact), (1, 1, 1));
    unsafe { sb_graph_free(g) };
}

#[test]
fn errors_carry_messages() {
    let mut g = ptr::null_mut();
    let signs = [2i32];
    let s = unsafe { sb_graph_new(2, [0usize].as_ptr(), [1usize].as_ptr(), signs.as_ptr(), 1, &mut g) };
    assert_eq!(s, SbStatus::InvalidArgument);
    assert!(last_error().contains("sign"));
    assert!(g.is_null());

    let bad = CString::new("a b +1\na\tb -1\n").unwrap();
    assert_eq!(unsafe { sb_graph_parse(bad.as_ptr(), &mut g) }, SbStatus::ParseError);
    assert!(last_error().contains("line 2"));

    assert_eq!(unsafe { sb_graph_parse(ptr::null(), &mut g) }, SbStatus::NullPointer);
    assert_eq!(measure(ptr::null(), "D").0, SbStatus::NullPointer);

    let h = parse("a b +\nb c -\n");
    assert_eq!(measure(h, "Q").0, SbStatus::InvalidArgument);
    // a single edge has edge-average degree 1, where A is undefined
    let single = parse("a b +\n");
    assert_eq!(measure(single, "A").0, SbStatus::Undefined);
    unsafe {
        sb_graph_free(h);
        sb_graph_free(single);
        sb_graph_free(ptr::null_mut());
        assert_eq!(sb_graph_node_count(ptr::null()), 0);
    }
}

#[test]
fn budget_exhaustion_reports_bounds() {
    // all-negative K12: L = 30, far beyond a budget of 10 visits
    let mut text = String::new();
    for u in 0..12 {
        for v in u + 1..12 {
            text.push_str(&format!("{u} {v} -1\n"));
        }
    }
    let g = parse(&text);
    let (mut lo, mut hi, mut exact) = (0usize, 0usize, 1i32);
    let s = unsafe { sb_frustration(g, 10, &mut lo, &mut hi, &mut exact) };
    assert_eq!(s, SbStatus::Infeasible);
    assert_eq!(exact, 0);
    assert!(lo <= 30 && 30 <= hi, "{lo} {hi}");
    unsafe { sb_graph_free(g) };
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/signed_balance.h");
    let dir = tempfile_dir();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ SbGraph *g = 0; return (int)sb_graph_node_count(g) + SB_STATUS_OK; }}\n"
        ),
    )
    .unwrap();
    let Ok(out) = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&src).output() else {
        eprintln!("no C compiler; header syntax check skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sb-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
