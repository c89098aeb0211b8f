use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cartwidth_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { cw_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cw_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn generate(spec: &str) -> *mut CwGraph {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cw_graph_generate(spec.as_ptr(), &mut g) },
        CwStatus::Ok
    );
    g
}

#[test]
fn graph_lifecycle() {
    let edges = [0usize, 1, 1, 2, 2, 3, 3, 0];
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cw_graph_new(4, edges.as_ptr(), 4, &mut g) },
        CwStatus::Ok
    );
    assert_eq!(unsafe { cw_graph_vertex_count(g) }, 4);
    assert_eq!(unsafe { cw_graph_edge_count(g) }, 4);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { cw_graph_write_gr(g, &mut text) }, CwStatus::Ok);
    assert_eq!(take(text), "p tw 4 4\n1 2\n1 4\n2 3\n3 4\n");
    let mut kappa = 0;
    assert_eq!(
        unsafe { cw_vertex_connectivity(g, &mut kappa) },
        CwStatus::Ok
    );
    assert_eq!(kappa, 2);
    unsafe { cw_graph_free(g) };
    unsafe { cw_graph_free(ptr::null_mut()) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let loops = [1usize, 1];
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cw_graph_new(3, loops.as_ptr(), 1, &mut g) },
        CwStatus::InvalidInput
    );
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    let bad = [0usize, 7];
    assert_eq!(
        unsafe { cw_graph_new(3, bad.as_ptr(), 1, &mut g) },
        CwStatus::IndexOutOfRange
    );

    assert_eq!(
        unsafe { cw_graph_new(3, ptr::null(), 2, &mut g) },
        CwStatus::NullPointer
    );
    assert!(last_error().contains("edges"));

    let spec = CString::new("moebius:n=3").unwrap();
    assert_eq!(
        unsafe { cw_graph_generate(spec.as_ptr(), &mut g) },
        CwStatus::InvalidParameter
    );

    let big = generate("grid:n=6");
    let mut w = 0;
    assert_eq!(
        unsafe { cw_exact_treewidth(big, 25, 0, &mut w, ptr::null_mut()) },
        CwStatus::Resource
    );
    unsafe { cw_graph_free(big) };
}

#[test]
fn treewidth_and_decompositions() {
    let g = generate("grid:n=4");
    let mut w = 0;
    let mut td = ptr::null_mut();
    assert_eq!(
        unsafe { cw_exact_treewidth(g, 0, 0, &mut w, &mut td) },
        CwStatus::Ok
    );
    assert_eq!(w, 4);
    let mut valid = false;
    let mut violations = ptr::null_mut();
    assert_eq!(
        unsafe { cw_decomposition_validate(td, g, &mut valid, &mut violations) },
        CwStatus::Ok
    );
    assert!(valid);
    assert_eq!(take(violations), "");
    let mut width = 0;
    assert_eq!(
        unsafe { cw_decomposition_width(td, &mut width) },
        CwStatus::Ok
    );
    assert_eq!(width, 4);
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { cw_decomposition_write_td(td, &mut text) },
        CwStatus::Ok
    );
    assert!(take(text).starts_with("s td "));
    unsafe { cw_decomposition_free(td) };

    let mut hw = 0;
    assert_eq!(
        unsafe { cw_heuristic_treewidth(g, CwStrategy::MinFill, &mut hw, ptr::null_mut()) },
        CwStatus::Ok
    );
    assert!(hw >= 4);
    unsafe { cw_graph_free(g) };
}

#[test]
fn theorem_bound_and_product() {
    let (mut value, mut vacuous) = (0i64, true);
    assert_eq!(
        unsafe { cw_theorem_bound(2, 5, &mut value, &mut vacuous) },
        CwStatus::Ok
    );
    assert_eq!((value, vacuous), (5, false));
    assert_eq!(
        unsafe { cw_theorem_bound(3, 4, &mut value, &mut vacuous) },
        CwStatus::Ok
    );
    assert_eq!((value, vacuous), (-1, true));

    let c = generate("cycle:n=5");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { cw_cartesian_product(c, c, &mut p) }, CwStatus::Ok);
    assert_eq!(unsafe { cw_graph_vertex_count(p) }, 25);
    assert_eq!(unsafe { cw_graph_edge_count(p) }, 50);
    unsafe { cw_graph_free(p) };
    unsafe { cw_graph_free(c) };
}

#[test]
fn cross_bramble_order() {
    let g = generate("grid:n=3");
    // the nine crosses: row r plus column c
    let mut offsets = vec![0usize];
    let mut vertices = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let mut e: Vec<usize> = (0..3).map(|j| r * 3 + j).collect();
            e.extend((0..3).filter(|&i| i != r).map(|i| i * 3 + c));
            vertices.extend(e);
            offsets.push(vertices.len());
        }
    }
    let (mut order, mut certified) = (0, false);
    let status = unsafe {
        cw_bramble_order(
            g,
            offsets.as_ptr(),
            vertices.as_ptr(),
            9,
            0,
            &mut order,
            &mut certified,
        )
    };
    assert_eq!(status, CwStatus::Ok);
    assert_eq!((order, certified), (3, true));
    unsafe { cw_graph_free(g) };
}

#[test]
fn refute_and_verify_round_trip() {
    let c = generate("cycle:n=5");
    let j = [0usize, 6, 12, 18, 24];
    let mut avoiding = false;
    let mut transcript = ptr::null_mut();
    let status = unsafe { cw_refute(c, c, 2, j.as_ptr(), j.len(), &mut avoiding, &mut transcript) };
    assert_eq!(status, CwStatus::Ok);
    let transcript = take(transcript);
    assert!(transcript.starts_with("refutation "));

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { cw_cartesian_product(c, c, &mut p) }, CwStatus::Ok);
    let cert = CString::new(transcript).unwrap();
    let mut valid = false;
    let mut messages = ptr::null_mut();
    assert_eq!(
        unsafe { cw_verify_certificate(cert.as_ptr(), p, 0, &mut valid, &mut messages) },
        CwStatus::Ok
    );
    let messages = take(messages);
    assert!(valid, "{messages}");

    let malformed = CString::new("bramble x\n").unwrap();
    assert_eq!(
        unsafe { cw_verify_certificate(malformed.as_ptr(), p, 0, &mut valid, ptr::null_mut()) },
        CwStatus::Parse
    );
    unsafe { cw_graph_free(p) };
    unsafe { cw_graph_free(c) };
}

#[test]
fn bounds_json() {
    let spec = CString::new("product:path:n=4,path:n=4").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { cw_product_bounds_json(spec.as_ptr(), 0, false, 0, 0, &mut json) },
        CwStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["theorem_lower"]["value"], 3);
    assert_eq!(v["exact"]["value"], 4);

    let spec = CString::new("product:cycle:n=5,path:n=5").unwrap();
    assert_eq!(
        unsafe { cw_product_bounds_json(spec.as_ptr(), 2, false, 0, 0, &mut json) },
        CwStatus::Precondition
    );
    assert!(last_error().contains("factor H"));
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cartwidth.h"))
            .unwrap();
    let source =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    for line in source.lines().filter(|l| l.contains("extern \"C\" fn ")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"cartwidth.h\"\nint main(void) { CwGraph *g = 0; return cw_graph_vertex_count(g) == 0 ? 0 : 1; }\n",
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
