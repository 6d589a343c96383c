use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kgroup_ffi::*;

fn factors(g: *const KgAbGroup) -> (usize, Vec<u64>) {
    unsafe {
        let n = kg_abgroup_factor_count(g);
        let fs = (0..n)
            .map(|i| {
                let mut d = 0;
                assert_eq!(kg_abgroup_factor(g, i, &mut d), KgStatus::Ok);
                d
            })
            .collect();
        (kg_abgroup_free_rank(g), fs)
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kg_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn k_groups_of_builtins() {
    unsafe {
        let name = CString::new("fin").unwrap();
        let mut fin = ptr::null_mut();
        assert_eq!(kg_groupoid_builtin(name.as_ptr(), 0, 4, 0, &mut fin), KgStatus::Ok);
        assert_eq!(kg_groupoid_truncation(fin), 4);
        let mut g = ptr::null_mut();
        assert_eq!(kg_k1(fin, 0, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (0, vec![2]));
        kg_abgroup_free(g);
        assert_eq!(kg_k0(fin, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (1, vec![]));
        kg_abgroup_free(g);
        let mut holds = false;
        assert_eq!(kg_groupoid_condition_star(fin, 0, &mut holds), KgStatus::Ok);
        assert!(holds);
        kg_groupoid_free(fin);

        let name = CString::new("freemod").unwrap();
        let mut fm = ptr::null_mut();
        assert_eq!(kg_groupoid_builtin(name.as_ptr(), 3, 2, 0, &mut fm), KgStatus::Ok);
        assert_eq!(kg_k1(fm, 0, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (0, vec![2]));
        kg_abgroup_free(g);
        kg_groupoid_free(fm);
    }
}

#[test]
fn monoids_and_coefficients() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(kg_monoid_cyclic(6, &mut m), KgStatus::Ok);
        assert_eq!(kg_monoid_size(m), 6);
        let mut g = ptr::null_mut();
        assert_eq!(kg_grothendieck(m, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (0, vec![6]));
        let json = kg_abgroup_to_json(g);
        assert_eq!(
            CStr::from_ptr(json).to_str().unwrap(),
            r#"{"free_rank":0,"invariant_factors":[6]}"#
        );
        kg_string_free(json);
        kg_abgroup_free(g);
        assert_eq!(kg_coefficients(m, 4, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (0, vec![2]));
        kg_abgroup_free(g);
        kg_monoid_free(m);

        let doc =
            CString::new(r#"{"kind":"monoid-table","elements":["0","1"],"unit":"0","table":[["0","1"],["1","1"]]}"#)
                .unwrap();
        assert_eq!(kg_monoid_from_json(doc.as_ptr(), &mut m), KgStatus::Ok);
        assert_eq!(kg_grothendieck(m, &mut g), KgStatus::Ok);
        assert_eq!(factors(g), (0, vec![]));
        kg_abgroup_free(g);
        kg_monoid_free(m);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(kg_monoid_from_json(ptr::null(), &mut m), KgStatus::InvalidArgument);
        assert!(last_error().contains("null"));
        let bad = CString::new(r#"{"kind":"monoid-table","elements":["0"],"unit":"0","table":[["1"]]}"#).unwrap();
        assert_eq!(kg_monoid_from_json(bad.as_ptr(), &mut m), KgStatus::InvalidInput);
        assert!(m.is_null());
        let garbage = CString::new("{").unwrap();
        assert_eq!(kg_monoid_from_json(garbage.as_ptr(), &mut m), KgStatus::InvalidInput);

        let name = CString::new("fin").unwrap();
        let mut fin = ptr::null_mut();
        assert_eq!(kg_groupoid_builtin(name.as_ptr(), 0, 8, 0, &mut fin), KgStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(kg_k1(fin, 100, &mut g), KgStatus::CapExceeded);
        kg_groupoid_free(fin);

        let unknown = CString::new("sets").unwrap();
        assert_eq!(
            kg_groupoid_builtin(unknown.as_ptr(), 0, 3, 0, &mut fin),
            KgStatus::InvalidArgument
        );
        assert_eq!(kg_monoid_cyclic(0, &mut m), KgStatus::InvalidArgument);

        assert_eq!(kg_monoid_cyclic(2, &mut m), KgStatus::Ok);
        assert_eq!(kg_coefficients(m, 1, &mut g), KgStatus::InvalidInput);
        assert_eq!(kg_abgroup_factor(ptr::null(), 0, &mut 0), KgStatus::InvalidArgument);
        kg_monoid_free(m);
        assert!(kg_abgroup_to_json(ptr::null()).is_null());
        assert_eq!(kg_monoid_size(ptr::null()), 0);
    }
}

#[test]
fn condition_star_failure_maps_to_its_code() {
    let doc = r#"{
        "kind": "groupoid-custom",
        "generators": ["x"],
        "truncation": 2,
        "objects": [
            {"degree": [0], "points": 0},
            {"degree": [1], "points": 2, "generators": [[[0, 1]]]},
            {"degree": [2], "points": 2, "generators": [[[0, 1]]]}
        ],
        "translations": [
            {"generator": "x", "source": [0], "images": []},
            {"generator": "x", "source": [1], "images": [[]]}
        ]
    }"#;
    unsafe {
        let doc = CString::new(doc).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(kg_groupoid_from_json(doc.as_ptr(), &mut g), KgStatus::Ok);
        let mut holds = true;
        assert_eq!(kg_groupoid_condition_star(g, 0, &mut holds), KgStatus::Ok);
        assert!(!holds);
        kg_groupoid_free(g);
    }
}

#[test]
fn header_is_current_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/kgroup.h")).unwrap();
    for name in [
        "kg_k1",
        "kg_grothendieck",
        "kg_last_error",
        "KG_STATUS_CAP_EXCEEDED",
        "typedef struct KgMonoid KgMonoid",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping link check");
        return;
    };
    assert!(cc.status.success());
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libkgroup_ffi.a");
    let out = tempfile_path("kgroup_smoke");
    let mut cmd = Command::new("cc");
    cmd.arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg("-o")
        .arg(&out);
    if lib.exists() {
        cmd.arg(&lib).args(["-lpthread", "-ldl", "-lm"]);
    } else {
        cmd.arg("-fsyntax-only");
    }
    let status = cmd.status().unwrap();
    assert!(status.success(), "C compile failed");
    if lib.exists() {
        let run = Command::new(&out).output().unwrap();
        assert!(run.status.success(), "smoke binary exited with {:?}", run.status);
        assert_eq!(
            String::from_utf8_lossy(&run.stdout).trim(),
            r#"{"free_rank":0,"invariant_factors":[2]}"#
        );
    }
}

fn tempfile_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("{stem}_{}", std::process::id()))
}
