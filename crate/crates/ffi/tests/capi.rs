use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ontolint_ffi::*;

fn last_error() -> String {
    let p = ontolint_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sniff_parse_serialize() {
    let ttl = b"@prefix ex: <http://e/> . ex:a ex:p ex:b , ex:c .";
    let mut fmt = OntolintFormat::Unknown;
    assert_eq!(unsafe { ontolint_sniff(ttl.as_ptr(), ttl.len(), &mut fmt) }, OntolintStatus::Ok);
    assert_eq!(fmt, OntolintFormat::Turtle);

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ontolint_graph_parse(ttl.as_ptr(), ttl.len(), fmt, &mut g) }, OntolintStatus::Ok);
    assert_eq!(unsafe { ontolint_graph_len(g) }, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ontolint_graph_to_ntriples(g, &mut s) }, OntolintStatus::Ok);
    let nt = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    assert_eq!(nt, "<http://e/a> <http://e/p> <http://e/b> .\n<http://e/a> <http://e/p> <http://e/c> .\n");
    unsafe {
        ontolint_string_free(s);
        ontolint_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let bad = b"<http://a> <http://p> .";
    let mut g = ptr::null_mut();
    let st = unsafe { ontolint_graph_parse(bad.as_ptr(), bad.len(), OntolintFormat::NTriples, &mut g) };
    assert_eq!(st, OntolintStatus::ParseError);
    assert!(g.is_null());
    assert!(last_error().contains("line 1"));

    let st = unsafe { ontolint_graph_parse(bad.as_ptr(), bad.len(), OntolintFormat::RdfXml, &mut g) };
    assert_eq!(st, OntolintStatus::Unsupported);
    let st = unsafe { ontolint_graph_parse(ptr::null(), 3, OntolintFormat::NTriples, &mut g) };
    assert_eq!(st, OntolintStatus::NullPointer);
    assert_eq!(unsafe { ontolint_graph_len(ptr::null()) }, 0);
    unsafe { ontolint_graph_free(ptr::null_mut()) };
}

#[test]
fn agreement() {
    let counts: [usize; 4] = [2, 0, 1, 1];
    let mut k = 0.0;
    assert_eq!(unsafe { ontolint_fleiss_kappa(counts.as_ptr(), 2, 2, &mut k) }, OntolintStatus::Ok);
    assert!((k + 1.0 / 3.0).abs() < 1e-12);
    let same: [usize; 4] = [2, 0, 2, 0];
    assert_eq!(unsafe { ontolint_fleiss_kappa(same.as_ptr(), 2, 2, &mut k) }, OntolintStatus::Undefined);

    let r = [0.0, 0.0, 0.0, 1.0, f64::NAN, 2.0];
    let mut a = 0.0;
    let st = unsafe { ontolint_krippendorff_alpha(r.as_ptr(), 3, 2, OntolintMetric::Nominal, &mut a) };
    assert_eq!(st, OntolintStatus::Ok);
    assert!(a.abs() < 1e-12);
    let frac = [0.5, 1.0];
    let st = unsafe { ontolint_krippendorff_alpha(frac.as_ptr(), 1, 2, OntolintMetric::Ordinal, &mut a) };
    assert_eq!(st, OntolintStatus::InvalidArgument);
}

#[test]
fn curie() {
    let text = CString::new("GO_0008150").unwrap();
    let (mut p, mut l, mut sep) = (ptr::null_mut(), ptr::null_mut(), 0);
    assert_eq!(unsafe { ontolint_parse_curie(text.as_ptr(), &mut p, &mut l, &mut sep) }, OntolintStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(p) }.to_str().unwrap(), "GO");
    assert_eq!(unsafe { CStr::from_ptr(l) }.to_str().unwrap(), "0008150");
    assert_eq!(sep as u8, b'_');
    unsafe {
        ontolint_string_free(p);
        ontolint_string_free(l);
    }
    let text = CString::new("no separator").unwrap();
    assert_eq!(unsafe { ontolint_parse_curie(text.as_ptr(), &mut p, &mut l, &mut sep) }, OntolintStatus::ParseError);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ontolint.h"

int main(void) {
    const char *nt = "<http://a> <http://p> \"x\" .\n";
    OntolintGraph *g = NULL;
    if (ontolint_graph_parse((const uint8_t *)nt, strlen(nt), ONTOLINT_FORMAT_N_TRIPLES, &g) != ONTOLINT_STATUS_OK) return 1;
    if (ontolint_graph_len(g) != 1) return 2;
    char *out = NULL;
    if (ontolint_graph_to_ntriples(g, &out) != ONTOLINT_STATUS_OK) return 3;
    fputs(out, stdout);
    ontolint_string_free(out);
    ontolint_graph_free(g);
    if (ontolint_graph_parse((const uint8_t *)"junk", 4, ONTOLINT_FORMAT_N_TRIPLES, &g) != ONTOLINT_STATUS_PARSE_ERROR) return 4;
    if (ontolint_last_error() == NULL) return 5;
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libontolint_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "<http://a> <http://p> \"x\" .\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("ontolint-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
