//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qtcodes.h"

int main(void) {
    const char *json = "{\"q\": 3, \"m\": 4, \"ell\": 2, \"lambda\": 2,"
                       " \"generators\": [[[1, 2, 0, 2], [2, 1, 0, 1]]]}";
    QtcCode *code = NULL;
    if (qtc_code_from_json(json, &code) != QTC_STATUS_OK) return 10;
    size_t dim = 0;
    if (qtc_code_dimension(code, &dim) != QTC_STATUS_OK || dim != 2) return 11;
    QtcDistance d;
    if (qtc_code_min_distance(code, 0, &d) != QTC_STATUS_OK || !d.finite || d.value != 6) return 12;
    char *report = NULL;
    if (qtc_code_bounds_json(code, 2, 0, &report) != QTC_STATUS_OK) return 13;
    if (strstr(report, "\"d_spec_s\"") == NULL) return 14;
    qtc_string_free(report);
    qtc_code_free(code);
    if (qtc_code_from_json("{", &code) != QTC_STATUS_PARSE || qtc_last_error() == NULL) return 15;
    printf("ok %s\n", qtc_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libqtcodes_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), format!("ok {}\n", env!("CARGO_PKG_VERSION")));
}
