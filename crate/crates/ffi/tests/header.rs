use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/opgs.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "typedef struct OpgsSystem OpgsSystem;",
        "OPGS_STATUS_OK = 0",
        "OPGS_STATUS_BUDGET_EXCEEDED = 6",
        "OPGS_ORDER_DLEX = 2",
        "opgs_system_from_catalog(",
        "opgs_system_from_text(",
        "opgs_system_free(",
        "opgs_normal_form(",
        "opgs_gs_check(",
        "opgs_compare(",
        "opgs_basis_counts(",
        "const char *opgs_last_error_message(void);",
        "void opgs_string_free(char *s);",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
    assert!(h.starts_with("#ifndef OPGS_H"));
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/header-<hash>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles and runs a small C program against the header and the static
/// library, when a C compiler is available.
#[test]
fn c_program_links() {
    let lib = target_dir().join("libopgs_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "opgs.h"

int main(void) {
    OpgsSystem *sys = NULL;
    if (opgs_system_from_catalog("DRB", "1", false, &sys) != OPGS_STATUS_OK) return 1;
    char *nf = NULL;
    if (opgs_normal_form(sys, "D(P(x))", NULL, 0, &nf) != OPGS_STATUS_OK) return 2;
    int ok = strcmp(nf, "x") == 0;
    opgs_string_free(nf);
    if (opgs_normal_form(sys, "P(x", NULL, 0, &nf) != OPGS_STATUS_SYNTAX) return 3;
    if (opgs_last_error_message() == NULL) return 4;
    opgs_system_free(sys);
    printf("%s\n", opgs_version());
    return ok ? 0 : 5;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), env!("CARGO_PKG_VERSION"));
}
