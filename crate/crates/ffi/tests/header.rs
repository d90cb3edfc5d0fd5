//! The generated C header declares every exported function and compiles.

use std::path::Path;
use std::process::Command;

fn exported() -> Vec<String> {
    let src = include_str!("../src/lib.rs");
    src.lines()
        .filter_map(|l| l.split_once("extern \"C\" fn ").map(|(_, rest)| rest.split('(').next().unwrap().to_string()))
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/bs_edt0l.h")).unwrap();
    let names = exported();
    assert!(names.len() >= 15, "{names:?}");
    for name in names {
        assert!(header.contains(&format!(" {name}(")) || header.contains(&format!("*{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        return;
    };
    assert!(cc.status.success());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = std::env::temp_dir().join(format!("bs_edt0l_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"bs_edt0l.h\"\nint main(void) { BsElement *e = 0; return bs_element_parse(3, \"ba\", &e) == BS_STATUS_OK ? 0 : 1; }\n")
        .unwrap();
    let out = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg("-I").arg(&dir).arg(&src).output().unwrap();
    std::fs::remove_file(&src).unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
