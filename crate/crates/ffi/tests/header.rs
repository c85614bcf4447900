use std::path::PathBuf;
use std::process::Command;

fn header() -> (PathBuf, String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/beamkit.h");
    let text = std::fs::read_to_string(&path).expect("build.rs writes the header");
    (path, text)
}

#[test]
fn declares_every_exported_function() {
    let (_, text) = header();
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 10);
    for name in exported {
        assert!(
            text.contains(&format!(" {name}(")) || text.contains(&format!("*{name}(")),
            "{name} missing"
        );
    }
    for ty in [
        "BeamkitStatus",
        "BeamkitValue",
        "BeamkitBeam",
        "BEAMKIT_STATUS_NOT_CONVERGED",
    ] {
        assert!(text.contains(ty), "{ty} missing");
    }
}

#[test]
fn compiles_as_c_and_cpp() {
    let (path, _) = header();
    let dir = path.parent().unwrap();
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(dir)
            .arg("-")
            .stdin(std::process::Stdio::piped())
            .spawn()
            .and_then(|mut child| {
                use std::io::Write;
                child.stdin.take().unwrap().write_all(
                    b"#include \"beamkit.h\"\nint main(void) { return BEAMKIT_STATUS_OK; }\n",
                )?;
                child.wait_with_output()
            })
        else {
            eprintln!("{compiler} unavailable; skipping");
            continue;
        };
        assert!(
            out.status.success(),
            "{compiler}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
