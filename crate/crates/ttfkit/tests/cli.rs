use std::path::PathBuf;
use std::process::{Command, Output};

fn ttfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttfkit")).args(args).output().unwrap()
}

fn gallery_file() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("gallery/gallery.ttf")
        .display()
        .to_string()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ttfkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn analyze_one_ideal_as_json() {
    let g = gallery_file();
    let out = ttfkit(&["analyze", "--ring", &g, "--ideal", "evens"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["ideal"]["members"], serde_json::json!([0, 2, 4]));
    assert_eq!(v["commutative"]["idempotent_generator"], 4);
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn analyze_every_ideal() {
    let f = scratch("z6.ttf", "ring R = zn(6)\n");
    let out = ttfkit(&["analyze", "--ring", &f]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    let text = ttfkit(&["analyze", "--ring", &f, "--format", "text", "--timings"]);
    assert!(text.status.success());
}

#[test]
fn enumerate_and_checks() {
    let g = gallery_file();
    let out = ttfkit(&["enumerate-ideals", "--ring", &g, "--idempotent-only"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ut2 = v.as_array().unwrap().iter().find(|l| l["ring"] == "ut2").unwrap();
    assert_eq!(ut2["ideals"].as_array().unwrap().len(), 4);

    let out = ttfkit(&["check-lfp", "--ring", &g, "--ideal", "i2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lfp"]["via_fix_closure"]["verdict"], "certified");

    let out = ttfkit(&["check-commutative", "--ring", &g, "--ideal", "threes"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["idempotent_generator"], 3);
}

#[test]
fn input_errors_exit_with_two() {
    let g = gallery_file();
    assert_eq!(ttfkit(&["analyze", "--ring", &g, "--ideal", "nope"]).status.code(), Some(2));
    assert_eq!(ttfkit(&["analyze", "--ring", "/nonexistent/x.ttf"]).status.code(), Some(2));
    let bad = scratch("bad.ttf", "ring R = zn(6)\nideal I in R = members [0,1]\n");
    let out = ttfkit(&["analyze", "--ring", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(ttfkit(&["analyze"]).status.code(), Some(2));
    // not commutative
    assert_eq!(ttfkit(&["check-commutative", "--ring", &g, "--ideal", "i2"]).status.code(), Some(2));
}

#[test]
fn caps_are_enforced() {
    let g = gallery_file();
    let out = Command::new(env!("CARGO_BIN_EXE_ttfkit"))
        .args(["enumerate-ideals", "--ring", &g])
        .env("TTFKIT_CAP_BYTES", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = ttfkit(&["--ideal-cap", "2", "enumerate-ideals", "--ring", &g]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_ttfkit"))
        .args(["enumerate-ideals", "--ring", &g])
        .env("TTFKIT_CAP_BYTES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gallery_verify() {
    let out = ttfkit(&["gallery", "--verify", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);

    let mut fx: serde_json::Value = serde_json::from_str(ttfkit::gallery::FIXTURES).unwrap();
    fx["rings"][4]["idempotent_ideals"] = serde_json::json!(5);
    let f = scratch("fixtures.json", &fx.to_string());
    let out = ttfkit(&["gallery", "--verify", "--fixtures", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ut2.idempotent_ideals"));
}
