use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holim")).args(args).output().expect("spawn holim")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bound_of_the_pullback() {
    let o = run(&["bound", "--shape", &data("pullback.json"), "--conn", "a=2,b=5,c=3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn hoc_document_has_eleven_objects() {
    let o = run(&["hoc", "--functor", &data("incl_p01_p02.json")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let objects = v["objects"].as_array().unwrap();
    assert_eq!(objects.len(), 11);
    assert_eq!(objects[0], "*:*");
}

#[test]
fn spheres_over_the_pullback_are_tight() {
    let o = run(&["verify-a", "--diagram", &data("spheres_pullback.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("tight: first nonvanishing degree 2"), "{out}");
}

#[test]
fn fiber_sequence_on_the_example() {
    let o = run(&["verify-b", "--functor", &data("incl_p01_p02.json"), "--diagram", &data("example_p02.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS (12 of 12 checks passed)"));
}

#[test]
fn exit_codes() {
    let ok = run(&["validate", "--category", &data("pullback.json")]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("not_monotone.json");
    std::fs::write(&bad, r#"{"source":"p0(1)","target":"p0(2)","objects":{"+":"12","1":"1","+1":"1"}}"#).unwrap();
    let o = run(&["validate", "--functor", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let missing = run(&["validate", "--category", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
}

#[test]
fn random_suites_are_deterministic() {
    for verb in ["verify-a", "verify-b"] {
        let args = [verb, "--random", "4", "--seed", "11"];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}
