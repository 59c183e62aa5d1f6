use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn infalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infalg")).args(args).env_remove("INFALG_CAP").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn chain3() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/negative/chain3.json")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_string_writes_sixteen_elements() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = infalg(&["gen", "string", "2", "3", "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    let v = json_of(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["extractors"].as_object().unwrap().len(), 4);
    let o = infalg(&["verify", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("result: pass\n"));
}

#[test]
fn multivariate_is_completely_atomistic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    assert_eq!(code(&infalg(&["gen", "multivariate", "2", "2", "-o", s(&out)])), 0);
    let o = infalg(&["classify", s(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("completely atomistic"));
    let o = infalg(&["--format", "json", "atoms", s(&out)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["atoms"].as_array().unwrap().len(), 4);
}

#[test]
fn string_algebra_has_no_dual() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    infalg(&["gen", "string", "2", "3", "-o", s(&out)]);
    let o = infalg(&["dualize", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("distributiv"));
}

#[test]
fn dual_of_three_chain_is_two_chain() {
    let o = infalg(&["dualize", s(&chain3())]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["leq"], serde_json::json!([[true, true], [false, true]]));
}

#[test]
fn antichain_with_trivial_equivalences_reconstructs() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let leq: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i == j).collect()).collect();
    let doc = serde_json::json!({
        "n": 4,
        "leq": leq,
        "equivalences": { "delta": [0, 1, 2, 3], "nabla": [0, 0, 0, 0] },
    });
    std::fs::write(&q, doc.to_string()).unwrap();
    let out = dir.path().join("a.json");
    assert_eq!(code(&infalg(&["reconstruct", s(&q), "-o", s(&out)])), 0);
    let v = json_of(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["extractors"].as_object().unwrap().len(), 2);
    assert_eq!(code(&infalg(&["verify", s(&out)])), 0);
    let o = infalg(&["roundtrip", s(&q)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("isomorphisms verified"));
}

#[test]
fn check_hom_accepts_identity_and_rejects_constant() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    let constant = dir.path().join("c.json");
    std::fs::write(&id, r#"{"f":[0,1,2],"g":[0]}"#).unwrap();
    std::fs::write(&constant, r#"{"f":[0,0,0],"g":[0]}"#).unwrap();
    let c = chain3();
    assert_eq!(code(&infalg(&["check-hom", s(&c), s(&c), s(&id)])), 0);
    let o = infalg(&["check-hom", s(&c), s(&c), s(&constant)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("not a homomorphism"));
}

#[test]
fn cap_flag_overrides_environment() {
    let run = |cap_env: &str, extra: &[&str]| {
        let mut args = extra.to_vec();
        args.extend(["gen", "string", "2", "3"]);
        Command::new(env!("CARGO_BIN_EXE_infalg")).args(&args).env("INFALG_CAP", cap_env).output().unwrap()
    };
    assert_eq!(code(&run("3", &[])), 1);
    assert_eq!(code(&run("3", &["--cap", "100"])), 0);
    assert_eq!(code(&run("many", &[])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&infalg(&[])), 2);
    assert_eq!(code(&infalg(&["frobnicate"])), 2);
    assert_eq!(code(&infalg(&["verify", "no/such/file.json"])), 2);
    assert_eq!(code(&infalg(&["--help"])), 0);
}

#[test]
fn enumerate_counts() {
    let o = infalg(&["enumerate", "4", "--what", "lattices"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "size 2: 1\nsize 3: 1\nsize 4: 2\ntotal: 4\n");
    let o = infalg(&["--format", "json", "enumerate", "4", "--what", "posets"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counts"], serde_json::json!({"1": 1, "2": 2, "3": 5, "4": 16}));
}
