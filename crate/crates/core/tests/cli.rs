use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scs")).args(args).output().expect("scs runs")
}

fn scs_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scs")).args(args).env(key, value).output().expect("scs runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const B: &str = "0@0 : 0 : 1@1 : 0 : 0@0";

#[test]
fn version_prints_schema() {
    let out = scs(&["--version"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["schema_version"], 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&scs(&["glue", "--r", "2"])), 2);
    assert_eq!(code(&scs(&["frobnicate"])), 2);
    assert_eq!(code(&scs(&[])), 2);
    assert_eq!(code(&scs(&["free", "witness", "--h1", "a", "--h2", "q"])), 2);
    assert_eq!(code(&scs(&["free", "witness", "--h1", "a", "--h2", "b", "--k", "sometimes"])), 2);
}

#[test]
fn free_witness_verifies_in_another_process() {
    let cert = scratch("free.json");
    let out = scs(&["free", "witness", "--rank", "2", "--h1", "a", "--h2", "b", "-o", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = scs(&["free", "verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn free_witness_stdout_is_a_certificate() {
    let out = scs(&["free", "witness", "--rank", "2", "--h1", "a", "--h2", "b"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["v"], 1);
    assert_eq!(v["checks"]["h2_no_fixed_point"], true);
}

#[test]
fn tampered_certificate_exits_1_with_code() {
    let out = scs(&["free", "witness", "--h1", "a", "--h2", "b"]);
    let mut v = json(&out);
    v["index"] = Value::from(v["index"].as_u64().unwrap() + 1);
    let path = scratch("tampered.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = scs(&["free", "verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["code"], "index_mismatch");
}

#[test]
fn conjugate_into_is_a_negative_verdict() {
    let out = scs(&["free", "witness", "--h1", "a", "--h2", "aa"]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn witnesses_are_byte_identical() {
    let a = scs(&["free", "witness", "--h1", "a, bab", "--h2", "ab", "--k", "random:5:6"]);
    let b = scs(&["free", "witness", "--h1", "a, bab", "--h2", "ab", "--k", "random:5:6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let g = data("s3_c2_s3.json");
    // element 3 of the right S3 is a 3-cycle
    let args = ["vf", "witness", g.as_str(), "--h1", "1@0, 2@0", "--h2", "0@0 : 0 : 3@1 : 0 : 0@0", "--seed", "9"];
    let a = scs(&args);
    let b = scs(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn free_conj_fold_and_girth_cover() {
    let out = scs(&["free", "conj", "--h1", "ab", "--h2", "ba"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["outcome"], "conjugate");

    let out = scs(&["free", "fold", "--gens", "ab, ba"]);
    let v = json(&out);
    assert_eq!(v["vertices"], 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);

    let out = scs(&["free", "girth-cover", "--c", "3"]);
    let v = json(&out);
    assert_eq!(v["bound"], 3);
    assert_eq!(v["shortest_cycle"]["exact"], 4);
}

#[test]
fn glue_example() {
    let out = scs(&["glue", "--r", "2", "--s", "2", "--t", "8", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let g: subconj::gluing::StarGluing = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g.validate(), Ok(()));
    assert!(subconj::gluing::glued_girth(&g, 16).at_least(8));
}

#[test]
fn gog_commands() {
    let psl = data("psl2z.json");
    let out = scs(&["gog", "check", &psl]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["normalizer_condition"]["verdict"], "holds");
    let out = scs(&["gog", "check", &data("c4_c2_c6.json")]);
    assert_eq!(json(&out)["normalizer_condition"]["verdict"], "fails");

    let out = scs(&["gog", "reduce", &psl, "--path", "1@0 : 0 : 1@1 : 0 : 0@0 : 0 : 2@1 : 0 : 1@0"]);
    let v = json(&out);
    assert_eq!(v["reduced"], "0@0");
    assert_eq!(v["length"], 0);

    let doc = scratch("pre.json");
    let out = scs(&["gog", "fold", &psl, "--gens", B, "-o", doc.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = scs(&["gog", "validate", doc.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&doc).unwrap()).unwrap();
    v["precovering"]["base"]["piece"] = Value::from(7);
    std::fs::write(&doc, v.to_string()).unwrap();
    let out = scs(&["gog", "validate", doc.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["code"], "bad_base");

    let bad = scratch("bad_gog.json");
    std::fs::write(&bad, r#"{"vertices":[{"id":0,"group":{"order":2,"mul":[[0,1],[0,1]]}}],"edges":[],"base":0}"#).unwrap();
    assert_eq!(code(&scs(&["gog", "check", bad.to_str().unwrap()])), 2);
}

#[test]
fn vf_witness_verify_decide() {
    let psl = data("psl2z.json");
    let cert = scratch("vf.json");
    let out = scs(&["vf", "witness", &psl, "--h1", "1@0", "--h2", B, "--seed", "3", "-o", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = scs(&["vf", "verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["base_sheet"] = Value::from(v["base_sheet"].as_u64().unwrap() + 1);
    std::fs::write(&cert, v.to_string()).unwrap();
    let out = scs(&["vf", "verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["code"], "base_mismatch");

    let out = scs(&["vf", "decide", &psl, "--h1", "1@0", "--h2", B]);
    assert_eq!(json(&out)["outcome"], "not_conj_into");
    let out = scs(&["vf", "decide", &psl, "--h1", "1@0", "--h2", "0@0 : 0 : 2@1 : 0 : 1@0 : 0 : 1@1 : 0 : 0@0"]);
    assert_eq!(json(&out)["outcome"], "conj_into");
}

#[test]
fn vf_normalizer_gate_and_resource_cap() {
    let c46 = data("c4_c2_c6.json");
    let out = scs(&["vf", "witness", &c46, "--h1", "1@0", "--h2", B]);
    assert_eq!(code(&out), 1);
    let out = scs(&["vf", "witness", &c46, "--h1", "1@0", "--h2", B, "--assume-normalizer-condition"]);
    assert_eq!(code(&out), 1, "the face chain never closes");

    let psl = data("psl2z.json");
    let out = scs_env(&["vf", "witness", &psl, "--h1", "1@0", "--h2", B], "SCS_MAX_SHEETS", "10");
    assert_eq!(code(&out), 3);
}
