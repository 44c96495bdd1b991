use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use csa::job::{explain_value, TaskReport};
use serde_json::Value;

fn csa() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_csa"));
    c.env_remove("CSA_SEED");
    c
}

fn jobs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/jobs")
}

/// Copy a bundled job into a fresh directory so its reports land there.
fn staged(name: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let dst = dir.path().join(name);
    fs::copy(jobs().join(name), &dst).unwrap();
    (dir, dst)
}

fn run(job: &Path) -> Output {
    csa().arg("run").arg(job).output().unwrap()
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn reports(job: &Path) -> PathBuf {
    job.with_file_name(format!("{}.reports", job.file_stem().unwrap().to_str().unwrap()))
}

#[test]
fn counterexample_job() {
    let (_d, job) = staged("counterexample.json");
    let out = run(&job);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = read(&reports(&job).join("summary.json"));
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["pass"], true);
    let task = read(&reports(&job).join("counterexample.json"));
    assert_eq!(task["data"]["dims"], serde_json::json!([8, 56]));
    assert_eq!(task["data"]["verdict"], "NotInQuaternion");
}

#[test]
fn biquaternion_job_is_deterministic_and_explainable() {
    let (_d, job) = staged("biquaternion.json");
    assert_eq!(run(&job).status.code(), Some(0));
    let dir = reports(&job);
    let mut first = Vec::new();
    let mut names: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    for p in &names {
        first.push(fs::read(p).unwrap());
    }
    assert_eq!(run(&job).status.code(), Some(0));
    for (p, bytes) in names.iter().zip(&first) {
        assert_eq!(&fs::read(p).unwrap(), bytes, "{} changed between runs", p.display());
    }
    for p in &names {
        let out = csa().arg("explain").arg(p).output().unwrap();
        assert!(out.status.success(), "explain {}", p.display());
        assert!(!out.stdout.is_empty());
        let v = read(p);
        if v["kind"] != "summary" {
            // reports deserialize into the library type and back unchanged
            let r: TaskReport = serde_json::from_value(v.clone()).unwrap();
            assert_eq!(serde_json::to_value(&r).unwrap(), v);
            assert!(explain_value(&v).is_ok());
        }
    }
}

#[test]
fn seed_from_environment() {
    let (_d, job) = staged("biquaternion.json");
    let out = csa().arg("run").arg(&job).env("CSA_SEED", "99").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&reports(&job).join("summary.json"))["seed"], 99);
}

#[test]
fn parse_errors_exit_2() {
    let (_d, job) = staged("dangling.json");
    let out = run(&job);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"schema_version\": 1, \"tower\": ").unwrap();
    assert_eq!(run(&bad).status.code(), Some(2));
    fs::write(&bad, r#"{"schema_version": 7, "tower": {"base": "Q"}, "algebras": {}, "tasks": []}"#).unwrap();
    assert_eq!(run(&bad).status.code(), Some(2));
}

#[test]
fn empty_task_list() {
    let (_d, job) = staged("empty.json");
    assert_eq!(run(&job).status.code(), Some(0));
    let s = read(&reports(&job).join("summary.json"));
    assert_eq!(s["tasks"], serde_json::json!([]));
}

#[test]
fn explain_rejects_unknown_schema() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    fs::write(&p, r#"{"schema_version": 2, "kind": "sqcentral"}"#).unwrap();
    assert!(!csa().arg("explain").arg(&p).status().unwrap().success());
}

#[test]
fn subcommands() {
    let inst = jobs().join("instances");
    let out = csa().args(["armature", "decompose"]).arg(inst.join("biquaternion.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "decompose");
    assert_eq!(v["data"]["factors"].as_array().unwrap().len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("nu.json");
    let st = csa()
        .args(["crossed", "nu"])
        .arg(inst.join("biquaternion.json"))
        .args(["--vars", "t1", "--out"])
        .arg(&o)
        .status()
        .unwrap();
    assert!(st.success());
    assert_eq!(read(&o)["pass"], true);

    let subfields = r#"[{"element":{"pure":[{"word":"i"},{"word":"1"}]},"order":2},{"element":{"pure":[{"word":"1"},{"word":"j"}]},"order":2}]"#;
    let out = csa()
        .args(["crossed", "build"])
        .arg(inst.join("biquaternion.json"))
        .args(["--vars", "t1,t2", "--subfields", subfields])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["build"]["dim"], 16);

    let out = csa().args(["sqcentral", "analyze"]).arg(inst.join("m2f3.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["verdict"], "InQuaternion");
}
