use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quantstab_core::parabolic::Parabolic;
use quantstab_core::rootsys::RootSystem;
use quantstab_core::stable::StableBasis;
use quantstab_core::symfield::parse_ratfunc;
use serde_json::Value;

fn quantstab(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantstab"))
        .args(args)
        .env("STABLE_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn only_file(dir: &Path) -> std::path::PathBuf {
    let files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1, "{files:?}");
    files.into_iter().next().unwrap()
}

#[test]
fn verify_a1_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantstab(
        &["verify", "--type", "A1", "--parabolic", "empty"],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let doc = json(&out);
    assert_eq!(doc["data"]["passed"], Value::Bool(true));
    assert_eq!(doc["data"]["suites"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_partial_flag_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantstab(
        &[
            "verify",
            "--type",
            "A2",
            "--parabolic",
            "2",
            "--degree",
            "2",
            "--format",
            "table",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# verify type=A2 parabolic=2 degree=2\n"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn roots_b2() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantstab(&["roots", "--type", "B2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let roots: Vec<Vec<i64>> = doc["data"]["positive_roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| serde_json::from_value(r["root"].clone()).unwrap())
        .collect();
    assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
}

#[test]
fn quantum_matrix_grassmannian() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "quantum-matrix",
        "--type",
        "A3",
        "--parabolic",
        "1,3",
        "--weight",
        "0,1,0",
        "--part",
        "total",
        "--format",
        "json",
    ];
    let out = quantstab(&args, dir.path());
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["header"]["parabolic"], serde_json::json!([1, 3]));
    assert_eq!(doc["header"]["weight"], serde_json::json!(["0", "1", "0"]));
    let rows = doc["data"]["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let mut saw_q = false;
    for row in rows {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 6);
        for cell in row {
            let f = parse_ratfunc(cell.as_str().unwrap()).unwrap();
            assert_eq!(f.to_string(), cell.as_str().unwrap());
            saw_q |= f.contains_var(quantstab_core::symfield::Var::Q(1));
        }
    }
    assert!(saw_q);
    // byte-stable
    assert_eq!(quantstab(&args, dir.path()).stdout, out.stdout);
}

#[test]
fn hecke_apply_operators() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantstab(
        &[
            "hecke-apply",
            "--type",
            "A1",
            "--input",
            "a1",
            "--operator",
            "dl:1",
        ],
        dir.path(),
    );
    assert_eq!(json(&out)["data"]["output"], "2*h - a1");
    let out = quantstab(
        &[
            "hecke-apply",
            "--type",
            "A3",
            "--parabolic",
            "1,3",
            "--weight",
            "0,1,0",
            "--input",
            "1",
            "--operator",
            "pcon",
        ],
        dir.path(),
    );
    let got = parse_ratfunc(json(&out)["data"]["output"].as_str().unwrap()).unwrap();
    assert_eq!(got, parse_ratfunc("a1/2 + a2 + a3/2").unwrap());
    let out = quantstab(
        &[
            "hecke-apply",
            "--type",
            "A2",
            "--parabolic",
            "2",
            "--weight",
            "1,0",
            "--input",
            "a2",
            "--operator",
            "pcon",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn malformed_input_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["roots"],
        &["roots", "--type", "X9"],
        &[
            "quantum-matrix",
            "--type",
            "A2",
            "--parabolic",
            "2",
            "--weight",
            "1,1",
        ],
        &["quantum-matrix", "--type", "A2", "--weight", "1"],
        &[
            "quantum-matrix",
            "--type",
            "A2",
            "--parabolic",
            "3",
            "--weight",
            "1,0",
        ],
        &[
            "hecke-apply",
            "--type",
            "A2",
            "--input",
            "a1",
            "--operator",
            "bmo",
        ],
        &[
            "hecke-apply",
            "--type",
            "A2",
            "--input",
            "a3",
            "--operator",
            "dl:1",
        ],
        &[
            "hecke-apply",
            "--type",
            "A2",
            "--input",
            "a1",
            "--operator",
            "dl:7",
        ],
        &["stab", "--type", "A2", "--chamber", "sideways"],
    ] {
        let out = quantstab(args, dir.path());
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn affine_cartan_exits_65() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("affine.txt");
    fs::write(&file, "2\n2 -2\n-2 2\n").unwrap();
    let out = quantstab(
        &["roots", "--cartan-file", file.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn cartan_file_matches_named_type() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g2.txt");
    fs::write(&file, "# G2\n2\n2 -1\n-3 2\n").unwrap();
    let a = json(&quantstab(
        &["roots", "--cartan-file", file.to_str().unwrap()],
        dir.path(),
    ));
    let b = json(&quantstab(&["roots", "--type", "G2"], dir.path()));
    assert_eq!(a["data"], b["data"]);
    assert_eq!(a["data"]["count"], 6);
}

#[test]
fn weyl_cosets() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json(&quantstab(
        &["weyl", "--type", "A3", "--parabolic", "1,3"],
        dir.path(),
    ));
    assert_eq!(doc["data"]["cosets"].as_array().unwrap().len(), 6);
    assert_eq!(doc["data"]["dim"], 4);
    let doc = json(&quantstab(&["weyl", "--type", "B2"], dir.path()));
    assert_eq!(doc["data"]["order"], 8);
}

#[test]
fn stab_output_round_trips_through_cache_loader() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantstab(
        &["stab", "--type", "A2", "--parabolic", "2", "--no-cache"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["data"]["plus"]["e"]["e"].as_str().is_some());
    let par = Parabolic::new(RootSystem::named("A2").unwrap(), &[1]).unwrap();
    let loaded = quantstab::tables::load_document(&par, &doc).unwrap();
    let fresh = StableBasis::compute(&par).unwrap();
    assert_eq!(loaded.plus(), fresh.plus());
    assert_eq!(loaded.minus(), fresh.minus());
}

#[test]
fn cache_is_written_and_read() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["stab", "--type", "B2"];
    let first = quantstab(&args, dir.path());
    let file = only_file(dir.path());
    let cached: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(cached["data"], json(&first)["data"]);
    let second = quantstab(&args, dir.path());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn corrupted_cache_fails_axioms() {
    let dir = tempfile::tempdir().unwrap();
    quantstab(&["stab", "--type", "A2", "--parabolic", "2"], dir.path());
    let file = only_file(dir.path());
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["data"]["plus"]["e"]["e"] = Value::String("a1".into());
    fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = quantstab(
        &[
            "verify",
            "--type",
            "A2",
            "--parabolic",
            "2",
            "--degree",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["data"]["passed"], Value::Bool(false));
}

#[test]
fn held_lock_skips_the_write() {
    let dir = tempfile::tempdir().unwrap();
    quantstab(&["stab", "--type", "A1"], dir.path());
    let file = only_file(dir.path());
    fs::remove_file(&file).unwrap();
    fs::write(file.with_extension("json.lock"), "").unwrap();
    let out = quantstab(&["stab", "--type", "A1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(!file.exists());
}
