use std::process::{Command, Output};

use ftbetti::complex::SparseRationalMatrix;
use ftbetti::manifold_file::parse_manifold_json;
use ftbetti::model::{build_model, torus_preset};

fn ftbetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftbetti"))
        .args(args)
        .env_remove("FTBETTI_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn betti_text_for_torus() {
    let o = ftbetti(&["betti", "--manifold", "torus", "--n", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("betti = [1, 2, 3, 5, 4, 1]"), "{s}");
    assert!(s.contains('✓') && !s.contains('✗'));
}

#[test]
fn betti_json_schema() {
    let o = ftbetti(&["betti", "--manifold", "torus", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["n", "slice_dims", "ranks", "betti", "closed_form", "match", "euler"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["match"], true);
    assert_eq!(v["euler"], 0);
    assert_eq!(v["betti"][3], 4);
}

#[test]
fn sphere_nonzero_degrees() {
    let o = ftbetti(&["betti", "--manifold", "sphere:d=1", "--n", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut rdr = csv::Reader::from_reader(s.as_bytes());
    let nonzero: Vec<u32> = rdr
        .records()
        .map(|r| r.unwrap())
        .filter(|r| &r[4] != "0")
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert_eq!(nonzero, vec![0, 3]);
}

#[test]
fn theta_complexes() {
    for name in ["theta", "theta0"] {
        let o = ftbetti(&["betti", "--manifold", name, "--i-max", "6"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("[1, 2, 3, 5, 7, 9, 11]"));
    }
}

#[test]
fn verify_commands_exit_zero() {
    let o = ftbetti(&["verify-theorem", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ftbetti(&["verify-theorem", "--n-max", "6", "--format", "csv"]);
    assert!(stdout(&o).starts_with("n,i,slice_dim,rank,betti,closed_form,match\n"));
    let o = ftbetti(&["verify-structure", "--n-max", "5", "--degree-max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_passed"], true);
}

#[test]
fn jobs_setting_does_not_change_output() {
    let a = ftbetti(&["verify-theorem", "--n-max", "9", "--format", "json", "--jobs", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_ftbetti"))
        .args(["verify-theorem", "--n-max", "9", "--format", "json"])
        .env("FTBETTI_JOBS", "4")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dump_model_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torus.json");
    let o = ftbetti(&["dump-model", "--manifold", "torus", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let loaded = parse_manifold_json(&text).unwrap();
    assert_eq!(build_model(&loaded).unwrap(), build_model(&torus_preset()).unwrap());

    let from_file = ftbetti(&["betti", "--manifold", path.to_str().unwrap(), "--n", "5", "--format", "json"]);
    let preset = ftbetti(&["betti", "--manifold", "torus", "--n", "5", "--format", "json"]);
    assert_eq!(from_file.stdout, preset.stdout);

    let again = ftbetti(&["dump-model", "--manifold", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn dump_model_text_lists_differential() {
    let o = ftbetti(&["dump-model", "--manifold", "torus", "--format", "text"]);
    assert!(stdout(&o).contains("D = 2 v_1 v_ab + 2 v_a v_b"));
}

#[test]
fn dump_matrix_parses_back() {
    let o = ftbetti(&["dump-matrix", "--manifold", "torus", "--n", "3", "--i", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let m = SparseRationalMatrix::from_matrix_market(&stdout(&o)).unwrap();
    assert_eq!(ftbetti::rank(&m).rank, 2);
}

#[test]
fn series_output() {
    let o = ftbetti(&["series", "--degrees", "1,1,3,2,2", "--i-max", "5"]);
    assert_eq!(stdout(&o).trim(), "[1, 2, 3, 5, 7, 9]");
}

#[test]
fn usage_and_validation_errors_exit_two() {
    assert_eq!(ftbetti(&["betti", "--manifold", "torus"]).status.code(), Some(2));
    assert_eq!(ftbetti(&["betti", "--manifold", "sphere:d=x", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ftbetti(&["verify-theorem", "--n-max", "1"]).status.code(), Some(2));
    assert_eq!(ftbetti(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // a·a must vanish for an odd class.
    std::fs::write(
        &bad,
        r#"{"name":"bad","dim":2,"classes":[{"name":"1","degree":0},{"name":"a","degree":1},{"name":"w","degree":2}],
            "cup":[{"left":"a","right":"a","result":[{"class":"w","coeff":"1"}]}]}"#,
    )
    .unwrap();
    let o = ftbetti(&["betti", "--manifold", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation"));

    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, r#"{"name":"circle","dim":1,"classes":[{"name":"1","degree":0},{"name":"t","degree":1}]}"#)
        .unwrap();
    assert_eq!(ftbetti(&["betti", "--manifold", odd.to_str().unwrap(), "--n", "2"]).status.code(), Some(2));
}
