//! End-to-end tests of the command-line binary: output bytes, exit
//! codes, determinism, and the error contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dimerpf"))
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn square_json() -> &'static str {
    r#"{"vertices":[{"id":1,"pos":[0,0]},{"id":2,"pos":[1,0]},{"id":3,"pos":[1,1]},{"id":4,"pos":[0,1]}],
        "edges":[{"u":1,"v":2},{"u":2,"v":3},{"u":3,"v":4},{"u":4,"v":1}]}"#
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn boundary_partition_square_in_z() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .args(["--var", "z"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), "{\"polynomial\":{\"4\":\"1\",\"2\":\"4\",\"0\":\"2\"}}\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn boundary_partition_square_default_pair_variable() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), "{\"polynomial\":{\"2\":\"1\",\"1\":\"4\",\"0\":\"2\"}}\n");
}

#[test]
fn boundary_partition_methods_agree_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let mut outputs = Vec::new();
    for method in ["pfaffian", "bijection"] {
        for _ in 0..2 {
            let out = bin()
                .args(["boundary-partition", "--graph"])
                .arg(&graph)
                .args(["--method", method])
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(0));
            outputs.push(out.stdout);
        }
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn boundary_partition_half_powers_for_odd_boundary() {
    // A three-vertex path: z^3 + 2z, i.e. x^{3/2} + 2x^{1/2}.
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(
        &dir,
        "path3.json",
        r#"{"vertices":[{"id":1,"pos":[0,0]},{"id":2,"pos":[1,0]},{"id":3,"pos":[2,0]}],
            "edges":[{"u":1,"v":2},{"u":2,"v":3}]}"#,
    );
    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), "{\"polynomial\":{\"3/2\":\"1\",\"1/2\":\"2\"}}\n");
}

#[test]
fn boundary_partition_rational_weights() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(
        &dir,
        "weighted.json",
        r#"{"vertices":[{"id":1,"pos":[0,0]},{"id":2,"pos":[1,0]},{"id":3,"pos":[1,1]},{"id":4,"pos":[0,1]}],
            "edges":[{"u":1,"v":2,"dimer":"1/2"},{"u":2,"v":3},{"u":3,"v":4},{"u":4,"v":1}]}"#,
    );
    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        "{\"polynomial\":{\"2\":\"1\",\"1\":\"7/2\",\"0\":\"3/2\"}}\n"
    );
}

#[test]
fn full_partition_rectangle_methods_agree() {
    let expected = "{\"polynomial\":{\"6\":\"1\",\"5\":\"17\",\"4\":\"102\",\"3\":\"267\",\"2\":\"302\",\"1\":\"123\",\"0\":\"11\"}}\n";
    for method in ["skeleton", "oracle"] {
        let out = bin()
            .args(["full-partition", "--rect", "4x3", "--method", method])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "method {method}");
        assert_eq!(stdout_str(&out), expected, "method {method}");
    }
}

#[test]
fn full_partition_inout_square() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["full-partition", "--graph"])
        .arg(&graph)
        .args(["--method", "inout", "--var", "z"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), "{\"polynomial\":{\"4\":\"1\",\"2\":\"4\",\"0\":\"2\"}}\n");
}

#[test]
fn full_partition_threads_flag() {
    let out = bin()
        .args([
            "full-partition",
            "--rect",
            "4x3",
            "--method",
            "skeleton",
            "--threads",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("\"0\":\"11\""));
}

#[test]
fn full_partition_rejects_conflicting_sources() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["full-partition", "--graph"])
        .arg(&graph)
        .args(["--rect", "4x3", "--method", "oracle"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("\"kind\":\"InvalidInput\""));
}

#[test]
fn timing_goes_to_stderr_only() {
    let out = bin()
        .args([
            "full-partition",
            "--rect",
            "4x3",
            "--method",
            "skeleton",
            "--timing",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout_str(&out).contains("time_ms"));
    let err = stderr_str(&out);
    assert!(err.contains("method=skeleton time_ms="));
    assert!(err.contains("pfaffian_terms=2"));
}

#[test]
fn correlations_ratio_and_wick() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    for method in ["ratio", "wick"] {
        let out = bin()
            .args(["correlations", "--graph"])
            .arg(&graph)
            .args(["--indices", "1,2", "--method", method])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "method {method}");
        assert_eq!(stdout_str(&out), "1/2\n", "method {method}");
    }
    let out = bin()
        .args(["correlations", "--graph"])
        .arg(&graph)
        .args(["--indices", "1,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), "0\n");
}

#[test]
fn orient_reports_labeling_and_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["orient", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        "{\"labeling\":[1,2,3,4],\"orientation\":[[1,2],[1,4],[2,3],[3,4]]}\n"
    );
}

#[test]
fn check_passes_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["check", "--graph"])
        .arg(&graph)
        .arg("--against-oracle")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        "{\"check\":{\"kasteleyn_verified\":true,\"positivity_verified\":true,\"methods_agree\":true,\"oracle_match\":true}}\n"
    );
}

#[test]
fn check_omits_oracle_flag_without_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "square.json", square_json());
    let out = bin()
        .args(["check", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout_str(&out).contains("oracle_match"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "bad.json", "{\"bad json");
    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr_str(&out).contains("\"error\""));
    assert!(stderr_str(&out).contains("\"kind\":\"InvalidInput\""));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = bin()
        .args(["boundary-partition", "--graph", "/nonexistent/graph.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("cannot read"));
}

#[test]
fn interior_monomer_weight_rejected_by_default_allowed_with_flag() {
    // A 3x3 grid has one interior vertex (id 5); its default monomer
    // weight 1 must be rejected unless --zero-interior is passed.
    let mut vertices = Vec::new();
    for y in 0..3 {
        for x in 0..3 {
            vertices.push(format!(
                "{{\"id\":{},\"pos\":[{x},{y}]}}",
                y * 3 + x + 1
            ));
        }
    }
    let mut edges = Vec::new();
    for y in 0..3i32 {
        for x in 0..3i32 {
            let id = y * 3 + x + 1;
            if x < 2 {
                edges.push(format!("{{\"u\":{id},\"v\":{}}}", id + 1));
            }
            if y < 2 {
                edges.push(format!("{{\"u\":{id},\"v\":{}}}", id + 3));
            }
        }
    }
    let doc = format!(
        "{{\"vertices\":[{}],\"edges\":[{}]}}",
        vertices.join(","),
        edges.join(",")
    );
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "grid3.json", &doc);

    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("\"kind\":\"NonzeroInteriorMonomer\""));

    let out = bin()
        .args(["boundary-partition", "--graph"])
        .arg(&graph)
        .arg("--zero-interior")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
}

#[test]
fn fixtures_fast_set_passes() {
    let out = bin().arg("fixtures").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("ok octagon-three-chords\n"));
    assert!(text.contains("ok rectangle-4x3-skeleton\n"));
    assert!(text.ends_with("passed 12/12\n"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn skeleton_from_json_file() {
    // The 2x2 grid with its one vertical slit pair removed; the full
    // partition must match the oracle's x^2 + 4x + 2.
    let dir = tempfile::tempdir().unwrap();
    let skeleton = write_file(
        &dir,
        "sk.json",
        r#"{"graph":{"vertices":[{"id":1,"pos":[0,0]},{"id":2,"pos":[1,0]},{"id":3,"pos":[0,1]},{"id":4,"pos":[1,1]}],
                     "edges":[{"u":1,"v":2},{"u":3,"v":4},{"u":1,"v":3},{"u":2,"v":4}]},
           "removed":[[1,2]]}"#,
    );
    let out = bin()
        .args(["full-partition", "--method", "skeleton", "--skeleton"])
        .arg(&skeleton)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    assert_eq!(stdout_str(&out), "{\"polynomial\":{\"2\":\"1\",\"1\":\"4\",\"0\":\"2\"}}\n");
}
