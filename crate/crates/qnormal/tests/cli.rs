//! End-to-end checks of the command line tool: exit codes, JSON determinism,
//! and the dump formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("corpus")
        .join(name)
}

fn qnormal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnormal"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn recognize_exit_codes() {
    let disc = qnormal(&["recognize", corpus("lst1.tri").to_str().unwrap()]);
    assert_eq!(disc.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&disc.stdout).contains("DISC_FOUND"));

    let knotted = qnormal(&["recognize", corpus("trefoil.tri").to_str().unwrap()]);
    assert_eq!(knotted.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&knotted.stdout).contains("NO_DISC"));

    let closed = qnormal(&["recognize", corpus("closed2.tri").to_str().unwrap()]);
    assert_eq!(closed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&closed.stdout).contains("UNSUPPORTED"));

    let missing = qnormal(&["recognize", "/nonexistent.tri"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_three() {
    let dir = std::env::temp_dir().join("qnormal-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.tri");
    std::fs::write(&bad, "tets 1\nglue 0 0 0 0 0123\n").unwrap();
    let out = qnormal(&["recognize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn survey_json_is_byte_identical_across_runs() {
    for name in ["lst1.tri", "lst3.tri", "closed2.tri", "trefoil.tri"] {
        let path = corpus(name);
        let a = qnormal(&["survey", path.to_str().unwrap(), "--json"]);
        let b = qnormal(&["survey", path.to_str().unwrap(), "--json"]);
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}: survey must be reproducible");
        let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(parsed["schema"], 1, "{name}");
    }
}

#[test]
fn recognize_json_carries_witness() {
    let out = qnormal(&[
        "recognize",
        corpus("lst2.tri").to_str().unwrap(),
        "--json",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "DISC_FOUND");
    assert_eq!(v["oracle_checked"], true);
    assert_eq!(v["witness"]["euler"], 1);
    assert_eq!(v["witness"]["two_sided"], true);
    assert_eq!(v["preconditions"]["torus_boundary"], true);
    // vectors are decimal strings
    assert!(v["witness"]["vector"][0].is_string());
}

#[test]
fn dump_equations_matches_library() {
    use qnormal::coordinates::q_matching_system;
    use qnormal::parse_triangulation;

    let path = corpus("lst2.tri");
    let out = qnormal(&["dump-equations", path.to_str().unwrap(), "--kind", "quad"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let tri = parse_triangulation(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let expect = q_matching_system::<i64>(&tri).unwrap().dump_triplets();
    assert_eq!(text, expect);
    // each line is `row col coeff`
    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 3);
        parts[0].parse::<usize>().unwrap();
        parts[1].parse::<usize>().unwrap();
        parts[2].parse::<i64>().unwrap();
    }
}

#[test]
fn dump_rays_writes_sparse_vectors() {
    let dir = std::env::temp_dir().join("qnormal-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let rays = dir.join("rays.txt");
    let out = qnormal(&[
        "survey",
        corpus("lst1.tri").to_str().unwrap(),
        "--dump-rays",
        rays.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&rays).unwrap();
    assert_eq!(text.lines().count(), 3); // three quad vertices
    for line in text.lines() {
        for entry in line.split_whitespace() {
            let (i, v) = entry.split_once(':').unwrap();
            i.parse::<usize>().unwrap();
            v.parse::<i64>().unwrap();
        }
    }
}

#[test]
fn crosscheck_passes_on_the_corpus() {
    for name in ["lst1.tri", "lst2.tri", "lst3.tri", "closed2.tri", "trefoil.tri"] {
        let out = qnormal(&["crosscheck", corpus(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn no_filter_flag_gives_the_same_survey() {
    let path = corpus("lst3.tri");
    let a = qnormal(&["survey", path.to_str().unwrap(), "--json"]);
    let b = qnormal(&["survey", path.to_str().unwrap(), "--json", "--no-filter"]);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["rows"], vb["rows"]);
}
