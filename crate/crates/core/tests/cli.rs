use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use lonlab::Landscape;

fn lonlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lonlab"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("l.json");
    let o = lonlab(&["generate", "--n", "16", "--k", "2", "--seed", "1", "--out", p(&file)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("\"model\":\"nk-adjacent\""), "{text}");
    let loaded = Landscape::load_json(&file).unwrap();
    assert_eq!(loaded, Landscape::new(16, 2, 1).unwrap());
}

#[test]
fn analyze_from_file_matches_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("l.json");
    lonlab(&["generate", "--n", "9", "--k", "3", "--seed", "4", "--out", p(&file)]);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(code(&lonlab(&["analyze", "--landscape", p(&file), "--out", p(&a)])), 0);
    assert_eq!(
        code(&lonlab(&["analyze", "--n", "9", "--k", "3", "--seed", "4", "--out", p(&b)])),
        0
    );
    for f in lonlab::experiment::INSTANCE_FILES {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn invalid_parameters_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("l.json");
    let o = lonlab(&["generate", "--n", "16", "--k", "16", "--seed", "1", "--out", p(&file)]);
    assert_eq!(code(&o), 1);
    assert!(!file.exists());
    assert_eq!(code(&lonlab(&["generate", "--bogus"])), 1);
    assert_eq!(code(&lonlab(&["--help"])), 0);
}

#[test]
fn capacity_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = lonlab(&[
        "analyze", "--n", "12", "--k", "2", "--max-exhaustive-n", "10", "--out", p(dir.path()),
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn io_failure_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let o = lonlab(&["analyze", "--n", "6", "--k", "2", "--out", p(&blocker.join("sub"))]);
    assert_eq!(code(&o), 4);
}

#[test]
fn sweep_exits_nonzero_on_instance_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = lonlab(&[
        "sweep", "--n", "6", "--k-list", "2,6", "--instances", "2", "--out", p(dir.path()),
    ]);
    assert_eq!(code(&o), 1);
    assert!(dir.path().join("6_2_1/report.json").is_file());
    assert!(dir.path().join("aggregate.csv").is_file());
}

#[test]
fn verify_injected_fault_exit_3() {
    let o = lonlab(&["verify", "--max-n", "5", "--seeds", "2", "--inject-fault", "drop-edge"]);
    assert_eq!(code(&o), 3);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("FAIL lon_edges"), "{stdout}");
}

#[test]
fn verify_n6_thirty_seeds_under_a_minute() {
    let start = Instant::now();
    let o = lonlab(&["verify", "--max-n", "6", "--seeds", "30"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn threads_flag_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("t1");
    let b = dir.path().join("t8");
    for (t, out) in [("1", &a), ("8", &b)] {
        let o = lonlab(&["--threads", t, "analyze", "--n", "12", "--k", "5", "--seed", "3", "--out", p(out)]);
        assert_eq!(code(&o), 0);
    }
    for f in lonlab::experiment::INSTANCE_FILES {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}
