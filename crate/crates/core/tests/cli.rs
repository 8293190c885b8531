use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodic-twist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_s6_passes() {
    let o = run(&["verify", "s6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Ω²(M) ≅ σM: PASS"));
}

#[test]
fn verify_s8_passes() {
    let o = run(&["verify", "s8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("d₂∘d₃ = 0: PASS"));
    assert!(out.contains("exactness: PASS"));
    assert!(out.contains("Ω³(M) ≅ σM: PASS"));
}

#[test]
fn omega_of_m_has_dim_12() {
    let o = run(&["module", "omega", "M", "-n", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 12);
}

#[test]
fn structured_reports_are_reproducible() {
    let args = ["--corpus", "s8", "strong-periodicity", "check", "M", "W", "--format", "json", "--seed", "0"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "periodic-twist.report/1");
}

#[test]
fn failed_checks_exit_nonzero() {
    let o = run(&["periodicity", "check", "M", "sigma", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn tilt_reports_perversity() {
    let o = run(&["tilt", "verify", "-J", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("∅ ⊂_0 {3} ⊂_{-1} {1,2,3,4,5}"));
}

#[test]
fn errors_name_the_problem() {
    let o = run(&["module", "loewy", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));

    let dir = std::env::temp_dir().join(format!("pt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.pt");
    std::fs::write(&path, "field 3\nalgebra K {\n  vertices 1\n  arrow x: 1 -> \n}\n").unwrap();
    let o = run(&["--file", path.to_str().unwrap(), "algebra", "info"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("4:"), "{err}");
}

#[test]
fn corpus_dump_round_trips() {
    let o = run(&["corpus", "dump", "toys"]);
    let dir = std::env::temp_dir().join(format!("pt-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("toys.pt");
    std::fs::write(&path, &o.stdout).unwrap();
    let info = run(&["--file", path.to_str().unwrap(), "algebra", "info", "A21"]);
    assert_eq!(info.status.code(), Some(0));
    assert!(stdout(&info).contains("dim 6"));
}
