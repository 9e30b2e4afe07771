//! End-to-end runs of the binary.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dpmirror")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn passing_suite_exits_zero() {
    let (code, json) = run(&["run", "pick", "--k", "7", "--no-timings"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["suite"], "pick");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["run", "nonsense"]).0, 2);
    assert_eq!(run(&["run", "cqs", "--n", "6", "--q", "2"]).0, 2);
    assert_eq!(run(&["run", "critical", "--k", "4"]).0, 2);
}

#[test]
fn reports_are_reproducible() {
    for suite in [["run", "cqs", "--n", "7"], ["run", "palais-smale", "--seed", "3"]] {
        let args = [&suite[..], &["--no-timings"]].concat();
        assert_eq!(run(&args), run(&args));
    }
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("dpmirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# trajectory\nk = 7\ns = 1e-14\npath = rotation\nsteps = 32\n").unwrap();
    let csv = dir.join("out.csv");
    let (code, _) =
        run(&["emit-trajectory", "--config", cfg.to_str().unwrap(), "--k", "5", "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("# permutation=0 1 2 4 3 5"));
    assert_eq!(text.lines().count(), 2 + 33);
    std::fs::remove_dir_all(&dir).unwrap();
}
