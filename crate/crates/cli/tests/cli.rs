use std::fs;
use std::process::Command;

fn esdg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_esdg"))
}

#[test]
fn run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rp1.cfg");
    fs::write(&config, "problem = rp1\nk = 2\ncells = 40\nt_end = 0.05\n").unwrap();
    let out = dir.path().join("out");
    let status = esdg().arg("run").arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let stdout = String::from_utf8_lossy(&status.stdout);
    assert!(stdout.contains("rp1:") && stdout.contains("solution.dat"));
    let solution = fs::read_to_string(out.join("solution.dat")).unwrap();
    assert_eq!(solution.lines().count(), 1 + 40 * 3);
    for f in ["entropy.dat", "manifest.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn overrides_reach_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.cfg");
    fs::write(&config, "problem = constant\ncells = 8\nt_end = 0.01\n").unwrap();
    let out = dir.path().join("o");
    let ok = esdg().args(["run"]).arg(&config).args(["--flux", "ec", "--no-limiter", "--out"]).arg(&out).output().unwrap().status;
    assert!(ok.success());
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("flux=ec"), "{manifest}");
    assert!(manifest.contains("tvb=false") && manifest.contains("bounds=false"), "{manifest}");
}

#[test]
fn converge_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("acc.cfg");
    fs::write(&config, "problem = accuracy\nk = 2\ntvb = false\nt_end = 0.1\n").unwrap();
    let out = esdg().arg("converge").arg(&config).args(["--resolutions", "16,32"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("# accuracy k=2"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("16") || l.trim_start().starts_with("32")).count(), 2);
}

#[test]
fn bad_input_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    fs::write(&config, "problem = rp9\n").unwrap();
    let out = esdg().arg("run").arg(&config).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:") && err.contains("rp9"), "{err}");

    let missing = esdg().args(["run", "/nonexistent/config.cfg"]).output().unwrap();
    assert!(!missing.status.success());

    fs::write(&config, "problem = accuracy\n").unwrap();
    let bad_res = esdg().arg("converge").arg(&config).args(["--resolutions", "16,x"]).output().unwrap();
    assert!(!bad_res.status.success());
}
