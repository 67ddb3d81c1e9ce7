use std::fs;

use esdg_rhd::grid::{project_initial_condition, Grid1D, Mesh};
use esdg_rhd::problems::{by_name, pulse_state, riemann_invariant_minus, PROBLEM_NAMES};
use esdg_rhd::runner::{density_errors, parse_config, run, Cells, RunConfig};
use esdg_rhd::sbp::SbpOperator;
use esdg_rhd::state::{prim_to_cons, sound_speed, GasParams, PrimitiveState};

#[test]
fn pulse_is_isentropic_with_constant_invariant() {
    let gas = GasParams::default();
    let reference = pulse_state(0.9, gas).unwrap();
    let k0 = reference.p / reference.rho.powf(gas.gamma);
    let j0 = riemann_invariant_minus(reference.ux, sound_speed(&reference, gas), gas.gamma);
    for i in 0..=60 {
        let x = -0.35 + 0.01 * i as f64;
        let s = pulse_state(x, gas).unwrap();
        assert!((s.p / s.rho.powf(gas.gamma) - k0).abs() < 1e-12 * k0);
        let j = riemann_invariant_minus(s.ux, sound_speed(&s, gas), gas.gamma);
        assert!((j - j0).abs() < 1e-12, "x={x}: {j} vs {j0}");
    }
}

#[test]
fn every_problem_starts_admissible() {
    for name in PROBLEM_NAMES {
        let p = by_name(name).unwrap();
        let [x0, x1, y0, y1] = p.bounds;
        for i in 0..=20 {
            for j in 0..=4 {
                let (x, y) = (x0 + (x1 - x0) * i as f64 / 20.0, y0 + (y1 - y0) * j as f64 / 4.0);
                assert!(prim_to_cons(&p.initial(x, y), p.gas).is_ok(), "{name} at ({x}, {y})");
            }
        }
    }
}

#[test]
fn error_quadrature_is_exact_for_offsets() {
    let gas = GasParams::default();
    for k in 1..=3 {
        let op = SbpOperator::new(k).unwrap();
        let g = Grid1D::new(8, 0.0, 2.0).unwrap();
        let ic = |x: f64, _: f64| PrimitiveState::new(1.0 + 0.5 * x * x, 0.1, 0.0, 1.0);
        let f = project_initial_condition(Mesh::Line(g), &op.rule, gas, &ic).unwrap();
        let off = 0.1;
        let e = density_errors(&f, &op, gas, &|x, y| {
            let s = ic(x, y);
            PrimitiveState { rho: s.rho + off, ..s }
        })
        .unwrap();
        assert!((e.l1 - 2.0 * off).abs() < 1e-9, "k={k}: {}", e.l1);
        assert!((e.l1_nodal - g.dx * (8 * (k + 1)) as f64 * off).abs() < 1e-9);
        assert!((e.linf - off).abs() < 1e-9);
    }
}

fn temp_config(problem: &str, k: usize, cells: usize, dir: &std::path::Path) -> RunConfig {
    RunConfig { problem: problem.into(), k, cells: Cells { nx: cells, ny: None }, output: dir.to_path_buf(), ..RunConfig::default() }
}

#[test]
fn run_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { t_end: Some(0.05), snapshots: vec![0.02], ..temp_config("accuracy", 2, 32, dir.path()) };
    let summary = run(&cfg).unwrap();
    assert_eq!(summary.t_final, 0.05);
    let solution = fs::read_to_string(dir.path().join("solution.dat")).unwrap();
    let mut lines = solution.lines();
    assert_eq!(lines.next(), Some("# x rho ux uy p entropy"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 96);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 6));
    assert!(dir.path().join("snapshot_0.02.dat").exists());
    let entropy = fs::read_to_string(dir.path().join("entropy.dat")).unwrap();
    assert_eq!(entropy.lines().count(), summary.steps + 2);
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert_eq!(parse_config(&manifest).unwrap(), cfg);
    assert!(manifest.contains(&format!("# steps={}", summary.steps)));
}

#[test]
fn constant_run_keeps_entropy() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { t_end: Some(0.1), ..temp_config("constant", 2, 20, dir.path()) };
    let summary = run(&cfg).unwrap();
    let u0 = summary.entropy[0].1;
    for (_, u) in &summary.entropy {
        assert!((u - u0).abs() <= 1e-12 * u0.abs());
    }
}

#[test]
fn runs_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let cfg = RunConfig { t_end: Some(0.05), ..temp_config("rp2", 2, 50, dir.path()) };
        run(&cfg).unwrap();
    }
    for file in ["solution.dat", "entropy.dat"] {
        assert_eq!(fs::read(a.path().join(file)).unwrap(), fs::read(b.path().join(file)).unwrap(), "{file}");
    }
}

#[test]
fn two_d_output_has_y_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        problem: "rp2d3".into(),
        cells: Cells { nx: 6, ny: Some(4) },
        t_end: Some(0.01),
        output: dir.path().to_path_buf(),
        ..RunConfig::default()
    };
    run(&cfg).unwrap();
    let solution = fs::read_to_string(dir.path().join("solution.dat")).unwrap();
    assert!(solution.starts_with("# x y rho ux uy p entropy\n"));
    assert_eq!(solution.lines().count(), 1 + 6 * 4 * 4);
}
