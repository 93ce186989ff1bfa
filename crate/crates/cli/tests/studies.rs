//! Runs every shipped recipe under `studies/` (the whole set is fast enough to
//! serve as the quick subset) and spot-checks the headline orders.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

const BUDGET: Duration = Duration::from_secs(60);

fn studies() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../studies")
}

fn recipes(kind: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(studies().join(kind))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

/// Non-empty entries of a column.
fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines
        .filter_map(|l| l.split(',').nth(idx).filter(|f| !f.is_empty()))
        .map(|f| f.parse().unwrap())
        .collect()
}

#[test]
fn every_recipe_runs() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let mut count = 0;
    for kind in ["convergence", "residual", "compare"] {
        for recipe in recipes(kind) {
            let stem = recipe.file_stem().unwrap().to_str().unwrap().to_string();
            let out_path = dir.path().join(format!("{kind}-{stem}.csv"));
            let out = Command::new(env!("CARGO_BIN_EXE_iso-colloc"))
                .args([kind, "--config", recipe.to_str().unwrap(), "--out", out_path.to_str().unwrap()])
                .output()
                .unwrap();
            assert!(out.status.success(), "{}: {}", recipe.display(), String::from_utf8_lossy(&out.stderr));
            assert!(std::fs::read_to_string(&out_path).unwrap().lines().count() > 1);
            count += 1;
        }
    }
    assert!(count >= 40, "only {count} recipes");
    assert!(start.elapsed() < BUDGET, "{:?}", start.elapsed());

    let csv = std::fs::read_to_string(dir.path().join("convergence-dirichlet-csp-p3.csv")).unwrap();
    let orders = column(&csv, "order_L2");
    assert!((orders.last().unwrap() - 4.0).abs() < 0.25);
    let csv = std::fs::read_to_string(dir.path().join("convergence-dirichlet-gp-p3.csv")).unwrap();
    assert!((column(&csv, "order_L2").last().unwrap() - 2.0).abs() < 0.25);
}

#[test]
fn recipes_name_their_output() {
    for kind in ["convergence", "residual", "compare"] {
        for recipe in recipes(kind) {
            let text = std::fs::read_to_string(&recipe).unwrap();
            let stem = recipe.file_stem().unwrap().to_str().unwrap();
            assert!(text.contains(&format!("\"results/{stem}.csv\"")), "{}", recipe.display());
        }
    }
}
