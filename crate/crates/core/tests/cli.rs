use std::path::Path;
use std::process::Command;

fn steklov(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_steklov"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_of_the_unit_weight() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = steklov(dir.path(), &["spectrum", "--weight", "1", "--n-modes", "16", "--k-max", "3"]);
    assert_eq!(code, 0, "{stdout}");
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let rows: Vec<(usize, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (k, s) = l.split_once(',').unwrap();
            (k.parse().unwrap(), s.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 4);
    for ((k, s), e) in rows.iter().zip([0.0, 1.0, 1.0, 2.0]) {
        assert!((s - e).abs() < 1e-12, "k = {k}");
    }
    let report = json(&dir.path().join("spectrum.json"));
    for key in ["config", "results", "assertions", "seed"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["config"]["weight"], "1");
}

#[test]
fn deficit_sweep_from_a_coefficient_file_and_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = steklov(dir.path(), &["deficit-sweep", "--alpha", "0.05,0.1,0.2", "--sweep", "N=4..64"]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("deficit-sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 15);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));

    let coeffs = dir.path().join("w.csv");
    std::fs::write(&coeffs, "n,re,im\n0,1,0\n8,0.1,0\n").unwrap();
    let (code, _) = steklov(dir.path(), &["spectrum", "--weight", coeffs.to_str().unwrap(), "--k-max", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn invalid_input_exits_with_2_and_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = steklov(dir.path(), &["spectrum", "--weight", "1 + 1.5*cos(2*t)"]);
    assert_eq!(code, 2);
    let record = json(&dir.path().join("spectrum.json"));
    assert_eq!(record["error"]["kind"], "input");
    assert!(record["error"]["message"].as_str().unwrap().contains("-5e-1"));
    let (code, _) = steklov(dir.path(), &["spectrum", "--weight", "1 + cos(8*x)"]);
    assert_eq!(code, 2);
    let (code, _) = steklov(dir.path(), &["homogenize", "--teeth", "7"]);
    assert_eq!(code, 2);
}

#[test]
fn failed_assertion_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    // a repeated tooth count cannot show a strictly decreasing error
    let (code, stdout) = steklov(dir.path(), &["homogenize", "--teeth", "8,8", "--mesh", "2,64"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("FAIL"));
    let report = json(&dir.path().join("homogenize.json"));
    assert_eq!(report["passed"], false);
}

#[test]
fn reruns_reproduce_csv_bodies() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["stability", "--samples", "6", "--seed", "11", "--grid", "256"];
    assert_eq!(steklov(a.path(), &args).0, 0);
    assert_eq!(steklov(b.path(), &args).0, 0);
    let read = |d: &Path| std::fs::read(d.join("stability.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
    assert_eq!(json(&a.path().join("stability.json"))["seed"], 11);
}
