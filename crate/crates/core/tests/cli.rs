use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use unital::projgeom::PointSet;

fn unital(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unital")).args(args).output().expect("spawn unital")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name:?}"))
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let out = unital(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn build_reports_cardinalities() {
    let dir = TempDir::new().unwrap();
    for (args, n) in [
        (vec!["--kind", "fermat", "--r", "6", "--q", "3"], 199_108),
        (vec!["--kind", "hermitian", "--r", "4", "--q", "3", "--t", "2"], 2278),
        (vec!["--kind", "hermitian", "--r", "2", "--q", "2"], 9),
    ] {
        let path = build(dir.path(), "x.pgps", &args);
        assert_eq!(PointSet::load(Path::new(&path)).unwrap().len(), n);
    }
    let out = unital(&["build", "--kind", "hermitian", "--r", "2", "--q", "2", "--expect", "10", "--out", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(check(&report(&out), "cardinality")["pass"], false);
}

#[test]
fn hyperplane_census_against_expectation() {
    let dir = TempDir::new().unwrap();
    let x = build(dir.path(), "h4.pgps", &["--kind", "fermat", "--r", "4", "--q", "3"]);
    let prefix = dir.path().join("hyp").to_string_lossy().into_owned();
    let ok = unital(&[
        "census", "--input", &x, "--family", "hyperplanes", "--mode", "full", "--expect", "253:2440,280:4941", "--out", &prefix,
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(format!("{prefix}.csv")).unwrap(), "size,count\n253,2440\n280,4941\n");
    let bad = unital(&["census", "--input", &x, "--family", "hyperplanes", "--mode", "full", "--expect", "253:2441,280:4940"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(check(&report(&bad), "bins")["pass"], false);
}

#[test]
fn lines_through_a_random_point() {
    let dir = TempDir::new().unwrap();
    let x = build(dir.path(), "h6.pgps", &["--kind", "fermat", "--r", "6", "--q", "3"]);
    let out = unital(&[
        "census", "--input", &x, "--family", "lines", "--mode", "through", "--pivot", "random-point", "--seed", "5",
        "--expect-sizes", "1,4,10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "family size")["observed"], 66_430);
    assert_eq!(check(&r, "sizes outside the expected set")["pass"], true);
}

#[test]
fn sampled_solids_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let x = build(dir.path(), "h6.pgps", &["--kind", "fermat", "--r", "6", "--q", "3"]);
    let run = |name: &str, workers: &str| {
        let prefix = dir.path().join(name).to_string_lossy().into_owned();
        let out = unital(&[
            "--workers", workers, "census", "--input", &x, "--family", "solids", "--mode", "sample", "--samples", "100000",
            "--seed", "42", "--out", &prefix,
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read_to_string(format!("{prefix}.json")).unwrap()
    };
    let a = run("a", "1");
    assert_eq!(a, run("b", "1"));
    assert_eq!(a, run("c", "4"));
    let unseeded = unital(&["census", "--input", &x, "--family", "solids", "--mode", "sample", "--samples", "10"]);
    assert_eq!(unseeded.status.code(), Some(2));
}

#[test]
fn verify_theorem_rejects_a_perturbed_set() {
    let dir = TempDir::new().unwrap();
    let path = build(dir.path(), "h6.pgps", &["--kind", "fermat", "--r", "6", "--q", "3"]);
    let mut x = PointSet::load(Path::new(&path)).unwrap();
    let first = x.iter().next().unwrap();
    x.remove(first);
    x.save(Path::new(&path)).unwrap();
    let out = unital(&["verify-theorem", "--seed", "1", "--skip-hyperplane-census", "--input", &path]);
    assert_ne!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["pass"], false);
    assert_eq!(check(&r, "|input|")["pass"], false);
    assert_eq!(check(&r, "hyperplane census of the set")["skipped"], true);
}

#[test]
fn bounds_batch_writes_csv() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("curves.jsonl");
    let fermat = r#"{"p":3,"k":2,"nvars":3,"degree":4,"terms":[{"exps":[4,0,0],"coeff":1},{"exps":[0,4,0],"coeff":1},{"exps":[0,0,4],"coeff":1}]}"#;
    std::fs::write(&input, format!("{fermat}\n")).unwrap();
    let csv = dir.path().join("out.csv");
    let out = unital(&["bounds-batch", "--input", input.to_str().unwrap(), "--q", "3", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("curve_id,n_points,components,class,segre,homma_kim,homma_piecewise"));
    assert!(lines.next().unwrap().starts_with("0,28,0,"));
}

#[test]
fn malformed_arguments_exit_with_two() {
    assert_eq!(unital(&["census", "--input", "/nonexistent", "--family", "lines", "--mode", "full"]).status.code(), Some(2));
    assert_eq!(unital(&["build", "--kind", "cubic", "--out", "/dev/null"]).status.code(), Some(2));
}
