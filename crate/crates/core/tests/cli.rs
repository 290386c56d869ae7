use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoarray"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rs.txt");
    let o = run(&["build", "--n", "6", "--m", "4", "--t", "2", "--code", "rs", "--out", p(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("s/rao=441/5 (88.2)"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("OA 1764 4 6 2 49"));
    assert_eq!(text.lines().count(), 1765);

    let v = run(&["verify", "--in", p(&out), "--t", "2", "--report", "json"]);
    assert!(v.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(json["pass"], true);
    assert_eq!(json["lambda"], 49);
    assert_eq!(json["subsets"], 6);
    assert_eq!(json["worst_dev"], 0);

    // Strength 3 does not hold; verify reports failure with exit code 1.
    let v3 = run(&["verify", "--in", p(&out), "--t", "3"]);
    assert_eq!(v3.status.code(), Some(1));
}

#[test]
fn bush_header_and_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bush.txt");
    assert!(run(&["build", "--n", "5", "--m", "5", "--t", "2", "--code", "bush", "--out", p(&out)]).status.success());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("OA 25 5 5 2 1\n"));

    let csv = dir.path().join("bush.csv");
    let o = run(&[
        "build", "--n", "5", "--m", "5", "--t", "2", "--code", "bush", "--format", "csv", "--zero-based",
        "--csv-header", "--out", p(&csv),
    ]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("c1,c2,c3,c4,c5\n0,0,0,0,0\n"));
    let v = run(&["verify", "--in", p(&csv), "--format", "csv", "--zero-based", "--n", "5", "--t", "2"]);
    assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    assert_eq!(run(&["build", "--n", "6", "--m", "4", "--t", "5"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--n", "6", "--m", "4", "--t", "2", "--code", "bush"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--n", "6", "--m", "4", "--t", "2", "--p-override", "7"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["build", "--n", "6", "--m", "40", "--t", "4", "--out", p(&out)]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["verify", "--in", p(&out), "--t", "2", "--max-work", "1"]).status.code(),
        Some(1),
        "missing file is an I/O failure"
    );
    assert_eq!(run(&["prime", "--eta", "10", "--min", "71", "--nu", "2"]).status.code(), Some(4));
    // Over F_2 three columns of a 2-row matrix are never independent.
    assert_eq!(
        run(&["build", "--n", "3", "--m", "3", "--t", "3", "--code", "random", "--p-override", "7", "--max-attempts", "0"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn dry_run_prints_plan() {
    let o = run(&["build", "--n", "2", "--m", "8", "--t", "2", "--code", "random", "--dry-run", "--seed", "3"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!(line.starts_with("plan s="));
    assert!(line.contains("q=1289") && line.contains("tau=6"));
}

#[test]
fn prime_and_rao() {
    assert_eq!(stdout(&run(&["prime", "--eta", "6", "--min", "4"])).trim(), "7");
    assert_eq!(stdout(&run(&["prime", "--eta", "12", "--min", "8"])).trim(), "13");
    let sampled = stdout(&run(&["prime", "--eta", "6", "--min", "4", "--mode", "sample", "--seed", "9"]));
    let p: u64 = sampled.trim().parse().unwrap();
    assert!(orthoarray::primes::is_prime(p) && p % 6 == 1);
    assert_eq!(stdout(&run(&["rao", "--n", "6", "--m", "4", "--t", "2"])).trim(), "20");
    assert_eq!(stdout(&run(&["rao", "--n", "2", "--m", "8", "--t", "4"])).trim(), "28");
}

#[test]
fn compare_table() {
    let t = stdout(&run(&["compare", "--n", "6", "--m", "4", "--t", "2"]));
    assert!(t.contains("rao") && t.contains("1764") && t.contains("not a prime power"));
    let t = stdout(&run(&["compare", "--n", "7", "--m", "7", "--t", "2"]));
    assert!(t.lines().any(|l| l.starts_with("bush") && l.contains(" 49 ")));
    let t = stdout(&run(&["compare", "--n", "12", "--m", "4", "--t", "2"]));
    assert!(t.contains("(n=4, bush) x") && t.contains("(n=3, rs)"));
}

#[test]
fn hash_commands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.bin");
    let o = run(&["hash", "new", "--n", "6", "--m", "4", "--t", "2", "--seed", "1", "--out", p(&file)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("p=7"));
    let single: Vec<String> = (1..=4)
        .map(|x| stdout(&run(&["hash", "eval", "--in", p(&file), "--x", &x.to_string()])).trim().to_string())
        .collect();
    let inputs = dir.path().join("xs.txt");
    std::fs::write(&inputs, "1 2\n3\n4\n").unwrap();
    let batch = stdout(&run(&["hash", "batch", "--in", p(&file), "--inputs", p(&inputs)]));
    assert_eq!(batch.lines().collect::<Vec<_>>(), single);
    assert!(single.iter().all(|v| (1..=6).contains(&v.parse::<u64>().unwrap())));
    assert_eq!(run(&["hash", "eval", "--in", p(&file), "--x", "5"]).status.code(), Some(2));

    std::fs::write(&file, [0xffu8, 0xff]).unwrap();
    assert_eq!(run(&["hash", "eval", "--in", p(&file), "--x", "1"]).status.code(), Some(1));
}
