use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_church-compact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compact_prints_term_and_size() {
    let o = run(&["compact", "201", "--phi", "2", "--sugar"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(2 2 (2 1) (1 0)))) C2)"), "{out}");
    assert!(out.contains("size: 51 (plain 405)"));

    let o = run(&["compact", "1000", "--explain", "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("stage n=1000"));
    assert!(out.contains("steps: "));
}

#[test]
fn verify_and_fuel_exit_codes() {
    let o = run(&["verify", "300"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(
        run(&["verify", "300", "--fuel", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["demo", "--pattern", "ab", "--count", "50", "--fuel", "3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["compact"]).status.code(), Some(2));
    assert_eq!(run(&["compact", "0"]).status.code(), Some(2));
    assert_eq!(run(&["compact", "10", "--phi", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["demo", "--pattern", "a)", "--count", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bench", "--from", "5", "--to", "2", "--out", "x.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table1_and_demo() {
    let o = run(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 9 |    21 |   20"));
    let o = run(&["demo", "--pattern", "abc", "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("normal form: (a b c (a b c (a b c (a b c $))))"));
}

#[test]
fn bench_writes_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sizes.csv");
    let o = run(&[
        "bench",
        "--from",
        "1",
        "--to",
        "200",
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "0x2A",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n,plain,binary,rtp_min,rtp_rec,ratio_rtp_binary")
    );
    assert_eq!(lines.count(), 200);
    let curve = std::fs::read_to_string(dir.path().join("sizes.fig2.csv")).unwrap();
    assert_eq!(curve.lines().count(), 201);
}
