use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn sofic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sofic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut args = cmd.to_vec();
    args.push(path.to_str().unwrap());
    sofic(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn edge_lines(text: &str) -> usize {
    text.lines().filter(|l| l.contains(" -> ")).count()
}

#[test]
fn cover_of_even_shift() {
    let out = run_on(&["cover"], "even.txt");
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("classes: 3\n"));
    assert!(text.contains("stabilization level: 2\n"));
    assert!(text.contains("edges: 5\n"));
    assert_eq!(edge_lines(&text), 5);
}

#[test]
fn cover_of_full_shift() {
    let text = stdout(&run_on(&["cover"], "full2.txt"));
    assert!(text.starts_with("classes: 1\n"));
    assert_eq!(edge_lines(&text), 2);
}

#[test]
fn matrix_of_full_shift() {
    let out = run_on(&["matrix"], "full2.txt");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1\n1 1\n");
}

#[test]
fn matrix_is_square_in_edge_count() {
    let text = stdout(&run_on(&["matrix"], "even.txt"));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.split(' ').count() == 5));
}

#[test]
fn verify_passes_on_every_fixture() {
    for name in [
        "even.txt",
        "golden.txt",
        "full1.txt",
        "full2.txt",
        "full3.txt",
        "full4.txt",
        "two_even.txt",
        "chain.txt",
    ] {
        let out = run_on(&["--max-word-len", "5", "verify"], name);
        let text = stdout(&out);
        assert!(out.status.success(), "{name}: {text}");
        assert!(text.ends_with("families=9 failed=0\n"), "{name}: {text}");
    }
}

#[test]
fn verify_fails_on_a_corrupted_cover() {
    let out = run_on(&["--max-word-len", "5", "verify", "--corrupt", "drop:0"], "even.txt");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL letter-cylinders"));
}

#[test]
fn ktheory_values() {
    let cases = [
        ("full2.txt", "K0 = 0, K1 = 0"),
        ("full3.txt", "K0 = Z/2, K1 = 0"),
        ("full4.txt", "K0 = Z/3, K1 = 0"),
        ("even.txt", "K0 = Z, K1 = Z"),
        ("golden.txt", "K0 = 0, K1 = 0"),
    ];
    for (name, expected) in cases {
        let out = run_on(&["ktheory"], name);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim_end(), expected, "{name}");
    }
}

#[test]
fn oracle_agrees() {
    let cases = [
        ("even.txt", "3 sets via both methods"),
        ("golden.txt", "2 sets via both methods"),
        ("full2.txt", "1 set via both methods"),
    ];
    for (name, expected) in cases {
        let out = run_on(&["oracle"], name);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim_end(), expected, "{name}");
    }
}

#[test]
fn words_of_even_shift() {
    let out = run_on(&["words", "-k", "3"], "even.txt");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "000\n001\n010\n011\n100\n110\n111\n");
}

#[test]
fn words_of_golden_mean_shift() {
    let text = stdout(&run_on(&["words", "-k", "4"], "golden.txt"));
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|w| !w.contains("11")));
}

#[test]
fn malformed_input_reports_line() {
    let dir = std::env::temp_dir().join(format!("sofic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "alphabet 0 1\nvertex a\nedge a b 0\n").unwrap();
    for cmd in ["cover", "matrix", "verify", "ktheory", "oracle"] {
        let out = sofic(&[cmd, bad.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("line 3"), "{cmd}: {err}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_file_is_an_input_error() {
    let out = sofic(&["cover", "/nonexistent/sofic.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dot_output_is_written() {
    let dir = std::env::temp_dir().join(format!("sofic-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("even.dot");
    let even = fixture("even.txt");
    let out = sofic(&["cover", even.to_str().unwrap(), "--dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph cover {"));
    assert_eq!(dot.matches(" -> ").count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for cmd in ["cover", "matrix", "ktheory"] {
        let a = run_on(&[cmd], "two_even.txt");
        let b = run_on(&[cmd], "two_even.txt");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn disjoint_copies_share_a_cover() {
    assert_eq!(
        stdout(&run_on(&["cover"], "two_even.txt")),
        stdout(&run_on(&["cover"], "even.txt"))
    );
}
