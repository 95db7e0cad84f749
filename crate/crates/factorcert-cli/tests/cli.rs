use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_factorcert"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_certifies_the_quartic_at_a_point() {
    let out = run(&["analyze", "35x^4+12x^2+1", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("at most 2 irreducible factors"), "{text}");
    assert!(text.contains("thm0Explicit.ii"), "{text}");
    assert!(text.contains("29/16"), "{text}");
}

#[test]
fn analyze_emits_machine_readable_reports() {
    let out = run(&["analyze", "35x^4+12x^2+1", "--a", "1", "--b", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["certified_k"], 2);
    assert_eq!(v["route"], "thm0Explicit.ii");
    assert_eq!(v["divisor_class"], "admissible");
    assert_eq!(v["evidence"]["q"], "29/16");
    assert_eq!(v["evidence"]["fa"], "48");
    assert_eq!(v["evidence"]["fb"], "609");
    assert!(v["preconditions"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn analyze_degree_one_certifies_irreducibility() {
    let out = run(&["analyze", "x-1", "--a", "0", "--b", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("at most 1 irreducible factor"));
}

#[test]
fn analyze_scan_finds_the_prime_square_point() {
    let out = run(&["analyze", "42x^3+x^2+5x+1", "--scan", "-5..5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("at most 2 irreducible factors"), "{text}");
    assert!(text.contains("coro2"), "{text}");
    assert!(text.contains("b: 1"), "{text}");
}

#[test]
fn analyze_without_certificate_exits_one() {
    // |f(a)| >= |f(b)| at the only scanned pair: nothing can fire.
    let out = run(&["analyze", "x^2+1", "--a", "1", "--b", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("certified: no"));
}

#[test]
fn analyze_rejects_bad_input() {
    let out = run(&["analyze", "3x^", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));

    let out = run(&["analyze", "x^2+1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["analyze", "x^2+1", "--scan", "5..-5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_and_rejects_claims() {
    let out = run(&["verify", "35x^4+12x^2+1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(5x^2+1)"), "{text}");
    assert!(text.contains("(7x^2+1)"), "{text}");

    let out = run(&["verify", "x^4", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("VIOLATED"));

    let out = run(&["verify", "42x^3+x^2+5x+1", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", "x^9+1", "9"]);
    assert_eq!(out.status.code(), Some(2)); // beyond the default cap
}

#[test]
fn bivariate_certifies_the_worked_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.txt");
    std::fs::write(
        &path,
        "# quartic in y at p = 2\n0: 1\n1: 2x\n2: x^2+4x+2\n3: 4x^2+2x\n4: 4x^2+4x+1\n",
    )
    .unwrap();
    let out = run(&["bivariate", path.to_str().unwrap(), "--g", "x"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("coro6"), "{text}");
    assert!(text.contains("2x^3+2x^2+1"), "{text}");
    assert!(text.contains("at most 2 irreducible factors"), "{text}");

    // The degree-comparison route on the same input.
    let out = run(&[
        "bivariate",
        path.to_str().unwrap(),
        "--ax",
        "0",
        "--bx",
        "x",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("thm5"));
}

#[test]
fn bivariate_rejects_constant_in_y() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("const.txt");
    std::fs::write(&path, "0: x^2+1\n").unwrap();
    let out = run(&["bivariate", path.to_str().unwrap(), "--g", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("constant in y"));
}

#[test]
fn plot_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("one.svg");
    let p2 = dir.path().join("two.svg");
    for p in [&p1, &p2] {
        let out = run(&[
            "plot",
            "35x^4+12x^2+1",
            "--a",
            "1",
            "--b",
            "2",
            "--k",
            "2",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let one = std::fs::read(&p1).unwrap();
    let two = std::fs::read(&p2).unwrap();
    assert_eq!(one, two, "plot output must be deterministic");
    let text = String::from_utf8(one).unwrap();
    assert_eq!(text.matches("class=\"root\"").count(), 4);
    assert_eq!(text.matches("class=\"apollonius\"").count(), 2);
    assert!(text.contains("illustrative only"));
}

#[test]
fn plot_degenerates_to_the_bisector_at_unit_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.svg");
    // x+1 at (0, 2): the only divisor ratio above 1 is 3 > sqrt(3).
    let out = run(&["plot", "x+1", "--a", "0", "--b", "2", "--k", "1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("class=\"bisector\""));
    assert!(!text.contains("class=\"apollonius\""));
}

#[test]
fn plot_rejects_degenerate_inputs() {
    let out = run(&["plot", "x+1", "--a", "2", "--b", "2", "-o", "/tmp/unused.svg"]);
    assert_eq!(out.status.code(), Some(2));
    // |f(a)| >= |f(b)| makes the ratio undefined.
    let out = run(&["plot", "x+1", "--a", "5", "--b", "0", "-o", "/tmp/unused.svg"]);
    assert_eq!(out.status.code(), Some(2));
}
