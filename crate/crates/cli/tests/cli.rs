use std::path::PathBuf;

use qth_cli::{parse_problem, run_args, Outcome};
use qth_core::poly::parse_poly;
use qth_core::Error;

fn fx(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn qth(args: &[&str]) -> Outcome {
    run_args(std::iter::once("qth").chain(args.iter().copied()))
}

/// Generator lines of a report section `title (n):`.
fn section<'a>(out: &'a str, title: &str) -> Vec<&'a str> {
    let mut lines = out.lines().skip_while(|l| !l.starts_with(&format!("{title} (")));
    let Some(head) = lines.next() else { return vec![] };
    let n: usize = head[title.len() + 2..head.len() - 2].parse().unwrap();
    lines.take(n).map(str::trim).collect()
}

#[test]
fn closure_report_shows_two_rounds() {
    let out = qth(&["closure", &fx("mono3.prob"), "--e", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("Q = 2\n"));
    assert_eq!(section(&out.stdout, "round 1").len(), 12);
    let r2 = section(&out.stdout, "round 2");
    assert_eq!(r2.len(), 13);
    assert!(r2.contains(&"a^3*b^3*c^3"));
    assert!(out.stdout.contains("round 3: no change"));
}

#[test]
fn member_report() {
    let f = fx("units.prob");
    let out = qth(&["member", &f, "--poly", "x^3*y^2*z", "--k", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("member of C(I^3): true"));
    assert!(out.stdout.contains("witness: G_4_3*G_4_2*G_3_0\n"));
    assert!(!out.stdout.contains("lower bound only"));
    let out = qth(&["member", &f, "--poly", "x^3*y^2*z", "--k", "4"]);
    assert!(out.stdout.contains("member of C(I^4): false"));
    let out = qth(&["member", &f, "--poly", "x^3*y^2*z", "--k", "1", "--kmax", "1"]);
    assert!(out.stdout.contains("lower bound only"));
}

#[test]
fn nf_of_zero() {
    let out = qth(&["nf", &fx("curve.prob"), "--poly", "0"]);
    assert_eq!((out.stdout.as_str(), out.code), ("0\n", 0));
    let out = qth(&["nf", &fx("curve.prob"), "--poly", "y^2"]);
    assert_eq!(out.stdout, "x1^9 + y*x2^3\n");
}

#[test]
fn gb_report_lists_free_basis() {
    let out = qth(&["gb", &fx("curve.prob"), "--reduced"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("free basis: 1, y\n"));
    let out = qth(&["gb", &fx("mono3.prob")]);
    assert!(out.stdout.contains("free basis: 1\n"));
    let out = qth(&["gb", &fx("warning_local.prob")]);
    assert_eq!(section(&out.stdout, "standard basis"), vec!["1"]);
    assert_eq!(qth(&["gb", &fx("warning_local.prob"), "--reduced"]).code, 3);
}

#[test]
fn rees_report_sections() {
    let f = fx("curve.prob");
    let out = qth(&["rees", &f, "--kmax", "2", "--suppress-t"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(section(&out.stdout, "relations level 0").len(), 3);
    assert_eq!(section(&out.stdout, "induced level 0").len(), 4);
    assert!(section(&out.stdout, "induced level 0").contains(&"y^2 + y*x2*G_6_2 + G_6_0^3"));
    assert_eq!(section(&out.stdout, "relations level 1"), vec!["y + G_9_0"]);
    assert_eq!(section(&out.stdout, "relations level 2").len(), 2);
    assert_eq!(section(&out.stdout, "induced level 2").len(), 12);
    assert!(out.stdout.contains("soundness: ok\ngrading: ok\n"));
    assert!(!out.stdout.contains("*s"));
    let with_s = qth(&["rees", &f, "--kmax", "2"]);
    assert!(with_s.stdout.contains("y + G_9_0*s\n"));
}

#[test]
fn oracle_and_certify_reports() {
    let out = qth(&["oracle", &fx("cyclic4.prob")]);
    assert!(out.stdout.contains("a1*a2*a3*a4  [k = 4]"));
    assert_eq!(qth(&["oracle", &fx("curve.prob")]).code, 3);
    let out = qth(&["certify", &fx("squares.prob"), "--poly", "x*y", "--kmax", "3"]);
    assert!(out.stdout.contains("degree: 2\n"));
    assert!(out.stdout.contains("replay: ok"));
    let out = qth(&["certify", &fx("squares.prob"), "--poly", "1", "--kmax", "3"]);
    assert!(out.stdout.contains("no certificate with degree <= 3"));
}

#[test]
fn powers_report() {
    let out = qth(&["powers", &fx("squares.prob"), "--kmax", "3"]);
    assert!(out.stdout.contains("stop index: 2"));
    let alt = qth(&["powers", &fx("squares.prob"), "--kmax", "3", "--seed-prev-power"]);
    assert_eq!(section(&out.stdout, "C(I^2)"), section(&alt.stdout, "C(I^2)"));
    let both = qth(&["powers", &fx("squares.prob"), "--kmax", "3", "--seed-prev-power", "--seed-prev-closure"]);
    assert_eq!(both.code, 1);
}

#[test]
fn reports_are_deterministic() {
    let f = fx("curve.prob");
    for args in [vec!["rees", f.as_str(), "--kmax", "2"], vec!["closure", f.as_str()], vec!["powers", f.as_str(), "--kmax", "2"]] {
        assert_eq!(qth(&args), qth(&args));
    }
}

#[test]
fn report_lists_round_trip() {
    let f = fx("mono3.prob");
    let pb = qth_cli::load_problem(std::path::Path::new(&f)).unwrap();
    let out = qth(&["closure", &f]);
    for line in section(&out.stdout, "closure") {
        let p = parse_poly(line, pb.ring()).unwrap();
        assert_eq!(p.to_string(), line);
    }
}

#[test]
fn loads_presentations() {
    let pb = parse_problem(&std::fs::read_to_string(fx("curve.prob")).unwrap()).unwrap();
    assert_eq!(pb.presentation.rank(), 2);
    assert!(pb.warnings.is_empty());
    let pb = parse_problem(&std::fs::read_to_string(fx("mono3.prob")).unwrap()).unwrap();
    assert_eq!(pb.presentation.rank(), 1);
    let pb = parse_problem(&std::fs::read_to_string(fx("units.prob")).unwrap()).unwrap();
    assert_eq!(pb.parse_poly("y").unwrap(), pb.parse_poly("x11").unwrap());
}

fn load_err(text: &str) -> Error {
    parse_problem(text).unwrap_err()
}

#[test]
fn malformed_files() {
    let base = "field 2\nvars x y\norder global\nideal\n";
    match load_err(&format!("{base}x^2 + w\nend\n")) {
        Error::Parse { line, column, .. } => assert_eq!((line, column), (5, 7)),
        e => panic!("{e}"),
    }
    let bad = [
        "vars x\nfield 2\norder global\nideal\nx\nend\n",
        "field 4\nvars x\norder global\nideal\nx\nend\n",
        "field 2\nvars x\norder sideways\nideal\nx\nend\n",
        "field 2\nvars x\norder global\nideal\nx\n",
        "field 2\nvars x\norder global\nweights\n1 1\nideal\nx\nend\n",
        "field 2\nvars x\norder global\nweights\nglobal -1\nideal\nx\nend\n",
        "field 2\nvars x x\norder global\nideal\nx\nend\n",
        "field 2\nvars x\norder global\nideal\n0\nend\n",
        "field 2\nvars x\norder global\nideal\nx^\nend\n",
        "field 2\nvars x\norder global\nideal\nx\nend\nx\n",
        "field 2\nvars x\norder global\ndefine x = x^2\nideal\nx\nend\n",
        "field 2\nvars x\nideal\nx\nend\n",
        "field 2\norder global\nideal\nx\nend\n",
        "field 2\nvars x\norder global\nrelations\nx^2\nideal\nx\nend\n",
    ];
    for (k, text) in bad.iter().enumerate() {
        let code = load_err(text).exit_code();
        let want = if k == 13 { 3 } else { 1 };
        assert_eq!(code, want, "case {k}: {text}");
    }
}

#[test]
fn exit_codes_through_run() {
    assert_eq!(qth(&["gb", "/nonexistent/file.prob"]).code, 1);
    assert_eq!(qth(&["frobnicate"]).code, 1);
    assert_eq!(qth(&["--help"]).code, 0);
    let out = qth(&["closure", &fx("mono3.prob"), "--e", "1", "--max-rounds", "1"]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    let out = qth(&["nf", &fx("curve.prob"), "--poly", "q"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("column 1"));
}
