use std::process::Command;

use awlie::{parse_expr, Engine};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["awlie"];
    argv.extend_from_slice(args);
    let code = awlie_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn delta(src: &str) -> awlie::UawElement {
    parse_expr(src).unwrap().to_uaw(Engine::standard()).unwrap()
}

#[test]
fn nf_of_ba() {
    let (code, out, _) = run(&["nf", "B*A"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "q^2 A B + (-q^-1 + q^3) C + (1 - q^2) ga");
    assert_eq!(delta(out.trim()), delta("q^2*A*B + (q^3 - q^-1)*C - (q^2-1)*ga"));
}

#[test]
fn nf_output_is_a_fixed_point() {
    for src in ["C*B*A", "[H12, Om]", "(A + be)^3", "[[B,A],C]*al"] {
        let (_, out, _) = run(&["nf", src]);
        let (_, again, _) = run(&["nf", out.trim()]);
        assert_eq!(out, again, "{src}");
    }
}

#[test]
fn hall_listing() {
    let (code, out, _) = run(&["hall", "--max-len", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[3], "H4\t[B,A]");
    let (_, out, _) = run(&["hall", "--max-len", "5"]);
    assert_eq!(out.lines().count(), 80);
    let (_, out, _) = run(&["hall", "--max-len", "3"]);
    assert!(out.contains("H12\t[[B,A],C]"));
    assert_eq!(run(&["hall", "--max-len", "99"]).0, 2);
}

#[test]
fn expand_and_hallcoords() {
    let (code, out, _) = run(&["expand", "[B,A]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1 A B + B A");
    let (code, out, _) = run(&["hallcoords", "[[B,A],C] - 2*[C,A]"]);
    assert_eq!(code, 0);
    assert!(out.contains("H12") && out.contains("H5"), "{out}");
    let (code, _, err) = run(&["hallcoords", "A*B"]);
    assert_eq!(code, 1);
    assert!(err.contains("not in the free Lie algebra"));
}

#[test]
fn psi_of_casimir() {
    let (code, out, _) = run(&["--json", "psi", "Om"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nf", "A +"]).0, 2);
    assert_eq!(run(&["nf", "A/0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["verify", "--suite", "no_such_*"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "free_*"]).0, 0);
}

#[test]
fn verify_json_report() {
    let (code, out, _) = run(&["verify", "--suite", "theta_r_nonzero", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
    let r = &v["results"][0];
    assert_eq!(r["check"], "theta_r_nonzero");
    assert_eq!(r["passed"], true);
    assert!(r["elapsed_ms"].is_number());
}

#[test]
fn rank_file() {
    let dir = std::env::temp_dir().join(format!("awlie-rank-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("v.json");
    std::fs::write(&f, r#"["A", "B", "A + B", "B*A - q^2*A*B"]"#).unwrap();
    let path = f.to_str().unwrap();
    let (code, out, _) = run(&["rank", "--file", path]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "rank 3 of 4");
    let (code, _, _) = run(&["rank", "--file", path, "--target", "C - q*ga/(q^2 + 1)"]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["rank", "--file", path, "--target", "C*A"]);
    assert_eq!(code, 1);
    assert!(out.contains("not in span"));
    let (code, out, _) = run(&["rank", "--file", path, "--in", "free"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "rank 3 of 4");
    let (code, _, _) = run(&["rank", "--file", path, "--in", "free", "--target", "C"]);
    assert_eq!(code, 1);
    std::fs::write(&f, "not json").unwrap();
    assert_eq!(run(&["rank", "--file", path]).0, 2);
    assert_eq!(run(&["rank", "--file", "/nonexistent/x.json"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_awlie");
    let ok = Command::new(bin).args(["nf", "C*B"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["nf", "[A,"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
