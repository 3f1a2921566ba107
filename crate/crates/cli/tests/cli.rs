//! End-to-end checks of the binary: output values, byte-for-byte
//! reproducibility, and the exit-code contract.

use std::process::{Command, Output};

fn aslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aslab"))
        .args(args)
        .env("ASLAB_BUDGET", "16777216")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn genus_example() {
    let out = aslab(&["genus", "--a", "2", "--b", "1,1"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\"genus_X\": 1"), "{s}");
    assert!(s.contains("\"c2\": 0"), "{s}");
}

#[test]
fn rank_preset_example() {
    let out = aslab(&["rank", "--preset", "f_eq_g_quadratic", "--q", "9"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\"rank\": 8"), "{s}");

    let out = aslab(&["rank", "--preset", "reciprocal_m", "--q", "4", "--m", "3"]);
    assert!(stdout(&out).contains("\"rank\": 8"));
}

#[test]
fn orbits_example() {
    let out = aslab(&["orbits", "--r", "3", "--nu", "2"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\"count\": 2"), "{s}");
    assert!(s.contains("\"bound_over_kprime\": 8"), "{s}");
}

#[test]
fn zeta_example() {
    let out = aslab(&["zeta", "--field", "3", "--as", "q=3,f=x^2", "--through", "2"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\"counts\": [ 4, 16 ]"), "{s}");
    assert!(s.contains("\"L_coeffs\": [ \"1\", \"0\", \"3\" ]"), "{s}");
    assert!(s.contains("\"ss_multiplicity\": 1"), "{s}");
}

#[test]
fn field_arithmetic_example() {
    let out = aslab(&["field", "--p", "5", "--n", "1", "--op", "inv", "--x", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"result\": [ 3 ]"));
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["genus", "--a", "4", "--b", "6"],
        vec!["ascurve", "--p", "5", "--q", "5", "--poles", "4"],
        vec!["zeta", "--field", "2", "--as", "q=2,f=x^3", "--threads", "2"],
        vec!["lattice", "iso", "--q", "5"],
    ] {
        let a = aslab(&args);
        let b = aslab(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn exit_codes() {
    // argument errors: 2
    assert_eq!(aslab(&["nonsense"]).status.code(), Some(2));
    assert_eq!(aslab(&["rank", "--preset", "bogus", "--q", "5"]).status.code(), Some(2));
    assert_eq!(aslab(&["field", "--p", "4", "--n", "1"]).status.code(), Some(2));
    assert_eq!(aslab(&["ascurve", "--p", "3", "--q", "9", "--poles", "3"]).status.code(), Some(2));
    // budget errors: 3
    let out = aslab(&["zeta", "--field", "5", "--as", "q=5,f=x^4"]);
    assert_eq!(out.status.code(), Some(3));
    // success: 0
    assert_eq!(aslab(&["verify", "--suite", "a9"]).status.code(), Some(0));
}

#[test]
fn csv_gram_dump() {
    let out = aslab(&["lattice", "noniso", "--q", "5", "--b", "2", "--csv"]);
    assert!(out.status.success());
    let s = stdout(&out);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 6); // header + 5 rows
    assert!(lines[1].contains("33/10"), "{s}");
}

#[test]
fn verify_suite_filters() {
    let out = aslab(&["verify", "--suite", "staircase"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\"id\": \"A9\""), "{s}");
    assert!(s.contains("\"all_passed\": true"), "{s}");
}
