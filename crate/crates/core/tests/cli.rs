use std::path::PathBuf;

use lg_orbifold::cli::{run, Outcome, EXIT_COMPUTE, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn lgorb(args: &[&str]) -> Outcome {
    run(std::iter::once("lgorb").chain(args.iter().copied()))
}

fn without_comments(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("cubic_nonsl.poincare", &["poincare", "cubic_nonsl.lg"]),
    ("cubic_nonsl.hodge", &["hodge", "cubic_nonsl.lg"]),
    ("cubic_nonsl.sectors", &["sectors", "cubic_nonsl.lg"]),
    ("cubic_nonsl.scaled", &["--scale", "3", "poincare", "cubic_nonsl.lg"]),
    ("quintic_cycle.csv.out", &["--format", "csv", "hodge", "quintic_cycle.lg"]),
    ("loop_chain.verify", &["verify", "loop_chain.lg"]),
    ("two_weights.verify", &["verify", "two_weights.lg"]),
    ("two_weights.weights", &["weights", "two_weights.lg"]),
];

#[test]
fn golden_outputs() {
    for (expected, args) in GOLDEN {
        let args: Vec<String> = args.iter().map(|a| if a.ends_with(".lg") { data(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = lgorb(&args);
        assert_eq!(out.code, EXIT_OK, "{expected}: {}", out.stderr);
        let want = without_comments(&std::fs::read_to_string(data(expected)).unwrap());
        assert_eq!(out.stdout, want, "{expected}");
    }
}

#[test]
fn quintic_hodge_csv() {
    let out = lgorb(&["--format", "csv", "hodge", "preset:quintic-j"]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(rows[0], "p,q,h");
    for row in ["0,0,1", "1,1,101", "2,1,1", "1,2,1", "2,2,101", "3,3,1", "3,0,1", "0,3,1"] {
        assert!(rows.contains(&row), "missing {row}");
    }
    assert_eq!(rows.len(), 9);
}

#[test]
fn verify_octic_group_two() {
    let out = lgorb(&["verify", "preset:octic-2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("h11: 2\n"));
    assert!(out.stdout.contains("h21: 86\n"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn oracle_compare_rejects_nonabelian() {
    for name in ["quartic-alt", "quintic-j-cycle", "octic-3"] {
        let out = lgorb(&["oracle-compare", &format!("preset:{name}")]);
        assert_ne!(out.code, EXIT_OK, "{name}");
        assert!(out.stderr.contains("diagonal"), "{name}: {}", out.stderr);
    }
    let out = lgorb(&["oracle-compare", "preset:quintic-diag-sl"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("MATCH"));
}

#[test]
fn compare_with_geometry() {
    let out = lgorb(&["compare", "--geometry", &data("quintic_geometry.csv"), "preset:quintic-j"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let out = lgorb(&["compare", "--geometry", &data("quintic_geometry.csv"), "preset:quintic-j-cycle"]);
    assert_eq!(out.code, EXIT_VIOLATION);
    assert!(out.stdout.starts_with("FAIL"));
}

#[test]
fn input_errors() {
    let out = lgorb(&["poincare", &data("unknown_key.lg")]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains(":6:1:"), "{}", out.stderr);
    let out = lgorb(&["poincare", &data("not_invariant.lg")]);
    assert_eq!(out.code, EXIT_INPUT);
    assert_eq!(lgorb(&["poincare", "preset:no-such-thing"]).code, EXIT_INPUT);
    assert_eq!(lgorb(&["poincare", &data("missing.lg")]).code, EXIT_INPUT);
    assert_ne!(lgorb(&["frobnicate"]).code, EXIT_OK);
}

#[test]
fn group_cap_is_a_compute_error() {
    let out = lgorb(&["--cap", "10", "group", "preset:quintic-diag-sl"]);
    assert_eq!(out.code, EXIT_COMPUTE, "{}", out.stderr);
}

#[test]
fn output_independent_of_worker_count() {
    for cmd in ["hodge", "sectors", "poincare"] {
        let one = lgorb(&["--workers", "1", cmd, "preset:octic-3"]);
        let four = lgorb(&["--workers", "4", cmd, "preset:octic-3"]);
        assert_eq!(one.code, EXIT_OK);
        assert_eq!(one.stdout, four.stdout, "{cmd}");
    }
}

#[test]
fn presets_and_family() {
    let out = lgorb(&["presets"]);
    for name in ["cubic-j", "quartic-alt", "octic-4", "nonic-cubic-j", "w14-j"] {
        assert!(out.stdout.contains(name));
    }
    let out = lgorb(&["poincare", "preset:an-6-2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), "u^(1/2) v^(1/6) + u^(1/3) v^(1/3) + u^(1/6) v^(1/2)");
}
