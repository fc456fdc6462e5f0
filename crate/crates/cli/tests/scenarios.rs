mod common;

use common::{lcwlab, stderr, stdout};
use lcwlab_cli::report::{Report, Section, Value};
use lcwlab_cli::scenario::{diff, run_scenario, Expect, Golden, SCENARIOS};

#[test]
fn passing_scenarios_exit_zero() {
    for name in ["paper-3d", "paper-4d-b", "euclid-families", "euclid-orbits"] {
        let out = lcwlab(&["scenario", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        assert!(stdout(&out).contains("diffs = 0"));
    }
}

#[test]
fn type_c_mismatch_is_named_and_exits_3() {
    let out = lcwlab(&["scenario", "paper-4d-c"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(
        err.contains("non-product/g(nabla_e0 e1, e2): got -1/2, expected 1/4"),
        "{err}"
    );
    let text = stdout(&out);
    assert!(text.contains("circle/g(nabla_Y X, e3) constant = ok"));
    assert!(text.contains("weyl/W6 = ok"));
}

#[test]
fn unknown_scenario_is_a_validation_error() {
    let out = lcwlab(&["scenario", "paper-5d"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(run_scenario("paper-5d").is_err());
}

#[test]
fn every_scenario_runs() {
    for name in SCENARIOS {
        let outcome = run_scenario(name).unwrap();
        let golden = outcome.report.section("golden").unwrap();
        assert_eq!(
            golden.get("diffs"),
            Some(&Value::Integer(outcome.mismatches.len() as i64))
        );
    }
}

#[test]
fn diff_flags_missing_and_bounds() {
    let mut sec = Section::new("a");
    sec.push("x", Value::numeric(2e-7));
    sec.push("y", Value::Integer(3));
    let report = Report {
        title: "t".into(),
        sections: vec![sec],
    };
    let goldens = [
        Golden {
            section: "a",
            key: "x".into(),
            expect: Expect::AtMost(1e-6),
        },
        Golden {
            section: "a",
            key: "y".into(),
            expect: Expect::Equal(Value::Integer(4)),
        },
        Golden {
            section: "a",
            key: "z".into(),
            expect: Expect::AtMost(1.0),
        },
    ];
    let outcome = diff(report, &goldens);
    assert_eq!(outcome.mismatches.len(), 2);
    assert!(outcome.mismatches[0].starts_with("a/y"));
    assert!(outcome.mismatches[1].contains("missing"));
}
