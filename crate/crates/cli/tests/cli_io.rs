mod common;

use common::{fixture, lcwlab, stderr, stdout};
use lcwlab_cli::report::{Report, Value};

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn analyze_unimodular_example() {
    let out = lcwlab(&["analyze", &path("unimodular_6_m4_5.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("CY = [[-315/2, 0, 0], [0, 315/2, 0], [0, 0, 0]]"),
        "{text}"
    );
    assert!(text.contains("flag[0] = (1, 1, 0)"));
    assert!(text.contains("flag[1] = (1, -1, 0)"));
    assert!(text.contains("D[0] witness = [e0-e1, e2] = -6e0+4e1"));
    assert!(text.contains("verdict = no LCW along eigenflags"));
}

#[test]
fn analyze_json_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = lcwlab(&[
            "analyze",
            &path("weyl_type_b.json"),
            "--json",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let report = Report::from_json(std::str::from_utf8(&bytes).unwrap()).unwrap();
    assert_eq!(report.to_json().as_bytes(), &bytes[..]);
    assert_eq!(
        report.get("scalar", "s"),
        Some(&Value::Exact(lcwlab_core::ratmath::q(-9, 4)))
    );
    assert_eq!(report.get("flags", "type"), Some(&Value::Text("B".into())));
    let order: Vec<&str> = report.sections.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        order,
        [
            "connection",
            "curvature",
            "ricci",
            "scalar",
            "schouten",
            "weyl",
            "flags",
            "distributions",
            "classification"
        ]
    );
}

#[test]
fn type_b_distributions_all_fail() {
    let out = lcwlab(&["analyze", &path("weyl_type_b.json")]);
    let text = stdout(&out);
    for k in 0..3 {
        assert!(
            text.contains(&format!("D[{k}] integrable = false")),
            "{text}"
        );
    }
    assert!(text.contains("D[3] integrable = true"));
    assert!(text.contains("D[3] umbilical = false"));
    assert!(text.contains("verdict = type B: no LCW along eigenflags"));
}

#[test]
fn decimal_literal_is_a_validation_error() {
    let out = lcwlab(&["analyze", &path("bad_decimal.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("brackets[0].result.2: decimals forbidden; write 1/2"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn non_skew_b_is_rejected() {
    let out = lcwlab(&["classify-ckf", &path("bad_skew.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("not skew-symmetric"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_json_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"kind\": \"ckf\",\n  \"dim\": 3,,\n}\n").unwrap();
    let out = lcwlab(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = lcwlab(&["analyze", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobi_failure_unless_skipped() {
    let printed = path("weyl_type_c_as_printed.json");
    let out = lcwlab(&["analyze", &printed]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("Jacobi identity fails"),
        "{}",
        stderr(&out)
    );
    let out = lcwlab(&["--skip-jacobi", "analyze", &printed]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict = not a Lie algebra: Jacobi fails for (e0, e1, e2)"));
}

#[test]
fn classify_dilation_field() {
    let out = lcwlab(&["classify-ckf", &path("ckf_dilation.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("[family]\nid = 2\nname = logarithmic"),
        "{text}"
    );
    assert!(text.contains("[orbit]\norbit = 2"));
    assert!(text.contains("[chain]\nlength = 0"));
}

#[test]
fn classify_arctanh_tuple() {
    // (2e1, -1, 0, 0) is the inverted, translated dilation field.
    let out = lcwlab(&["classify-ckf", &path("ckf_arctanh.json")]);
    let text = stdout(&out);
    assert!(
        text.contains("verdict = LCW field: family 6, orbit 2"),
        "{text}"
    );
}

#[test]
fn classify_rejects_lie_algebras() {
    let out = lcwlab(&["classify-ckf", &path("weyl_type_b.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_type_c_planes() {
    let out = lcwlab(&["analyze", &path("weyl_type_c.json"), "--json", "/dev/null"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("plane[0] = [[1, 0, 0, 0], [0, 1, 0, 0]]"),
        "{text}"
    );
    assert!(text.contains("plane[0] g(nabla_Y X, e3) = 1/2"));
    assert!(text.contains("W0101 = -8"));
}
