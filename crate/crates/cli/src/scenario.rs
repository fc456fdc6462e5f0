//! Built-in fixtures with embedded golden tables.

use lcwlab_core::ckf::{
    conformal_killing_selftest, orbit_class, orbit_of_family, reduce_to_family,
    verify_correspondence, CkField, ConformalMove, LcwFamily,
};
use lcwlab_core::dist::{circle_obstruction, CircleFamily, CircleProbe};
use lcwlab_core::liealg::{connection, fixtures, LieAlgebra};
use lcwlab_core::ratmath::linalg::{self, basis_vector, int_vector};
use lcwlab_core::ratmath::{q, qi, Matrix, Rational, Vector};

use crate::analyze::{analyze, describe_move};
use crate::error::CliError;
use crate::input::InputDoc;
use crate::report::{Report, Section, Value};

pub const SCENARIOS: [&str; 5] = [
    "paper-3d",
    "paper-4d-b",
    "paper-4d-c",
    "euclid-families",
    "euclid-orbits",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Expect {
    Equal(Value),
    AtMost(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Golden {
    pub section: &'static str,
    pub key: String,
    pub expect: Expect,
}

fn eq(section: &'static str, key: impl Into<String>, v: Value) -> Golden {
    Golden {
        section,
        key: key.into(),
        expect: Expect::Equal(v),
    }
}

fn at_most(section: &'static str, key: impl Into<String>, bound: f64) -> Golden {
    Golden {
        section,
        key: key.into(),
        expect: Expect::AtMost(bound),
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub mismatches: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn run_scenario(name: &str) -> Result<Outcome, CliError> {
    let (report, goldens) = match name {
        "paper-3d" => paper_3d()?,
        "paper-4d-b" => paper_4d_b()?,
        "paper-4d-c" => paper_4d_c()?,
        "euclid-families" => euclid_families()?,
        "euclid-orbits" => euclid_orbits()?,
        other => {
            return Err(CliError::Validation(format!(
                "unknown scenario \"{other}\"; expected one of {}",
                SCENARIOS.join(", ")
            )))
        }
    };
    Ok(diff(report, &goldens))
}

/// Compare every golden and append a `golden` section with the outcome.
pub fn diff(mut report: Report, goldens: &[Golden]) -> Outcome {
    let mut mismatches = Vec::new();
    let mut sec = Section::new("golden");
    for g in goldens {
        let name = format!("{}/{}", g.section, g.key);
        let got = report.get(g.section, &g.key).cloned();
        let problem = match (&g.expect, &got) {
            (_, None) => Some("missing from report".to_string()),
            (Expect::Equal(want), Some(v)) if v == want => None,
            (Expect::Equal(want), Some(v)) => Some(format!("got {v}, expected {want}")),
            (Expect::AtMost(bound), Some(Value::Numeric { value, .. })) if *value <= *bound => None,
            (Expect::AtMost(bound), Some(v)) => {
                Some(format!("got {v}, expected at most {bound:e}"))
            }
        };
        match problem {
            None => sec.push(name, Value::Text("ok".into())),
            Some(p) => {
                mismatches.push(format!("{name}: {p}"));
                sec.push(name, Value::Text(format!("MISMATCH {p}")));
            }
        }
    }
    sec.push("diffs", Value::Integer(mismatches.len() as i64));
    report.sections.push(sec);
    Outcome { report, mismatches }
}

fn ints(v: &[i64]) -> Value {
    Value::ExactVector(int_vector(v))
}

fn rats(v: &[Rational]) -> Value {
    Value::ExactVector(v.to_vec())
}

fn matrix(rows: &[&[Rational]]) -> Value {
    Value::ExactMatrix(rows.iter().map(|r| r.to_vec()).collect())
}

fn diag(d: &[Rational]) -> Value {
    Value::matrix(&Matrix::diagonal(d))
}

fn text(s: &str) -> Value {
    Value::Text(s.into())
}

fn lie_report(alg: &LieAlgebra) -> Result<Report, CliError> {
    analyze(&InputDoc::LieAlgebra(alg.clone()))
}

fn paper_3d() -> Result<(Report, Vec<Golden>), CliError> {
    let mut report = lie_report(&fixtures::unimodular_6_m4_5())?;
    report.title = "unimodular algebra with lambda = (6, -4, 5)".into();
    let goldens = vec![
        eq("ricci", "Ric", diag(&[q(-45, 2), q(15, 2), q(-75, 2)])),
        eq("scalar", "s", Value::Exact(q(-105, 2))),
        eq("cotton_york", "CY", diag(&[q(-315, 2), q(315, 2), qi(0)])),
        eq("cotton_york", "det CY", Value::Exact(qi(0))),
        eq("flags", "count", Value::Integer(2)),
        eq("flags", "flag[0]", ints(&[1, 1, 0])),
        eq("flags", "flag[1]", ints(&[1, -1, 0])),
        eq("distributions", "D[0] integrable", Value::Bool(false)),
        eq("distributions", "D[1] integrable", Value::Bool(false)),
        eq(
            "distributions",
            "D[0] tangent",
            Value::ExactMatrix(vec![int_vector(&[1, -1, 0]), int_vector(&[0, 0, 1])]),
        ),
        eq(
            "distributions",
            "D[0] witness",
            text("[e0-e1, e2] = -6e0+4e1"),
        ),
        eq("distributions", "D[0] witness bracket", ints(&[-6, 4, 0])),
        eq(
            "distributions",
            "D[0] witness normal component",
            Value::Exact(qi(-2)),
        ),
        eq("classification", "verdict", text("no LCW along eigenflags")),
    ];
    Ok((report, goldens))
}

fn paper_4d_b() -> Result<(Report, Vec<Golden>), CliError> {
    let mut report = lie_report(&fixtures::weyl_type_b())?;
    report.title = "four-dimensional algebra with Weyl type B".into();
    let z = || qi(0);
    let mut g = vec![
        eq(
            "connection",
            "nabla(e0,e1)",
            rats(&[z(), z(), q(-1, 4), z()]),
        ),
        eq(
            "connection",
            "nabla(e0,e2)",
            rats(&[z(), q(1, 4), z(), z()]),
        ),
        eq(
            "connection",
            "nabla(e1,e2)",
            rats(&[q(-1, 4), z(), z(), q(3, 4)]),
        ),
        eq(
            "connection",
            "nabla(e1,e3)",
            rats(&[z(), z(), q(-3, 4), z()]),
        ),
        eq(
            "connection",
            "nabla(e2,e3)",
            rats(&[z(), q(-3, 4), z(), z()]),
        ),
        eq(
            "ricci",
            "Ric",
            matrix(&[
                &[q(-5, 8), z(), z(), q(9, 8)],
                &[z(), q(-1, 4), z(), z()],
                &[z(), z(), q(-1, 4), z()],
                &[q(9, 8), z(), z(), q(-9, 8)],
            ]),
        ),
        eq("scalar", "s", Value::Exact(q(-9, 4))),
        eq(
            "schouten",
            "S",
            matrix(&[
                &[q(-1, 8), z(), z(), q(9, 16)],
                &[z(), q(1, 16), z(), z()],
                &[z(), z(), q(1, 16), z()],
                &[q(9, 16), z(), z(), q(-3, 8)],
            ]),
        ),
        eq(
            "weyl",
            "W6",
            diag(&[q(-5, 8), q(1, 8), q(1, 2), q(1, 2), q(1, 8), q(-5, 8)]),
        ),
        eq("flags", "type", text("B")),
        eq("flags", "count", Value::Integer(4)),
    ];
    for (key, v) in [
        ("R0101", q(-11, 16)),
        ("R0113", q(-9, 16)),
        ("R0202", q(1, 16)),
        ("R0223", q(-9, 16)),
        ("R1212", q(5, 8)),
        ("R1313", q(-3, 16)),
        ("R2323", q(-15, 16)),
    ] {
        g.push(eq("curvature", key, Value::Exact(v)));
    }
    let sff: [[[Rational; 3]; 3]; 4] = [
        [[z(), q(1, 4), z()], [q(5, 4), z(), z()], [z(), z(), z()]],
        [
            [z(), q(-1, 4), z()],
            [q(-5, 4), z(), q(3, 4)],
            [z(), q(-1, 4), z()],
        ],
        [
            [z(), q(1, 4), z()],
            [q(-1, 4), z(), q(3, 4)],
            [z(), q(1, 4), z()],
        ],
        [[z(), z(), z()], [z(), z(), q(-3, 4)], [z(), q(-3, 4), z()]],
    ];
    for (k, m) in sff.iter().enumerate() {
        g.push(eq(
            "flags",
            format!("flag[{k}]"),
            Value::ExactVector(basis_vector(4, k)),
        ));
        g.push(eq(
            "distributions",
            format!("D[{k}] sff[0]"),
            Value::ExactMatrix(m.iter().map(|r| r.to_vec()).collect()),
        ));
        g.push(eq(
            "distributions",
            format!("D[{k}] integrable"),
            Value::Bool(k == 3),
        ));
    }
    g.push(eq("distributions", "D[3] umbilical", Value::Bool(false)));
    g.push(eq(
        "classification",
        "verdict",
        text("type B: no LCW along eigenflags"),
    ));
    Ok((report, g))
}

fn paper_4d_c() -> Result<(Report, Vec<Golden>), CliError> {
    let alg = fixtures::weyl_type_c();
    let mut report = lie_report(&alg)?;
    report.title = "four-dimensional algebra with Weyl type C".into();

    // The brackets as first written, with [e1,e2] = e0 + e3, fail Jacobi.
    let mut sec = Section::new("input");
    let printed = fixtures::weyl_type_c_as_printed();
    if let Some(((i, j, k), defect)) = printed.jacobi_defect() {
        sec.push(
            "[e1,e2] = e0+e3 Jacobi defect",
            Value::Text(format!("({i},{j},{k}): {}", Value::ExactVector(defect))),
        );
    }
    sec.push("[e1,e2] used", Value::ExactVector(alg.bracket_basis(1, 2)));
    report.sections.insert(0, sec);

    // Second fundamental form of e0 ⊕ e1 along e2, and the circle entries.
    let conn = connection(&alg);
    let mut sec = Section::new("non-product");
    sec.push(
        "g(nabla_e0 e1, e2)",
        Value::Exact(conn.get(0, 1, 2).clone()),
    );
    sec.push(
        "g(nabla_e1 e0, e2)",
        Value::Exact(conn.get(1, 0, 2).clone()),
    );
    report.sections.push(sec);

    let family = CircleFamily::new(4, 0, 1).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut sec = Section::new("circle");
    let probes = [
        (
            "g(nabla_Y X, e3)",
            CircleProbe::Y,
            CircleProbe::X,
            CircleProbe::Frame(3),
        ),
        (
            "g(nabla_Y e3, X)",
            CircleProbe::Y,
            CircleProbe::Frame(3),
            CircleProbe::X,
        ),
        (
            "g(nabla_e3 Y, X)",
            CircleProbe::Frame(3),
            CircleProbe::Y,
            CircleProbe::X,
        ),
    ];
    for (key, u, v, w) in probes {
        let ob = circle_obstruction(&alg, &family, u, v, w)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        sec.push(key, Value::Text(ob.value.to_string()));
        sec.push(
            format!("{key} constant"),
            ob.constant
                .map_or(Value::Text("not constant".into()), Value::Exact),
        );
        sec.push(format!("{key} at infinity"), Value::Exact(ob.at_infinity));
        sec.push(
            format!("{key} infinity consistent"),
            Value::Bool(ob.infinity_consistent),
        );
    }
    report.sections.push(sec);

    let mut g = vec![
        eq(
            "weyl",
            "W6",
            diag(&[qi(-8), qi(4), qi(4), qi(4), qi(4), qi(-8)]),
        ),
        eq("flags", "type", text("C")),
        eq(
            "flags",
            "plane[0]",
            Value::ExactMatrix(vec![basis_vector(4, 0), basis_vector(4, 1)]),
        ),
        eq(
            "flags",
            "plane[1]",
            Value::ExactMatrix(vec![basis_vector(4, 2), basis_vector(4, 3)]),
        ),
        eq("circle", "g(nabla_Y X, e3) constant", Value::Exact(q(1, 2))),
        eq(
            "circle",
            "g(nabla_Y X, e3) infinity consistent",
            Value::Bool(true),
        ),
        eq("distributions", "plane[0] integrable", Value::Bool(false)),
        eq("non-product", "g(nabla_e0 e1, e2)", Value::Exact(q(1, 4))),
        eq("non-product", "g(nabla_e1 e0, e2)", Value::Exact(q(-1, 4))),
    ];
    for (key, v) in [
        ("W0101", -8),
        ("W0202", 4),
        ("W0303", 4),
        ("W1212", 4),
        ("W1313", 4),
        ("W2323", -8),
    ] {
        g.push(eq("weyl", key, Value::Exact(qi(v))));
    }
    Ok((report, g))
}

/// Rational points away from the singular sets of all six weights.
pub fn sample_points() -> Vec<Vector> {
    [
        [q(1, 3), q(2, 5), q(-3, 7)],
        [q(-2, 3), q(1, 7), q(5, 11)],
        [q(3, 2), q(-1, 4), q(2, 9)],
        [q(-5, 4), q(-3, 5), q(1, 6)],
        [q(2, 7), q(7, 5), q(-4, 3)],
        [q(4, 5), q(-5, 6), q(-1, 8)],
        [q(-1, 9), q(3, 4), q(6, 7)],
        [q(7, 3), q(1, 2), q(-2, 5)],
        [q(-3, 8), q(-7, 4), q(3, 10)],
        [q(5, 9), q(9, 7), q(4, 13)],
    ]
    .into_iter()
    .map(|p| p.to_vec())
    .collect()
}

/// One representative per family, in dimension 3.
pub fn representatives() -> Vec<LcwFamily> {
    let e = |i| basis_vector(3, i);
    vec![
        LcwFamily::linear(e(0)).expect("nonzero"),
        LcwFamily::logarithmic(3),
        LcwFamily::angular(e(0), e(1)).expect("independent"),
        LcwFamily::inverse_linear(e(0)).expect("nonzero"),
        LcwFamily::spherical_arctan(e(0), qi(1)).expect("valid"),
        LcwFamily::spherical_arctanh(e(0), qi(1)).expect("valid"),
    ]
}

fn euclid_families() -> Result<(Report, Vec<Golden>), CliError> {
    let mut report = Report::new("six normal forms in dimension 3");
    let mut sec = Section::new("family");
    let mut g = Vec::new();
    let samples = sample_points();
    for f in representatives() {
        let id = f.id;
        let field = f.canonical_field();
        let red = reduce_to_family(&field).map_err(|e| CliError::Validation(e.to_string()))?;
        let corr = verify_correspondence(&f, &samples);
        let key = |s: &str| format!("F{id} {s}");
        sec.push(
            key("conformal Killing"),
            Value::Bool(conformal_killing_selftest(&field).passes),
        );
        sec.push(key("reduced id"), Value::Integer(red.family.id as i64));
        sec.push(key("chain length"), Value::Integer(red.chain.len() as i64));
        sec.push(
            key("orbit"),
            Value::Integer(orbit_of_family(red.family.id) as i64),
        );
        sec.push(
            key("correspondence residual"),
            Value::Numeric {
                value: corr.max_residual,
                residual: None,
            },
        );
        sec.push(
            key("correspondence checked"),
            Value::Integer(corr.checked as i64),
        );
        let orbit = [1, 2, 3, 1, 3, 2][id as usize - 1];
        g.push(eq("family", key("conformal Killing"), Value::Bool(true)));
        g.push(eq("family", key("reduced id"), Value::Integer(id as i64)));
        g.push(eq("family", key("chain length"), Value::Integer(0)));
        g.push(eq("family", key("orbit"), Value::Integer(orbit)));
        g.push(at_most("family", key("correspondence residual"), 1e-6));
        g.push(eq(
            "family",
            key("correspondence checked"),
            Value::Integer(samples.len() as i64),
        ));
    }
    report.sections.push(sec);

    // The dilation field as an input document.
    let dilation = analyze(&InputDoc::Ckf(CkField::dilation_field(3).expect("dim 3")))?;
    let mut sec = Section::new("dilation");
    for name in ["family", "orbit", "chain"] {
        if let Some(s) = dilation.section(name) {
            for e in &s.entries {
                sec.push(format!("{name} {}", e.key), e.value.clone());
            }
        }
    }
    report.sections.push(sec);
    g.push(eq("dilation", "family id", Value::Integer(2)));
    g.push(eq("dilation", "orbit orbit", Value::Integer(2)));
    g.push(eq("dilation", "chain length", Value::Integer(0)));
    Ok((report, g))
}

fn push_field(sec: &mut Section, prefix: &str, x: &CkField) {
    sec.push(
        format!("{prefix} alpha"),
        Value::ExactVector(x.alpha().to_vec()),
    );
    sec.push(format!("{prefix} c"), Value::Exact(x.c().clone()));
    sec.push(format!("{prefix} B"), Value::matrix(x.b()));
    sec.push(
        format!("{prefix} gamma"),
        Value::ExactVector(x.gamma().to_vec()),
    );
}

fn expect_field(g: &mut Vec<Golden>, prefix: &str, alpha: Vector, c: Rational, gamma: Vector) {
    g.push(eq(
        "orbits",
        format!("{prefix} alpha"),
        Value::ExactVector(alpha),
    ));
    g.push(eq("orbits", format!("{prefix} c"), Value::Exact(c)));
    g.push(eq(
        "orbits",
        format!("{prefix} B"),
        Value::matrix(&Matrix::zeros(3, 3)),
    ));
    g.push(eq(
        "orbits",
        format!("{prefix} gamma"),
        Value::ExactVector(gamma),
    ));
}

fn euclid_orbits() -> Result<(Report, Vec<Golden>), CliError> {
    let ckf = |e: lcwlab_core::ckf::CkfError| CliError::Validation(e.to_string());
    let e1 = basis_vector(3, 0);
    let times = |k: Rational| linalg::scale(&e1, &k);
    let zero = || linalg::zero_vector(3);
    let mut report = Report::new("orbit chains in dimension 3");
    let mut sec = Section::new("orbits");
    let mut g = Vec::new();

    // log|x| to the arctanh weight.
    let chain = [
        ConformalMove::Translation { x0: e1.clone() },
        ConformalMove::Inversion,
        ConformalMove::Translation {
            x0: times(q(-1, 2)),
        },
        ConformalMove::Dilation { r: qi(2) },
    ];
    let mut x = CkField::dilation_field(3).map_err(ckf)?;
    push_field(&mut sec, "log step[0]", &x);
    for (k, m) in chain.iter().enumerate() {
        x = x.act(m).map_err(ckf)?;
        sec.push(format!("log move[{k}]"), Value::Text(describe_move(m)));
        push_field(&mut sec, &format!("log step[{}]", k + 1), &x);
    }
    expect_field(&mut g, "log step[1]", zero(), qi(1), times(qi(-1)));
    expect_field(&mut g, "log step[2]", times(qi(2)), qi(-1), zero());
    expect_field(&mut g, "log step[3]", times(qi(2)), qi(0), times(q(-1, 4)));
    expect_field(&mut g, "log step[4]", e1.clone(), qi(0), times(q(-1, 2)));
    let red = reduce_to_family(&x).map_err(ckf)?;
    sec.push("log end family", Value::Integer(red.family.id as i64));
    g.push(eq("orbits", "log end family", Value::Integer(6)));

    // e1·x under inversion.
    let lin = CkField::translation_field(e1.clone()).map_err(ckf)?;
    let inv = lin.act(&ConformalMove::Inversion).map_err(ckf)?;
    push_field(&mut sec, "linear inverted", &inv);
    expect_field(&mut g, "linear inverted", times(qi(-2)), qi(0), zero());
    let red = reduce_to_family(&inv).map_err(ckf)?;
    sec.push(
        "linear inverted family",
        Value::Integer(red.family.id as i64),
    );
    g.push(eq("orbits", "linear inverted family", Value::Integer(4)));

    // Orbit classes of the six representatives, and that the columns differ.
    for f in representatives() {
        let orbit = orbit_class(&f.canonical_field()).map_err(ckf)?;
        let key = format!("F{} orbit", f.id);
        sec.push(key.clone(), Value::Integer(orbit as i64));
        g.push(eq(
            "orbits",
            key,
            Value::Integer([1, 2, 3, 1, 3, 2][f.id as usize - 1]),
        ));
    }
    report.sections.push(sec);
    Ok((report, g))
}
