//! Composition of the module pipelines into reports.

use lcwlab_core::ckf::{
    conformal_killing_selftest, lcw_conditions, orbit_of_family, reduce_to_family, CkField,
    CkfError, ConformalMove, LcwFamily,
};
use lcwlab_core::dist::{
    circle_obstruction, is_integrable, is_umbilical, second_fundamental_form, CircleFamily,
    CircleProbe, Distribution,
};
use lcwlab_core::flags::{
    det_cy, eigenflag_find_3d, weyl_type, FlagCertificate, FlagSearch3d, WeylTag, WeylType,
};
use lcwlab_core::liealg::{curvature_pack, CurvaturePack, LieAlgebra, BIVECTOR_BASIS};
use lcwlab_core::ratmath::{Rational, TensorTable, Vector};

use crate::error::CliError;
use crate::input::InputDoc;
use crate::report::{Report, Section, Value};

pub fn analyze(doc: &InputDoc) -> Result<Report, CliError> {
    match doc {
        InputDoc::LieAlgebra(alg) => analyze_lie(alg),
        InputDoc::Ckf(x) => Ok(analyze_ckf(x)),
    }
}

/// Index label: `0123` while every index is a single digit, `0,1,2,3` after.
pub fn label(idx: &[usize]) -> String {
    if idx.iter().all(|&i| i < 10) {
        idx.iter().map(|i| i.to_string()).collect()
    } else {
        idx.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn frame_combination(v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        let coeff = if mag.is_one() {
            String::new()
        } else {
            mag.to_string()
        };
        out.push_str(&format!("{sign}{coeff}e{i}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Entries `T_ijkl` with `i<j`, `k<l`, `(i,j) <= (k,l)` that are nonzero.
fn canonical_components(section: &mut Section, prefix: &str, t: &TensorTable) {
    let n = t.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a..] {
            let v = t.get(&[i, j, k, l]);
            if !v.is_zero() {
                section.push(
                    format!("{prefix}{}", label(&[i, j, k, l])),
                    Value::Exact(v.clone()),
                );
            }
        }
    }
}

fn analyze_lie(alg: &LieAlgebra) -> Result<Report, CliError> {
    let n = alg.dim();
    if n < 3 {
        return Err(CliError::Validation(format!(
            "curvature analysis needs dim >= 3, got {n}"
        )));
    }
    let pack = curvature_pack(alg);
    let mut report = Report::new(format!("lie algebra, dim {n}"));

    let mut sec = Section::new("connection");
    for i in 0..n {
        for j in 0..n {
            sec.push(
                format!("nabla(e{i},e{j})"),
                Value::ExactVector(pack.connection.nabla(i, j)),
            );
        }
    }
    report.sections.push(sec);

    let mut sec = Section::new("curvature");
    canonical_components(&mut sec, "R", &pack.riemann);
    report.sections.push(sec);

    let mut sec = Section::new("ricci");
    sec.push("Ric", Value::matrix(&pack.ricci));
    report.sections.push(sec);

    let mut sec = Section::new("scalar");
    sec.push("s", Value::Exact(pack.scalar.clone()));
    report.sections.push(sec);

    let mut sec = Section::new("schouten");
    sec.push("S", Value::matrix(&pack.schouten));
    report.sections.push(sec);

    let verdict = match n {
        _ if alg.jacobi_defect().is_some() => {
            let ((i, j, k), _) = alg.jacobi_defect().expect("checked");
            let mut sec = Section::new("flags");
            sec.push(
                "skipped",
                Value::Text("brackets violate Jacobi; curvature symmetries fail".into()),
            );
            report.sections.push(sec);
            format!("not a Lie algebra: Jacobi fails for (e{i}, e{j}, e{k})")
        }
        3 => lie_3d(alg, &pack, &mut report)?,
        4 => lie_4d(alg, &pack, &mut report)?,
        _ => "eigenflag analysis is available in dimensions 3 and 4 only".to_string(),
    };
    let mut sec = Section::new("classification");
    sec.push("verdict", Value::Text(verdict));
    report.sections.push(sec);
    Ok(report)
}

fn lie_3d(alg: &LieAlgebra, pack: &CurvaturePack, report: &mut Report) -> Result<String, CliError> {
    let cy = pack.cotton_york.as_ref().expect("dim 3");
    let cotton = pack.cotton.as_ref().expect("dim 3");
    let mut sec = Section::new("cotton_york");
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..3 {
                let v = cotton.get(&[i, j, k]);
                if !v.is_zero() {
                    sec.push(format!("C{}", label(&[i, j, k])), Value::Exact(v.clone()));
                }
            }
        }
    }
    sec.push("CY", Value::matrix(cy));
    sec.push("det CY", Value::Exact(det_cy(cy).map_err(validation)?));
    report.sections.push(sec);

    let search = eigenflag_find_3d(cy).map_err(validation)?;
    let mut sec = Section::new("flags");
    match &search {
        FlagSearch3d::AllDirections => {
            sec.push("search", Value::Text("CY = 0: every direction".into()))
        }
        FlagSearch3d::Found { certificates } => {
            sec.push("search", Value::Text("found".into()));
            sec.push("count", Value::Integer(certificates.len() as i64));
            push_certificates(&mut sec, certificates);
        }
    }
    report.sections.push(sec);

    let certs = search.certificates();
    let mut sec = Section::new("distributions");
    let ruled_out = flag_distributions(alg, certs, &mut sec)?;
    report.sections.push(sec);

    Ok(match search {
        FlagSearch3d::AllDirections => "conformally flat: every direction is an eigenflag".into(),
        FlagSearch3d::Found { .. } => flag_verdict(certs, ruled_out),
    })
}

fn flag_verdict(certs: &[FlagCertificate], ruled_out: usize) -> String {
    let exact = certs.iter().filter(|c| c.is_exact()).count();
    if certs.is_empty() {
        "no eigenflags: no LCW".into()
    } else if exact < certs.len() {
        format!(
            "inconclusive: {} eigenflag(s) known only numerically",
            certs.len() - exact
        )
    } else if ruled_out == exact {
        "no LCW along eigenflags".into()
    } else {
        format!(
            "{} eigenflag(s) pass integrability and umbilicity",
            exact - ruled_out
        )
    }
}

fn push_certificates(sec: &mut Section, certs: &[FlagCertificate]) {
    for (k, c) in certs.iter().enumerate() {
        match c {
            FlagCertificate::Exact { direction } => {
                sec.push(format!("flag[{k}]"), Value::ExactVector(direction.clone()));
            }
            FlagCertificate::Numeric { direction, defect } => {
                sec.push(
                    format!("flag[{k}]"),
                    Value::NumericVector(direction.clone()),
                );
                sec.push(format!("flag[{k}] defect"), Value::numeric(*defect));
            }
        }
    }
}

/// Integrability and umbilicity of `v^⊥` for each exact flag `v`; returns
/// how many of them fail at least one test.
fn flag_distributions(
    alg: &LieAlgebra,
    certs: &[FlagCertificate],
    sec: &mut Section,
) -> Result<usize, CliError> {
    let mut ruled_out = 0;
    for (k, c) in certs.iter().enumerate() {
        let Some(v) = c.exact_direction() else {
            continue;
        };
        let d = Distribution::orthogonal_to(v).map_err(validation)?;
        let key = |s: &str| format!("D[{k}] {s}");
        sec.push(key("normal"), Value::ExactVector(v.clone()));
        sec.push(key("tangent"), Value::ExactMatrix(d.tangent().to_vec()));
        if !distribution_checks(alg, &d, &key, sec)? {
            ruled_out += 1;
        }
    }
    Ok(ruled_out)
}

/// Pushes the second fundamental form and verdicts; true when `d` is both
/// integrable and umbilical.
fn distribution_checks(
    alg: &LieAlgebra,
    d: &Distribution,
    key: &dyn Fn(&str) -> String,
    sec: &mut Section,
) -> Result<bool, CliError> {
    let forms = second_fundamental_form(alg, d).map_err(validation)?;
    for (z, m) in forms.iter().enumerate() {
        sec.push(key(&format!("sff[{z}]")), Value::matrix(m));
    }
    let integ = is_integrable(alg, d).map_err(validation)?;
    sec.push(key("integrable"), Value::Bool(integ.integrable));
    if let Some(w) = &integ.witness {
        let (a, b) = w.pair;
        let t = d.tangent();
        sec.push(
            key("witness"),
            Value::Text(format!(
                "[{}, {}] = {}",
                frame_combination(&t[a]),
                frame_combination(&t[b]),
                frame_combination(&w.bracket)
            )),
        );
        sec.push(
            key("witness bracket"),
            Value::ExactVector(w.bracket.clone()),
        );
        sec.push(
            key("witness normal component"),
            Value::Exact(w.normal_component.clone()),
        );
    }
    let umb = is_umbilical(alg, d).map_err(validation)?;
    sec.push(key("umbilical"), Value::Bool(umb.umbilical));
    if let Some(h) = &umb.mean_curvature {
        sec.push(key("mean curvature"), Value::ExactVector(h.clone()));
    }
    if let Some(v) = &umb.violation {
        sec.push(
            key("umbilic violation"),
            Value::Text(format!(
                "sff[{}] entry ({},{}) is {} where {} is required",
                v.normal_index, v.entry.0, v.entry.1, v.value, v.expected
            )),
        );
    }
    Ok(integ.integrable && umb.umbilical)
}

fn lie_4d(alg: &LieAlgebra, pack: &CurvaturePack, report: &mut Report) -> Result<String, CliError> {
    let w = pack.weyl.as_ref().expect("dim 4");
    let w6 = pack.weyl_operator.as_ref().expect("dim 4");
    let mut sec = Section::new("weyl");
    sec.push("W6", Value::matrix(w6));
    sec.push(
        "W6 basis",
        Value::Text(
            BIVECTOR_BASIS
                .iter()
                .map(|(i, j)| format!("e{i}^e{j}"))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    );
    canonical_components(&mut sec, "W", w);
    report.sections.push(sec);

    let ty = weyl_type(w).map_err(validation)?;
    let mut sec = Section::new("flags");
    push_weyl_type(&mut sec, &ty);
    report.sections.push(sec);

    let mut sec = Section::new("distributions");
    let ruled_out = flag_distributions(alg, &ty.flags, &mut sec)?;
    let mut planes_ruled_out = 0;
    for (p, plane) in ty.planes.iter().enumerate() {
        if plane_checks(alg, p, &plane.basis, &mut sec)? {
            planes_ruled_out += 1;
        }
    }
    report.sections.push(sec);

    Ok(match ty.tag {
        WeylTag::D => "conformally flat: Weyl tensor vanishes".into(),
        WeylTag::A => "type A: no eigenflags, no LCW".into(),
        WeylTag::C if planes_ruled_out == ty.planes.len() => {
            "type C: no LCW along eigenflags; eigenflag planes are not integrable, not a product of surfaces".into()
        }
        WeylTag::C => "type C: some eigenflag plane admits candidate LCW directions".into(),
        WeylTag::Inconclusive => format!(
            "inconclusive: {}",
            ty.note.clone().unwrap_or_else(|| "spectrum not resolved exactly".into())
        ),
        WeylTag::B => format!("type B: {}", flag_verdict(&ty.flags, ruled_out)),
    })
}

fn push_weyl_type(sec: &mut Section, ty: &WeylType) {
    let tag = match ty.tag {
        WeylTag::A => "A",
        WeylTag::B => "B",
        WeylTag::C => "C",
        WeylTag::D => "D",
        WeylTag::Inconclusive => "inconclusive",
    };
    sec.push("type", Value::Text(tag.into()));
    for (k, e) in ty.eigenvalues.iter().enumerate() {
        let value = match e {
            lcwlab_core::flags::Eigenvalue::Exact { value, .. } => Value::Exact(value.clone()),
            lcwlab_core::flags::Eigenvalue::Numeric { value, .. } => Value::numeric(*value),
        };
        sec.push(format!("eigenvalue[{k}]"), value);
        sec.push(
            format!("eigenvalue[{k}] multiplicity"),
            Value::Integer(e.multiplicity() as i64),
        );
    }
    sec.push("multiplicities exact", Value::Bool(ty.multiplicities_exact));
    sec.push("count", Value::Integer(ty.flags.len() as i64));
    push_certificates(sec, &ty.flags);
    for (p, plane) in ty.planes.iter().enumerate() {
        sec.push(
            format!("plane[{p}]"),
            Value::ExactMatrix(plane.basis.to_vec()),
        );
        sec.push(
            format!("plane[{p}] samples checked"),
            Value::Integer(plane.samples.len() as i64),
        );
    }
    if let Some(s) = &ty.search {
        sec.push("descent starts", Value::Integer(s.starts as i64));
        sec.push("descent converged", Value::Integer(s.converged as i64));
        sec.push("descent min defect", Value::numeric(s.min_defect));
    }
    if let Some(note) = &ty.note {
        sec.push("note", Value::Text(note.clone()));
    }
}

fn frame_index(v: &[Rational]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

/// Checks on a plane of eigenflags: the plane as a distribution, and for
/// frame-aligned planes the obstruction `g(∇_Y X, e_c)` along the circle
/// `X = cos a e_i + sin a e_j`, `Y = -sin a e_i + cos a e_j`. Returns true
/// when LCWs tangent to the plane are ruled out.
fn plane_checks(
    alg: &LieAlgebra,
    p: usize,
    basis: &[Vector; 2],
    sec: &mut Section,
) -> Result<bool, CliError> {
    let d = Distribution::spanned_by(basis.to_vec()).map_err(validation)?;
    let key = |s: &str| format!("plane[{p}] {s}");
    distribution_checks(alg, &d, &key, sec)?;
    let (Some(a), Some(b)) = (frame_index(&basis[0]), frame_index(&basis[1])) else {
        sec.push(
            key("circle"),
            Value::Text("plane not frame-aligned; circle test skipped".into()),
        );
        return Ok(false);
    };
    let family = CircleFamily::new(alg.dim(), a.min(b), a.max(b)).map_err(validation)?;
    let mut ruled_out = false;
    for c in family.others() {
        let ob = circle_obstruction(
            alg,
            &family,
            CircleProbe::Y,
            CircleProbe::X,
            CircleProbe::Frame(c),
        )
        .map_err(validation)?;
        let k = key(&format!("g(nabla_Y X, e{c})"));
        match &ob.constant {
            Some(v) => {
                sec.push(k, Value::Exact(v.clone()));
                ruled_out |= !v.is_zero();
            }
            None => {
                sec.push(k, Value::Text(format!("{} (not constant)", ob.value)));
                ruled_out = true;
            }
        }
        sec.push(
            key(&format!("g(nabla_Y X, e{c}) at infinity consistent")),
            Value::Bool(ob.infinity_consistent),
        );
    }
    Ok(ruled_out)
}

fn analyze_ckf(x: &CkField) -> Report {
    let mut report = Report::new(format!("conformal Killing field, dim {}", x.dim()));

    let cond = lcw_conditions(x);
    let selftest = conformal_killing_selftest(x);
    let mut sec = Section::new("conditions");
    sec.push("conformal Killing", Value::Bool(selftest.passes));
    sec.push(
        "conformal factor slope",
        Value::ExactVector(selftest.factor.slope.clone()),
    );
    sec.push(
        "conformal factor offset",
        Value::Exact(selftest.factor.offset.clone()),
    );
    sec.push("B^gamma = 0", Value::Bool(cond.b_wedge_gamma.is_zero()));
    sec.push(
        "cB - alpha^gamma = 0",
        Value::Bool(cond.cb_minus_alpha_wedge_gamma.is_zero()),
    );
    sec.push("pass", Value::Bool(cond.pass));
    report.sections.push(sec);

    let verdict = match reduce_to_family(x) {
        Ok(red) => {
            report.sections.push(family_section(&red.family));
            let orbit = orbit_of_family(red.family.id);
            let mut sec = Section::new("orbit");
            sec.push("orbit", Value::Integer(orbit as i64));
            report.sections.push(sec);
            let mut sec = Section::new("chain");
            sec.push("length", Value::Integer(red.chain.len() as i64));
            for (k, m) in red.chain.iter().enumerate() {
                sec.push(format!("move[{k}]"), Value::Text(describe_move(m)));
            }
            report.sections.push(sec);
            format!("LCW field: family {}, orbit {orbit}", red.family.id)
        }
        Err(CkfError::NotLcw) => "not the field of an LCW".to_string(),
        Err(e) => format!("reduction failed: {e}"),
    };
    let mut sec = Section::new("classification");
    sec.push("verdict", Value::Text(verdict));
    report.sections.push(sec);
    report
}

fn family_section(f: &LcwFamily) -> Section {
    let mut sec = Section::new("family");
    sec.push("id", Value::Integer(f.id as i64));
    let name = match f.id {
        1 => "linear",
        2 => "logarithmic",
        3 => "angular",
        4 => "inverse linear",
        5 => "spherical arctan",
        _ => "spherical arctanh",
    };
    sec.push("name", Value::Text(name.into()));
    if let Some(g) = &f.gamma {
        sec.push("gamma", Value::ExactVector(g.clone()));
    }
    if let Some(s) = &f.sigma {
        sec.push("sigma", Value::ExactVector(s.clone()));
    }
    if let Some(s) = &f.s {
        sec.push("s", Value::Exact(s.clone()));
    }
    sec.push("affine scale", Value::Exact(f.affine_scale.clone()));
    sec.push("affine shift", Value::Exact(f.affine_shift.clone()));
    sec
}

pub fn describe_move(m: &ConformalMove) -> String {
    let vec = |v: &[Rational]| {
        format!(
            "({})",
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    match m {
        ConformalMove::Translation { x0 } => format!("translation by {}", vec(x0)),
        ConformalMove::Dilation { r } => format!("dilation by {r}"),
        ConformalMove::Rotation { r } => format!(
            "rotation {}",
            r.to_rows()
                .iter()
                .map(|row| vec(row))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        ConformalMove::Inversion => "inversion".into(),
        ConformalMove::Scalar { k } => format!("scalar {k}"),
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}
