//! Browser bindings for the lcwlab demo page.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic is testable natively; the `#[wasm_bindgen]` wrappers only convert
//! errors into JS exceptions.

use lcwlab_core::ckf::{psi_evaluate, LcwFamily};
use lcwlab_core::dist::{is_integrable, is_umbilical, Distribution};
use lcwlab_core::flags::{
    det_cy, eigenflag_find_3d, flag_defect_4d, FlagCertificate, FlagSearch3d,
};
use lcwlab_core::liealg::{cotton_york, fixtures, weyl, LieAlgebra};
use lcwlab_core::ratmath::linalg::basis_vector;
use lcwlab_core::ratmath::{qi, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_lambda(name: &str, text: &str) -> Result<Rational, String> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| format!("{name}: {e}"))
}

fn tuple(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn flag_entry(alg: &LieAlgebra, cert: &FlagCertificate) -> Result<Value, String> {
    let direction = match cert {
        FlagCertificate::Exact { direction } => direction,
        FlagCertificate::Numeric { direction, defect } => {
            return Ok(json!({ "direction": direction, "exact": false, "defect": defect }));
        }
    };
    let d = Distribution::orthogonal_to(direction).map_err(|e| e.to_string())?;
    let integrable = is_integrable(alg, &d)
        .map_err(|e| e.to_string())?
        .integrable;
    let umbilical = is_umbilical(alg, &d).map_err(|e| e.to_string())?.umbilical;
    Ok(json!({
        "direction": tuple(direction),
        "exact": true,
        "integrable": integrable,
        "umbilical": umbilical,
    }))
}

/// Cotton-York data, eigenflags and their orthogonal distributions for the
/// unimodular algebra `[e1,e2] = l1 e0, [e2,e0] = l2 e1, [e0,e1] = l3 e2`.
pub fn explore_unimodular_json(l1: &str, l2: &str, l3: &str) -> Result<Value, String> {
    let lambda = [
        parse_lambda("l1", l1)?,
        parse_lambda("l2", l2)?,
        parse_lambda("l3", l3)?,
    ];
    let alg = LieAlgebra::unimodular_3d(lambda[0].clone(), lambda[1].clone(), lambda[2].clone());
    let cy = cotton_york(&alg).map_err(|e| e.to_string())?;
    let det = det_cy(&cy).map_err(|e| e.to_string())?;
    let diag: Vec<String> = (0..3).map(|i| cy[(i, i)].to_string()).collect();
    let mut out = json!({
        "lambda": lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "cy_diagonal": diag,
        "det_cy": det.to_string(),
    });
    if !det.is_zero() {
        out["flags"] = json!([]);
        out["verdict"] = json!("no eigenflag: det CY is nonzero");
        return Ok(out);
    }
    let search = eigenflag_find_3d(&cy).map_err(|e| e.to_string())?;
    let FlagSearch3d::Found { certificates } = search else {
        out["flags"] = json!("all directions");
        out["verdict"] = json!("conformally flat: every direction is an eigenflag");
        return Ok(out);
    };
    let flags = certificates
        .iter()
        .map(|c| flag_entry(&alg, c))
        .collect::<Result<Vec<_>, _>>()?;
    let carrier = flags
        .iter()
        .any(|f| f["integrable"] == json!(true) && f["umbilical"] == json!(true));
    out["verdict"] = json!(if flags.is_empty() {
        "no eigenflag"
    } else if carrier {
        "some eigenflag has an integrable umbilical orthogonal distribution"
    } else {
        "eigenflags exist but none carries an LCW"
    });
    out["flags"] = Value::Array(flags);
    Ok(out)
}

fn representative(id: u8) -> Result<LcwFamily, String> {
    let e = |i| basis_vector(3, i);
    let family = match id {
        1 => LcwFamily::linear(e(0)),
        2 => Ok(LcwFamily::logarithmic(3)),
        3 => LcwFamily::angular(e(0), e(1)),
        4 => LcwFamily::inverse_linear(e(0)),
        5 => LcwFamily::spherical_arctan(e(0), qi(1)),
        6 => LcwFamily::spherical_arctanh(e(0), qi(1)),
        _ => return Err(format!("unknown family {id}; expected 1..6")),
    };
    family.map_err(|e| e.to_string())
}

/// Row-major samples of the family representative on the square
/// `[-extent, extent]²` in the plane `x2 = height`. Singular points are NaN.
pub fn psi_slice_values(id: u8, size: usize, extent: f64, height: f64) -> Result<Vec<f64>, String> {
    if size < 2 {
        return Err("size must be at least 2".into());
    }
    if extent.is_nan() || extent <= 0.0 {
        return Err("extent must be positive".into());
    }
    let family = representative(id)?;
    let step = 2.0 * extent / (size - 1) as f64;
    let mut out = Vec::with_capacity(size * size);
    for row in 0..size {
        let y = extent - row as f64 * step;
        for col in 0..size {
            let x = -extent + col as f64 * step;
            out.push(psi_evaluate(&family, &[x, y, height]).unwrap_or(f64::NAN));
        }
    }
    Ok(out)
}

/// Flag defect of `cos t e_a + sin t e_b` for `t` in `[0, π)` on one of the
/// built-in Weyl examples (`"b"` or `"c"`).
pub fn flag_defect_values(
    kind: &str,
    a: usize,
    b: usize,
    samples: usize,
) -> Result<Vec<f64>, String> {
    let alg = match kind {
        "b" => fixtures::weyl_type_b(),
        "c" => fixtures::weyl_type_c(),
        other => {
            return Err(format!(
                "unknown example {other:?}; expected \"b\" or \"c\""
            ))
        }
    };
    if a >= 4 || b >= 4 || a == b {
        return Err("a and b must be distinct frame indices in 0..4".into());
    }
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let w = weyl(&alg).map_err(|e| e.to_string())?;
    (0..samples)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / samples as f64;
            let mut v = [0.0; 4];
            v[a] = t.cos();
            v[b] = t.sin();
            flag_defect_4d(&w, &v).map_err(|e| e.to_string())
        })
        .collect()
}

#[wasm_bindgen]
pub fn explore_unimodular(l1: &str, l2: &str, l3: &str) -> Result<String, JsError> {
    let value = explore_unimodular_json(l1, l2, l3).map_err(|e| JsError::new(&e))?;
    Ok(value.to_string())
}

#[wasm_bindgen]
pub fn psi_slice(id: u8, size: usize, extent: f64, height: f64) -> Result<Vec<f64>, JsError> {
    psi_slice_values(id, size, extent, height).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn flag_defect_curve(
    kind: &str,
    a: usize,
    b: usize,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    flag_defect_values(kind, a, b, samples).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explorer_finds_the_lcw_free_flags() {
        let v = explore_unimodular_json("6", "-4", "5").unwrap();
        assert_eq!(v["det_cy"], "0");
        let flags = v["flags"].as_array().unwrap();
        assert!(!flags.is_empty());
        assert!(flags.iter().all(|f| f["exact"] == true));
        assert_eq!(v["verdict"], "eigenflags exist but none carries an LCW");
    }

    #[test]
    fn explorer_reports_nonzero_determinant() {
        let v = explore_unimodular_json("1", "2", "3").unwrap();
        assert_eq!(v["det_cy"], "-384");
        assert_eq!(v["flags"], json!([]));
    }

    #[test]
    fn explorer_flat_case_and_bad_input() {
        let v = explore_unimodular_json("1", "1", "1").unwrap();
        assert_eq!(v["flags"], "all directions");
        let err = explore_unimodular_json("0.5", "1", "1").unwrap_err();
        assert!(err.starts_with("l1:"), "{err}");
    }

    #[test]
    fn slice_marks_singular_points() {
        // the plane through the origin hits the singular point of family 2
        let vals = psi_slice_values(2, 3, 1.0, 0.0).unwrap();
        assert_eq!(vals.len(), 9);
        assert!(vals[4].is_nan());
        assert!((vals[5] - 0.0).abs() < 1e-12);
        assert!(psi_slice_values(9, 3, 1.0, 0.0).is_err());
        assert!(psi_slice_values(1, 1, 1.0, 0.0).is_err());
    }

    #[test]
    fn type_b_defect_vanishes_on_frame_vectors() {
        let vals = flag_defect_values("b", 0, 1, 8).unwrap();
        assert!(vals[0] < 1e-20);
        assert!(vals[4] < 1e-20);
        assert!(vals[2] > 1e-6);
        assert!(flag_defect_values("b", 1, 1, 8).is_err());
        assert!(flag_defect_values("x", 0, 1, 8).is_err());
    }
}
