use serde::Serialize;

use super::{CkField, CkfError};
use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::{Rational, TensorTable};

/// The 2-form `Σ_{j<k} b_kj dx_j ∧ dx_k` of a skew matrix.
pub fn b_form(b: &Matrix) -> TensorTable {
    TensorTable::from_matrix(&b.scale(&Rational::new(-1, 2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcwConditions {
    /// `B ∧ γ`.
    pub b_wedge_gamma: TensorTable,
    /// `cB - α ∧ γ`.
    pub cb_minus_alpha_wedge_gamma: TensorTable,
    pub pass: bool,
}

pub fn lcw_conditions(x: &CkField) -> LcwConditions {
    let b = b_form(&x.b);
    let alpha = TensorTable::one_form(&x.alpha);
    let gamma = TensorTable::one_form(&x.gamma);
    let b_wedge_gamma = b.wedge(&gamma).expect("forms share the dimension");
    let cb_minus = b
        .scale(&x.c)
        .sub(&alpha.wedge(&gamma).expect("forms share the dimension"))
        .expect("same shape");
    let pass = b_wedge_gamma.is_zero() && cb_minus.is_zero();
    LcwConditions {
        b_wedge_gamma,
        cb_minus_alpha_wedge_gamma: cb_minus,
        pass,
    }
}

/// Exterior derivative of the 1-form dual to `X`, at `p`.
pub fn exterior_derivative(x: &CkField, p: &[Rational]) -> TensorTable {
    let j = x.jacobian(p);
    TensorTable::from_matrix(&j.sub(&j.transpose()).scale(&Rational::new(1, 2)))
}

/// Residuals of `dX∧X`, `dX∧d|X|²` and `|d|X|²∧X|² - |X|⁴|dX|²` at one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResiduals {
    pub closed: Rational,
    pub gradient: Rational,
    pub norm: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldIdentities {
    pub closed: bool,
    pub gradient: bool,
    pub norm: bool,
    pub samples: Vec<IdentityResiduals>,
}

impl FieldIdentities {
    pub fn all_pass(&self) -> bool {
        self.closed && self.gradient && self.norm
    }
}

/// Exact pointwise checks of the three identities satisfied by the field of
/// a limiting Carleman weight. Norms are sums of squares of all entries.
pub fn weight_identity_checks(
    x: &CkField,
    samples: &[Vector],
) -> Result<FieldIdentities, CkfError> {
    let mut out = FieldIdentities {
        closed: true,
        gradient: true,
        norm: true,
        samples: Vec::with_capacity(samples.len()),
    };
    for (i, p) in samples.iter().enumerate() {
        let value = x.evaluate(p)?;
        if linalg::is_zero_vector(&value) {
            return Err(CkfError::ZeroField(i));
        }
        let dx = exterior_derivative(x, p);
        let x_form = TensorTable::one_form(&value);
        let jv = x.jacobian(p).mul_vec(&value);
        let grad_sq = TensorTable::one_form(&linalg::scale(&jv, &Rational::from_integer(2)));

        let closed = dx.wedge(&x_form).unwrap().norm_sq();
        let gradient = dx.wedge(&grad_sq).unwrap().norm_sq();
        let sq = linalg::norm_sq(&value);
        let norm = grad_sq.wedge(&x_form).unwrap().norm_sq() - &sq * &sq * dx.norm_sq();

        out.closed &= closed.is_zero();
        out.gradient &= gradient.is_zero();
        out.norm &= norm.is_zero();
        out.samples.push(IdentityResiduals {
            closed,
            gradient,
            norm,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::{basis_vector, int_vector};
    use crate::ratmath::rational::{q, qi};

    fn zero3() -> Vector {
        linalg::zero_vector(3)
    }

    #[test]
    fn dilation_field_passes() {
        let c = lcw_conditions(&CkField::dilation_field(3).unwrap());
        assert!(c.pass && c.b_wedge_gamma.is_zero());
    }

    #[test]
    fn rotation_field_with_orthogonal_gamma_passes() {
        let g = int_vector(&[1, 2, 0]);
        let s = int_vector(&[-2, 1, 3]);
        let x = CkField::new(zero3(), qi(0), Matrix::wedge(&g, &s), g).unwrap();
        assert!(lcw_conditions(&x).pass);
    }

    #[test]
    fn dilation_plus_rotation_fails() {
        // B is the matrix of the 2-form dx0 ∧ dx1
        let b = Matrix::wedge(&basis_vector(3, 1), &basis_vector(3, 0));
        let x = CkField::new(zero3(), qi(1), b, zero3()).unwrap();
        let c = lcw_conditions(&x);
        assert!(!c.pass);
        let e01 = TensorTable::one_form(&basis_vector(3, 0))
            .wedge(&TensorTable::one_form(&basis_vector(3, 1)))
            .unwrap();
        assert_eq!(c.cb_minus_alpha_wedge_gamma.entries(), e01.entries());
    }

    #[test]
    fn derivative_closed_form() {
        // dX = 2(α ∧ p + B)
        let alpha = vec![q(1, 2), qi(-1), qi(3)];
        let b = Matrix::wedge(&int_vector(&[1, 1, 0]), &int_vector(&[0, 2, 1]));
        let x = CkField::new(alpha.clone(), q(2, 3), b.clone(), int_vector(&[1, 0, 0])).unwrap();
        let p = vec![q(1, 3), qi(2), q(-5, 2)];
        let closed_form = TensorTable::one_form(&alpha)
            .wedge(&TensorTable::one_form(&p))
            .unwrap()
            .add(&b_form(&b))
            .unwrap()
            .scale(&qi(2));
        assert_eq!(exterior_derivative(&x, &p).entries(), closed_form.entries());
    }

    #[test]
    fn identities_hold_for_valid_fields() {
        let samples = vec![int_vector(&[1, 2, 3]), vec![q(1, 2), q(-1, 3), qi(2)]];
        let translation = CkField::translation_field(basis_vector(3, 0)).unwrap();
        assert!(weight_identity_checks(&translation, &samples)
            .unwrap()
            .all_pass());
        let dilation = CkField::dilation_field(3).unwrap();
        assert!(weight_identity_checks(&dilation, &samples)
            .unwrap()
            .all_pass());
    }

    #[test]
    fn identities_detect_invalid_field() {
        let b = Matrix::wedge(&basis_vector(3, 0), &basis_vector(3, 1));
        let x = CkField::new(zero3(), qi(1), b, zero3()).unwrap();
        let r = weight_identity_checks(&x, &[basis_vector(3, 2)]).unwrap();
        assert!(!r.closed);
    }

    #[test]
    fn zero_sample_rejected() {
        let x = CkField::dilation_field(3).unwrap();
        assert_eq!(
            weight_identity_checks(&x, &[zero3()]),
            Err(CkfError::ZeroField(0))
        );
    }
}
