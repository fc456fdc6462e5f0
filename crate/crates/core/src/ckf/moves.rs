use serde::{Deserialize, Serialize};

use super::{CkField, CkfError};
use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::Rational;

/// Elementary conformal maps `F` acting on fields by `X ↦ κ DFᵀ (X∘F)`.
///
/// `Translation { x0 }` is the map `F(x) = x - x0`, `Dilation { r }` is
/// `F(x) = x / r`, `Rotation` is `F(x) = Rx` and `Inversion` is
/// `F(x) = x / |x|²`. `Scalar { k }` multiplies the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum ConformalMove {
    Translation { x0: Vector },
    Dilation { r: Rational },
    Rotation { r: Matrix },
    Inversion,
    Scalar { k: Rational },
}

impl ConformalMove {
    /// Rational rotation `(I - A)(I + A)⁻¹` from a skew matrix `A`.
    pub fn cayley(skew: &Matrix) -> Result<Self, CkfError> {
        if !skew.is_skew() {
            return Err(CkfError::NotSkew(0, 0));
        }
        let n = skew.rows();
        let id = Matrix::identity(n);
        let inv = id.add(skew).inverse().ok_or(CkfError::NotOrthogonal)?;
        Ok(ConformalMove::Rotation {
            r: id.sub(skew).mul(&inv),
        })
    }

    pub fn validate(&self, n: usize) -> Result<(), CkfError> {
        match self {
            ConformalMove::Translation { x0 } if x0.len() != n => {
                Err(CkfError::DimensionMismatch {
                    expected: n,
                    got: x0.len(),
                })
            }
            ConformalMove::Dilation { r } if r.is_zero() => {
                Err(CkfError::ZeroParameter("dilation factor"))
            }
            ConformalMove::Scalar { k } if k.is_zero() => {
                Err(CkfError::ZeroParameter("scalar factor"))
            }
            ConformalMove::Rotation { r } => {
                if r.rows() != n || r.cols() != n {
                    return Err(CkfError::DimensionMismatch {
                        expected: n,
                        got: r.rows(),
                    });
                }
                if r.transpose().mul(r) != Matrix::identity(n) {
                    return Err(CkfError::NotOrthogonal);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn apply(&self, x: &CkField) -> CkField {
        let (alpha, c, b, gamma) = (&x.alpha, &x.c, &x.b, &x.gamma);
        match self {
            ConformalMove::Translation { x0 } => {
                let ax0 = linalg::dot(alpha, x0);
                let half_sq = linalg::norm_sq(x0) * Rational::new(1, 2);
                let bx0 = b.mul_vec(x0);
                let gamma = (0..x.dim())
                    .map(|k| {
                        &gamma[k] + &ax0 * &x0[k] - &half_sq * &alpha[k] - c * &x0[k] - &bx0[k]
                    })
                    .collect();
                CkField::from_parts(
                    alpha.clone(),
                    c - &ax0,
                    b.add(&Matrix::wedge(alpha, x0)),
                    gamma,
                )
            }
            ConformalMove::Dilation { r } => {
                let inv = r.recip().unwrap();
                CkField::from_parts(
                    linalg::scale(alpha, &inv),
                    c.clone(),
                    b.clone(),
                    linalg::scale(gamma, r),
                )
            }
            ConformalMove::Rotation { r } => {
                let rt = r.transpose();
                CkField::from_parts(
                    rt.mul_vec(alpha),
                    c.clone(),
                    rt.mul(b).mul(r),
                    rt.mul_vec(gamma),
                )
            }
            ConformalMove::Inversion => CkField::from_parts(
                linalg::scale(gamma, &Rational::from_integer(-2)),
                -c,
                b.clone(),
                linalg::scale(alpha, &Rational::new(-1, 2)),
            ),
            ConformalMove::Scalar { k } => x.scale(k),
        }
    }

    /// `F(x)`, `None` at the pole of the inversion.
    pub fn map_point(&self, x: &[Rational]) -> Option<Vector> {
        match self {
            ConformalMove::Translation { x0 } => Some(linalg::sub(x, x0)),
            ConformalMove::Dilation { r } => Some(linalg::scale(x, &r.recip()?)),
            ConformalMove::Rotation { r } => Some(r.mul_vec(x)),
            ConformalMove::Inversion => Some(linalg::scale(x, &linalg::norm_sq(x).recip()?)),
            ConformalMove::Scalar { .. } => Some(x.to_vec()),
        }
    }

    /// The matrix `κ(x) DF(x)ᵀ` (times `k` for the scalar move) relating
    /// `act(X)(x)` to `X(F(x))`.
    pub fn pullback_matrix(&self, x: &[Rational]) -> Matrix {
        let n = x.len();
        match self {
            ConformalMove::Translation { .. } => Matrix::identity(n),
            ConformalMove::Dilation { r } => Matrix::identity(n).scale(r),
            ConformalMove::Rotation { r } => r.transpose(),
            ConformalMove::Inversion => {
                let sq = linalg::norm_sq(x);
                Matrix::from_fn(n, n, |i, j| {
                    let mut v = -Rational::from_integer(2) * &x[i] * &x[j];
                    if i == j {
                        v += &sq;
                    }
                    v
                })
            }
            ConformalMove::Scalar { k } => Matrix::identity(n).scale(k),
        }
    }

    pub fn is_affine(&self) -> bool {
        !matches!(self, ConformalMove::Inversion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::{basis_vector, int_vector};
    use crate::ratmath::rational::{q, qi};
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
    }

    fn vector(n: usize) -> impl Strategy<Value = Vector> {
        prop::collection::vec(rational(), n)
    }

    fn skew(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(rational(), n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => v[i * n + j].clone(),
                std::cmp::Ordering::Greater => -&v[j * n + i],
                std::cmp::Ordering::Equal => Rational::zero(),
            })
        })
    }

    fn any_field(n: usize) -> impl Strategy<Value = CkField> {
        (vector(n), rational(), skew(n), vector(n))
            .prop_filter_map("zero field", |(a, c, b, g)| CkField::new(a, c, b, g).ok())
    }

    fn affine_move(n: usize) -> impl Strategy<Value = ConformalMove> {
        prop_oneof![
            vector(n).prop_map(|x0| ConformalMove::Translation { x0 }),
            rational()
                .prop_filter("nonzero", |r| !r.is_zero())
                .prop_map(|r| ConformalMove::Dilation { r }),
            skew(n).prop_map(|a| ConformalMove::cayley(&a).unwrap()),
            rational()
                .prop_filter("nonzero", |k| !k.is_zero())
                .prop_map(|k| ConformalMove::Scalar { k }),
        ]
    }

    #[test]
    fn translation_removes_gamma_over_c() {
        let gamma = int_vector(&[2, -1, 4]);
        let c = qi(3);
        let x = CkField::new(
            linalg::zero_vector(3),
            c.clone(),
            Matrix::zeros(3, 3),
            gamma.clone(),
        )
        .unwrap();
        let m = ConformalMove::Translation {
            x0: linalg::scale(&gamma, &c.recip().unwrap()),
        };
        let y = x.act(&m).unwrap();
        assert_eq!(
            y,
            CkField::new(
                linalg::zero_vector(3),
                c,
                Matrix::zeros(3, 3),
                linalg::zero_vector(3)
            )
            .unwrap()
        );
    }

    #[test]
    fn log_weight_to_arctanh_chain() {
        let e1 = basis_vector(3, 0);
        let x = CkField::dilation_field(3).unwrap();
        let x = x
            .act(&ConformalMove::Translation { x0: e1.clone() })
            .unwrap();
        assert_eq!(x.gamma(), &linalg::scale(&e1, &qi(-1))[..]);
        let x = x.act(&ConformalMove::Inversion).unwrap();
        assert_eq!(x.alpha(), &linalg::scale(&e1, &qi(2))[..]);
        assert_eq!(*x.c(), qi(-1));
        assert!(linalg::is_zero_vector(x.gamma()) && x.b().is_zero());
        let x = x
            .act(&ConformalMove::Translation {
                x0: linalg::scale(&e1, &q(-1, 2)),
            })
            .unwrap();
        assert_eq!(*x.c(), qi(0));
        assert_eq!(x.gamma(), &linalg::scale(&e1, &q(-1, 4))[..]);
        let x = x.act(&ConformalMove::Dilation { r: qi(2) }).unwrap();
        assert_eq!(x.alpha(), &e1[..]);
        assert_eq!(x.gamma(), &linalg::scale(&e1, &q(-1, 2))[..]);
    }

    #[test]
    fn rejects_bad_moves() {
        let x = CkField::dilation_field(3).unwrap();
        assert_eq!(
            x.act(&ConformalMove::Dilation { r: qi(0) }),
            Err(CkfError::ZeroParameter("dilation factor"))
        );
        let shear = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            x.act(&ConformalMove::Rotation { r: shear }),
            Err(CkfError::NotOrthogonal)
        );
    }

    proptest! {
        #[test]
        fn inversion_is_an_involution(x in any_field(4)) {
            let twice = x.act(&ConformalMove::Inversion).unwrap().act(&ConformalMove::Inversion).unwrap();
            prop_assert_eq!(twice, x);
        }

        #[test]
        fn translations_compose(x in any_field(3), a in vector(3), b in vector(3)) {
            let step = x
                .act(&ConformalMove::Translation { x0: a.clone() }).unwrap()
                .act(&ConformalMove::Translation { x0: b.clone() }).unwrap();
            let once = x.act(&ConformalMove::Translation { x0: linalg::add(&a, &b) }).unwrap();
            prop_assert_eq!(step, once);
        }

        #[test]
        fn action_matches_pullback(
            x in any_field(3),
            m in prop_oneof![affine_move(3), Just(ConformalMove::Inversion)],
            p in vector(3),
        ) {
            let Some(fp) = m.map_point(&p) else { return Ok(()); };
            let lhs = x.act(&m).unwrap().evaluate(&p).unwrap();
            let rhs = m.pullback_matrix(&p).mul_vec(&x.evaluate(&fp).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cayley_rotations_are_orthogonal(a in skew(4)) {
            let m = ConformalMove::cayley(&a).unwrap();
            prop_assert!(m.validate(4).is_ok());
        }
    }
}
