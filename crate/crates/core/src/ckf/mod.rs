//! Euclidean conformal Killing fields as parameter tuples `(α, c, B, γ)`,
//! the conformal group acting on them, and the reduction of limiting
//! Carleman weights to their six normal forms.
//!
//! The field of a tuple is `X(x) = (α·x)x - ½α|x|² + cx + Bx + γ`.

mod family;
mod forms;
mod moves;
mod reduce;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::Rational;

pub use family::{
    psi_evaluate, psi_gradient, psi_gradient_exact, verify_correspondence,
    verify_correspondence_fd, Correspondence, CorrespondenceMode, LcwFamily,
};
pub use forms::{lcw_conditions, weight_identity_checks, FieldIdentities, LcwConditions};
pub use moves::ConformalMove;
pub use reduce::{orbit_class, orbit_of_family, reduce_to_family, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CkfError {
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("B is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("all parameters vanish")]
    AllZero,
    #[error("rotation matrix is not orthogonal")]
    NotOrthogonal,
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("tuple fails the limiting Carleman weight conditions")]
    NotLcw,
    #[error("reduction step failed: {0}")]
    NotReducible(String),
    #[error("point lies on the singular set: {0}")]
    Domain(&'static str),
    #[error("field vanishes at sample {0}")]
    ZeroField(usize),
}

/// Parameters of a Euclidean conformal Killing field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CkField {
    alpha: Vector,
    c: Rational,
    b: Matrix,
    gamma: Vector,
}

impl CkField {
    pub fn new(alpha: Vector, c: Rational, b: Matrix, gamma: Vector) -> Result<Self, CkfError> {
        let n = alpha.len();
        if n < 3 {
            return Err(CkfError::DimensionTooSmall(n));
        }
        for got in [gamma.len(), b.rows(), b.cols()] {
            if got != n {
                return Err(CkfError::DimensionMismatch { expected: n, got });
            }
        }
        for i in 0..n {
            for j in 0..=i {
                if b[(i, j)] != -&b[(j, i)] {
                    return Err(CkfError::NotSkew(i, j));
                }
            }
        }
        let field = CkField { alpha, c, b, gamma };
        if field.is_zero() {
            return Err(CkfError::AllZero);
        }
        Ok(field)
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(alpha: Vector, c: Rational, b: Matrix, gamma: Vector) -> Self {
        CkField { alpha, c, b, gamma }
    }

    pub fn translation_field(gamma: Vector) -> Result<Self, CkfError> {
        let n = gamma.len();
        Self::new(
            linalg::zero_vector(n),
            Rational::zero(),
            Matrix::zeros(n, n),
            gamma,
        )
    }

    pub fn dilation_field(n: usize) -> Result<Self, CkfError> {
        Self::new(
            linalg::zero_vector(n),
            Rational::one(),
            Matrix::zeros(n, n),
            linalg::zero_vector(n),
        )
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.alpha)
            && self.c.is_zero()
            && self.b.is_zero()
            && linalg::is_zero_vector(&self.gamma)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CkField {
            alpha: linalg::scale(&self.alpha, k),
            c: &self.c * k,
            b: self.b.scale(k),
            gamma: linalg::scale(&self.gamma, k),
        }
    }

    /// Exact field value at `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Vector, CkfError> {
        self.check_point(x.len())?;
        let ax = linalg::dot(&self.alpha, x);
        let half_sq = linalg::norm_sq(x) * Rational::new(1, 2);
        let bx = self.b.mul_vec(x);
        Ok((0..self.dim())
            .map(|k| {
                &ax * &x[k] - &self.alpha[k] * &half_sq + &self.c * &x[k] + &bx[k] + &self.gamma[k]
            })
            .collect())
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let alpha = linalg::to_f64_vector(&self.alpha);
        let gamma = linalg::to_f64_vector(&self.gamma);
        let b = self.b.to_f64_rows();
        let c = self.c.to_f64();
        let ax: f64 = alpha.iter().zip(x).map(|(a, b)| a * b).sum();
        let sq: f64 = x.iter().map(|v| v * v).sum();
        (0..n)
            .map(|k| {
                let bx: f64 = (0..n).map(|j| b[k][j] * x[j]).sum();
                ax * x[k] - 0.5 * alpha[k] * sq + c * x[k] + bx + gamma[k]
            })
            .collect()
    }

    /// Exact Jacobian `J[p][r] = ∂_p X_r` at `x`.
    pub fn jacobian(&self, x: &[Rational]) -> Matrix {
        let ax = linalg::dot(&self.alpha, x);
        Matrix::from_fn(self.dim(), self.dim(), |p, r| {
            let mut v = &self.alpha[p] * &x[r] - &self.alpha[r] * &x[p] + &self.b[(r, p)];
            if p == r {
                v += &ax + &self.c;
            }
            v
        })
    }

    fn check_point(&self, len: usize) -> Result<(), CkfError> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(CkfError::DimensionMismatch {
                expected: self.dim(),
                got: len,
            })
        }
    }

    pub fn act(&self, m: &ConformalMove) -> Result<Self, CkfError> {
        m.validate(self.dim())?;
        Ok(m.apply(self))
    }
}

impl std::fmt::Debug for CkField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CkField")
            .field("alpha", &self.alpha)
            .field("c", &self.c)
            .field("b", &self.b)
            .field("gamma", &self.gamma)
            .finish()
    }
}

/// Affine conformal factor `λ(x) = slope·x + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalFactor {
    pub slope: Vector,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTest {
    pub passes: bool,
    pub factor: ConformalFactor,
}

/// Checks `∂_j X_k + ∂_k X_j = λ(x) δ_jk` as a polynomial identity.
///
/// Each component is expanded into quadratic, linear and constant
/// coefficients; the symmetrized Jacobian is then affine in `x` and compared
/// coefficientwise.
pub fn conformal_killing_selftest(x: &CkField) -> SelfTest {
    let n = x.dim();
    let half = Rational::new(1, 2);
    // quad[r][p][q]: coefficient of x_p x_q in X_r, symmetric in (p, q)
    let mut quad = vec![vec![vec![Rational::zero(); n]; n]; n];
    let mut lin = vec![vec![Rational::zero(); n]; n];
    for r in 0..n {
        for p in 0..n {
            let a = &x.alpha[p] * &half;
            quad[r][p][r] += &a;
            quad[r][r][p] += &a;
            quad[r][p][p] -= &x.alpha[r] * &half;
            lin[r][p] = x.b[(r, p)].clone();
        }
        lin[r][r] += &x.c;
    }
    // ∂_p X_r = 2 Σ_q quad[r][p][q] x_q + lin[r][p]
    let two = Rational::from_integer(2);
    let sym_slope = |p: usize, r: usize, q: usize| (&quad[r][p][q] + &quad[p][r][q]) * &two;
    let sym_offset = |p: usize, r: usize| &lin[r][p] + &lin[p][r];

    let slope: Vector = (0..n).map(|q| sym_slope(0, 0, q)).collect();
    let offset = sym_offset(0, 0);
    let mut passes = true;
    for p in 0..n {
        for r in 0..n {
            let diag = p == r;
            for q in 0..n {
                let want = if diag {
                    slope[q].clone()
                } else {
                    Rational::zero()
                };
                passes &= sym_slope(p, r, q) == want;
            }
            let want = if diag {
                offset.clone()
            } else {
                Rational::zero()
            };
            passes &= sym_offset(p, r) == want;
        }
    }
    SelfTest {
        passes,
        factor: ConformalFactor { slope, offset },
    }
}

/// Largest deviation of the central-difference symmetrized Jacobian from a
/// multiple of the identity.
pub fn conformal_killing_defect_fd(x: &CkField, point: &[f64], step: f64) -> f64 {
    let n = x.dim();
    let mut jac = vec![vec![0.0; n]; n];
    for p in 0..n {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[p] += step;
        minus[p] -= step;
        let (fp, fm) = (x.evaluate_f64(&plus), x.evaluate_f64(&minus));
        for r in 0..n {
            jac[p][r] = (fp[r] - fm[r]) / (2.0 * step);
        }
    }
    let trace: f64 = (0..n).map(|i| 2.0 * jac[i][i]).sum::<f64>() / n as f64;
    let mut worst = 0.0f64;
    for p in 0..n {
        for r in 0..n {
            let s = jac[p][r] + jac[r][p] - if p == r { trace } else { 0.0 };
            worst = worst.max(s.abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::{basis_vector, int_vector};
    use crate::ratmath::rational::{q, qi};

    fn field(alpha: &[i64], c: i64, b: Matrix, gamma: &[i64]) -> CkField {
        CkField::new(int_vector(alpha), qi(c), b, int_vector(gamma)).unwrap()
    }

    #[test]
    fn constant_field() {
        let x = CkField::translation_field(basis_vector(3, 0)).unwrap();
        assert_eq!(
            x.evaluate(&int_vector(&[4, -1, 7])).unwrap(),
            int_vector(&[1, 0, 0])
        );
    }

    #[test]
    fn special_conformal_part() {
        let x = field(&[1, 0, 0], 0, Matrix::zeros(3, 3), &[0, 0, 0]);
        assert_eq!(
            x.evaluate(&basis_vector(3, 1)).unwrap(),
            vec![q(-1, 2), qi(0), qi(0)]
        );
    }

    #[test]
    fn dilation_part() {
        let x = CkField::dilation_field(3).unwrap();
        assert_eq!(
            x.evaluate(&int_vector(&[2, 3, 0])).unwrap(),
            int_vector(&[2, 3, 0])
        );
    }

    #[test]
    fn validation() {
        let n = 3;
        let zero = linalg::zero_vector(n);
        let sym = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(
            CkField::new(zero.clone(), qi(1), sym, zero.clone()),
            Err(CkfError::NotSkew(1, 0))
        );
        assert_eq!(
            CkField::new(zero.clone(), qi(0), Matrix::zeros(3, 3), zero.clone()),
            Err(CkfError::AllZero)
        );
        assert_eq!(
            CkField::new(vec![qi(0); 2], qi(1), Matrix::zeros(2, 2), vec![qi(0); 2]),
            Err(CkfError::DimensionTooSmall(2))
        );
        let x = CkField::dilation_field(3).unwrap();
        assert!(matches!(
            x.evaluate(&[qi(1)]),
            Err(CkfError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn selftest_factors() {
        let t = conformal_killing_selftest(
            &CkField::translation_field(int_vector(&[1, 2, 3])).unwrap(),
        );
        assert!(t.passes);
        assert!(linalg::is_zero_vector(&t.factor.slope) && t.factor.offset.is_zero());

        let d = conformal_killing_selftest(&CkField::dilation_field(4).unwrap());
        assert!(d.passes);
        assert_eq!(d.factor.offset, qi(2));

        let alpha = vec![q(1, 3), q(-2, 5), qi(4)];
        let x = CkField::new(
            alpha.clone(),
            qi(0),
            Matrix::zeros(3, 3),
            linalg::zero_vector(3),
        )
        .unwrap();
        let s = conformal_killing_selftest(&x);
        assert!(s.passes);
        assert_eq!(s.factor.slope, linalg::scale(&alpha, &qi(2)));
    }

    #[test]
    fn jacobian_matches_symbolic_factor() {
        let b = Matrix::wedge(&int_vector(&[1, 0, 2]), &int_vector(&[0, 1, -1]));
        let x = field(&[1, -2, 3], 5, b, &[1, 1, 1]);
        let p = vec![q(1, 2), q(-3, 7), qi(2)];
        let j = x.jacobian(&p);
        let sym = j.add(&j.transpose());
        let st = conformal_killing_selftest(&x);
        let lambda = linalg::dot(&st.factor.slope, &p) + &st.factor.offset;
        assert_eq!(sym, Matrix::identity(3).scale(&lambda));
        assert!(conformal_killing_defect_fd(&x, &[0.3, -0.2, 1.1], 1e-5) < 1e-6);
    }
}
