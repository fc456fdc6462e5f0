use serde::{Deserialize, Serialize};

use super::{CkField, CkfError};
use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::Rational;

const SINGULAR_EPS: f64 = 1e-12;
const FD_STEP: f64 = 1e-5;

/// One of the six normal forms `a·ψ + b` of a limiting Carleman weight.
///
/// Directions are stored unnormalized; `ψ` is scaled so that the field of
/// `ψ` is exactly the canonical tuple built from the stored vectors:
///
/// | id | ψ                                   | field              |
/// |----|-------------------------------------|--------------------|
/// | 1  | `γ·x / |γ|²`                        | `(0, 0, 0, γ)`     |
/// | 2  | `log |x|`                           | `(0, 1, 0, 0)`     |
/// | 3  | `atan(γ̂·x / σ̂·x) / (|γ||σ|)`        | `(0, 0, γ∧σ, 0)`   |
/// | 4  | `-2 γ·x / (|γ|² |x|²)`              | `(γ, 0, 0, 0)`     |
/// | 5  | arctan weight with parameter `s`    | `(γ, 0, 0, sγ/2)`  |
/// | 6  | arctanh weight with parameter `s`   | `(γ, 0, 0, -sγ/2)` |
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LcwFamily {
    pub id: u8,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Rational>,
    pub affine_scale: Rational,
    pub affine_shift: Rational,
}

impl LcwFamily {
    fn build(
        id: u8,
        dim: usize,
        gamma: Option<Vector>,
        sigma: Option<Vector>,
        s: Option<Rational>,
    ) -> Self {
        LcwFamily {
            id,
            dim,
            gamma,
            sigma,
            s,
            affine_scale: Rational::one(),
            affine_shift: Rational::zero(),
        }
    }

    fn nonzero(v: &[Rational], what: &'static str) -> Result<(), CkfError> {
        if linalg::is_zero_vector(v) {
            Err(CkfError::ZeroParameter(what))
        } else {
            Ok(())
        }
    }

    pub fn linear(gamma: Vector) -> Result<Self, CkfError> {
        Self::nonzero(&gamma, "gamma")?;
        Ok(Self::build(1, gamma.len(), Some(gamma), None, None))
    }

    pub fn logarithmic(dim: usize) -> Self {
        Self::build(2, dim, None, None, None)
    }

    pub fn angular(gamma: Vector, sigma: Vector) -> Result<Self, CkfError> {
        Self::nonzero(&gamma, "gamma")?;
        Self::nonzero(&sigma, "sigma")?;
        if !linalg::dot(&gamma, &sigma).is_zero() {
            return Err(CkfError::NotReducible(
                "gamma and sigma must be orthogonal".into(),
            ));
        }
        Ok(Self::build(3, gamma.len(), Some(gamma), Some(sigma), None))
    }

    pub fn inverse_linear(gamma: Vector) -> Result<Self, CkfError> {
        Self::nonzero(&gamma, "gamma")?;
        Ok(Self::build(4, gamma.len(), Some(gamma), None, None))
    }

    pub fn spherical_arctan(gamma: Vector, s: Rational) -> Result<Self, CkfError> {
        Self::nonzero(&gamma, "gamma")?;
        if !s.is_positive() {
            return Err(CkfError::ZeroParameter("positive s"));
        }
        Ok(Self::build(5, gamma.len(), Some(gamma), None, Some(s)))
    }

    pub fn spherical_arctanh(gamma: Vector, s: Rational) -> Result<Self, CkfError> {
        Self::nonzero(&gamma, "gamma")?;
        if !s.is_positive() {
            return Err(CkfError::ZeroParameter("positive s"));
        }
        Ok(Self::build(6, gamma.len(), Some(gamma), None, Some(s)))
    }

    pub fn with_affine(mut self, scale: Rational, shift: Rational) -> Result<Self, CkfError> {
        if scale.is_zero() {
            return Err(CkfError::ZeroParameter("affine scale"));
        }
        self.affine_scale = scale;
        self.affine_shift = shift;
        Ok(self)
    }

    pub fn orbit(&self) -> u8 {
        super::orbit_of_family(self.id)
    }

    fn gamma_vec(&self) -> &Vector {
        self.gamma.as_ref().expect("family carries gamma")
    }

    fn s_val(&self) -> &Rational {
        self.s.as_ref().expect("family carries s")
    }

    /// `|γ|²|σ|²` for the angular family.
    pub fn scale_sq(&self) -> Option<Rational> {
        let sigma = self.sigma.as_ref()?;
        Some(linalg::norm_sq(self.gamma_vec()) * linalg::norm_sq(sigma))
    }

    /// The field of `ψ` itself.
    pub fn canonical_field(&self) -> CkField {
        let n = self.dim;
        let zero = || linalg::zero_vector(n);
        let (alpha, c, b, gamma) = match self.id {
            1 => (
                zero(),
                Rational::zero(),
                Matrix::zeros(n, n),
                self.gamma_vec().clone(),
            ),
            2 => (zero(), Rational::one(), Matrix::zeros(n, n), zero()),
            3 => (
                zero(),
                Rational::zero(),
                Matrix::wedge(self.gamma_vec(), self.sigma.as_ref().unwrap()),
                zero(),
            ),
            4 => (
                self.gamma_vec().clone(),
                Rational::zero(),
                Matrix::zeros(n, n),
                zero(),
            ),
            5 | 6 => {
                let mut half = self.s_val() * Rational::new(1, 2);
                if self.id == 6 {
                    half = -half;
                }
                (
                    self.gamma_vec().clone(),
                    Rational::zero(),
                    Matrix::zeros(n, n),
                    linalg::scale(self.gamma_vec(), &half),
                )
            }
            _ => unreachable!("family id out of range"),
        };
        CkField::from_parts(alpha, c, b, gamma)
    }

    /// The field of `a·ψ + b`, i.e. the canonical field divided by `a`.
    pub fn field(&self) -> CkField {
        self.canonical_field()
            .scale(&self.affine_scale.recip().unwrap())
    }

    /// A nonnegative proxy for the distance to the singular set of `ψ`.
    fn singular_proxy(&self, x: &[f64]) -> f64 {
        let sq: f64 = x.iter().map(|v| v * v).sum();
        match self.id {
            1 => f64::INFINITY,
            2 | 4 => sq.sqrt(),
            3 => {
                let sigma = linalg::to_f64_vector(self.sigma.as_ref().unwrap());
                dot(&sigma, x).abs() / norm(&sigma)
            }
            5 => (sq - self.s_val().to_f64()).abs(),
            6 => {
                let (g, s) = (
                    linalg::to_f64_vector(self.gamma_vec()),
                    self.s_val().to_f64(),
                );
                let gx = dot(&g, x) / norm(&g);
                ((sq + s).powi(2) - 4.0 * s * gx * gx).abs()
            }
            _ => unreachable!(),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `a·ψ(x) + b` in floating point.
pub fn psi_evaluate(f: &LcwFamily, x: &[f64]) -> Result<f64, CkfError> {
    if x.len() != f.dim {
        return Err(CkfError::DimensionMismatch {
            expected: f.dim,
            got: x.len(),
        });
    }
    if f.singular_proxy(x) < SINGULAR_EPS {
        return Err(CkfError::Domain(singular_set_name(f.id)));
    }
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let psi = match f.id {
        1 => {
            let g = linalg::to_f64_vector(f.gamma_vec());
            dot(&g, x) / dot(&g, &g)
        }
        2 => 0.5 * sq.ln(),
        3 => {
            let g = linalg::to_f64_vector(f.gamma_vec());
            let s = linalg::to_f64_vector(f.sigma.as_ref().unwrap());
            let (ng, ns) = (norm(&g), norm(&s));
            (dot(&g, x) / ng / (dot(&s, x) / ns)).atan() / (ng * ns)
        }
        4 => {
            let g = linalg::to_f64_vector(f.gamma_vec());
            -2.0 * dot(&g, x) / (dot(&g, &g) * sq)
        }
        5 | 6 => {
            let g = linalg::to_f64_vector(f.gamma_vec());
            let s = f.s_val().to_f64();
            let (ng, rs) = (norm(&g), s.sqrt());
            let num = -2.0 * dot(&g, x) / ng / rs;
            if f.id == 5 {
                (num / (sq / s - 1.0)).atan() / (rs * ng)
            } else {
                (num / (sq / s + 1.0)).atanh() / (rs * ng)
            }
        }
        _ => unreachable!(),
    };
    Ok(f.affine_scale.to_f64() * psi + f.affine_shift.to_f64())
}

fn singular_set_name(id: u8) -> &'static str {
    match id {
        2 | 4 => "origin",
        3 => "plane sigma·x = 0",
        5 => "sphere |x|² = s",
        _ => "points ±√s γ̂",
    }
}

/// Exact gradient of `a·ψ`; every family has a rational closed form.
pub fn psi_gradient_exact(f: &LcwFamily, x: &[Rational]) -> Result<Vector, CkfError> {
    if x.len() != f.dim {
        return Err(CkfError::DimensionMismatch {
            expected: f.dim,
            got: x.len(),
        });
    }
    let domain = || CkfError::Domain(singular_set_name(f.id));
    let sq = linalg::norm_sq(x);
    let two = Rational::from_integer(2);
    let grad = match f.id {
        1 => {
            let g = f.gamma_vec();
            linalg::scale(g, &linalg::norm_sq(g).recip().unwrap())
        }
        2 => linalg::scale(x, &sq.recip().ok_or_else(domain)?),
        3 => {
            let (g, s) = (f.gamma_vec(), f.sigma.as_ref().unwrap());
            let (gg, ss) = (linalg::norm_sq(g), linalg::norm_sq(s));
            let gx = linalg::dot(g, x);
            let sx = linalg::dot(s, x);
            let d = &gx * &gx / &gg + &sx * &sx / &ss;
            let denom = (&gg * &ss * d).recip().ok_or_else(domain)?;
            linalg::scale(&Matrix::wedge(g, s).mul_vec(x), &denom)
        }
        4 => {
            let g = f.gamma_vec();
            let gx = linalg::dot(g, x);
            let denom = (linalg::norm_sq(g) * &sq * &sq)
                .recip()
                .ok_or_else(domain)?;
            let k = -&two * denom;
            (0..f.dim)
                .map(|i| (&g[i] * &sq - &two * &gx * &x[i]) * &k)
                .collect()
        }
        5 | 6 => {
            let g = f.gamma_vec();
            let gg = linalg::norm_sq(g);
            let s = if f.id == 5 {
                f.s_val().clone()
            } else {
                -f.s_val()
            };
            let gx = linalg::dot(g, x);
            let shifted = &sq - &s;
            let q = &shifted * &shifted + Rational::from_integer(4) * &s * &gx * &gx / &gg;
            let k = -&two * (&gg * q).recip().ok_or_else(domain)?;
            (0..f.dim)
                .map(|i| (&g[i] * &shifted - &two * &gx * &x[i]) * &k)
                .collect()
        }
        _ => unreachable!(),
    };
    Ok(linalg::scale(&grad, &f.affine_scale))
}

/// Floating-point gradient of `a·ψ` from the closed forms.
pub fn psi_gradient(f: &LcwFamily, x: &[f64]) -> Result<Vec<f64>, CkfError> {
    if f.singular_proxy(x) < SINGULAR_EPS {
        return Err(CkfError::Domain(singular_set_name(f.id)));
    }
    let exact: Option<Vector> = x
        .iter()
        .map(|&v| Rational::approximate(v, 1 << 40))
        .collect();
    // Rationalized only to reuse the closed forms; the loss is below f64 noise.
    let p = exact.ok_or(CkfError::Domain("non-finite point"))?;
    Ok(linalg::to_f64_vector(&psi_gradient_exact(f, &p)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrespondenceMode {
    Exact,
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correspondence {
    pub mode: CorrespondenceMode,
    pub max_residual: f64,
    pub checked: usize,
    pub skipped: usize,
}

/// Compare `|∇φ|⁻²∇φ` with the family's field at the samples.
///
/// Exact arithmetic is used for families 1 to 4 and whenever `s` is a
/// rational square; otherwise central differences with step `1e-5`.
pub fn verify_correspondence(f: &LcwFamily, samples: &[Vector]) -> Correspondence {
    let exact = f.id <= 4 || f.s.as_ref().is_some_and(|s| s.sqrt_exact().is_some());
    if exact {
        verify_exact(f, samples)
    } else {
        verify_correspondence_fd(f, samples, FD_STEP)
    }
}

fn verify_exact(f: &LcwFamily, samples: &[Vector]) -> Correspondence {
    let field = f.field();
    let mut out = Correspondence {
        mode: CorrespondenceMode::Exact,
        max_residual: 0.0,
        checked: 0,
        skipped: 0,
    };
    for p in samples {
        let Ok(grad) = psi_gradient_exact(f, p) else {
            out.skipped += 1;
            continue;
        };
        let Some(inv) = linalg::norm_sq(&grad).recip() else {
            out.skipped += 1;
            continue;
        };
        let lhs = linalg::scale(&grad, &inv);
        let rhs = field.evaluate(p).expect("dimension checked");
        let diff = linalg::sub(&lhs, &rhs);
        let worst = diff.iter().map(|d| d.to_f64().abs()).fold(0.0, f64::max);
        out.max_residual = out.max_residual.max(worst);
        out.checked += 1;
    }
    out
}

/// Finite-difference variant of [`verify_correspondence`].
pub fn verify_correspondence_fd(f: &LcwFamily, samples: &[Vector], step: f64) -> Correspondence {
    let field = f.field();
    let mut out = Correspondence {
        mode: CorrespondenceMode::FiniteDifference,
        max_residual: 0.0,
        checked: 0,
        skipped: 0,
    };
    'samples: for p in samples {
        let x = linalg::to_f64_vector(p);
        if f.singular_proxy(&x) < 1e3 * step {
            out.skipped += 1;
            continue;
        }
        let mut grad = vec![0.0; f.dim];
        for i in 0..f.dim {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[i] += step;
            minus[i] -= step;
            match (psi_evaluate(f, &plus), psi_evaluate(f, &minus)) {
                (Ok(a), Ok(b)) => grad[i] = (a - b) / (2.0 * step),
                _ => {
                    out.skipped += 1;
                    continue 'samples;
                }
            }
        }
        let g2 = dot(&grad, &grad);
        let want = field.evaluate_f64(&x);
        let scale = norm(&want).max(1.0);
        let worst = grad
            .iter()
            .zip(&want)
            .map(|(g, w)| (g / g2 - w).abs() / scale)
            .fold(0.0, f64::max);
        out.max_residual = out.max_residual.max(worst);
        out.checked += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::{basis_vector, int_vector};
    use crate::ratmath::rational::{q, qi};

    fn samples() -> Vec<Vector> {
        vec![
            int_vector(&[1, 2, 2]),
            vec![q(1, 3), q(-2, 5), q(3, 2)],
            vec![q(-7, 4), q(1, 9), q(2, 3)],
            int_vector(&[3, -1, 1]),
        ]
    }

    fn all_families() -> Vec<LcwFamily> {
        let g = int_vector(&[1, -2, 2]);
        let s = int_vector(&[2, 1, 0]);
        vec![
            LcwFamily::linear(g.clone()).unwrap(),
            LcwFamily::logarithmic(3),
            LcwFamily::angular(g.clone(), s).unwrap(),
            LcwFamily::inverse_linear(g.clone()).unwrap(),
            LcwFamily::spherical_arctan(g.clone(), qi(4)).unwrap(),
            LcwFamily::spherical_arctanh(g.clone(), qi(3)).unwrap(),
            LcwFamily::spherical_arctan(g, q(2, 3))
                .unwrap()
                .with_affine(q(-3, 2), qi(5))
                .unwrap(),
        ]
    }

    #[test]
    fn psi_values() {
        let f1 = LcwFamily::linear(basis_vector(3, 0)).unwrap();
        assert_eq!(psi_evaluate(&f1, &[3.0, 0.0, 0.0]).unwrap(), 3.0);
        let f2 = LcwFamily::logarithmic(3);
        assert!((psi_evaluate(&f2, &[std::f64::consts::E, 0.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        let f4 = LcwFamily::inverse_linear(basis_vector(3, 0)).unwrap();
        assert_eq!(psi_evaluate(&f4, &[1.0, 0.0, 0.0]).unwrap(), -2.0);
        assert_eq!(
            psi_evaluate(&f2, &[0.0, 0.0, 0.0]),
            Err(CkfError::Domain("origin"))
        );
    }

    #[test]
    fn log_gradient_is_position_field() {
        let f2 = LcwFamily::logarithmic(3);
        let r = verify_correspondence(&f2, &[int_vector(&[1, 2, 2])]);
        assert_eq!(r.mode, CorrespondenceMode::Exact);
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn exact_correspondence_for_every_family() {
        for f in all_families() {
            let r = verify_exact(&f, &samples());
            assert_eq!(r.max_residual, 0.0, "family {}", f.id);
            assert_eq!(r.checked, 4);
        }
    }

    #[test]
    fn finite_differences_agree() {
        for f in all_families() {
            let r = verify_correspondence_fd(&f, &samples(), FD_STEP);
            assert!(
                r.max_residual < 1e-6,
                "family {} residual {}",
                f.id,
                r.max_residual
            );
        }
    }

    #[test]
    fn non_square_s_uses_finite_differences() {
        let f = LcwFamily::spherical_arctanh(basis_vector(3, 1), qi(2)).unwrap();
        let r = verify_correspondence(&f, &samples());
        assert_eq!(r.mode, CorrespondenceMode::FiniteDifference);
        assert!(r.max_residual < 1e-6);
    }

    #[test]
    fn closed_form_gradient_matches_differences() {
        for f in all_families() {
            let x = [0.4, -1.3, 0.7];
            let g = psi_gradient(&f, &x).unwrap();
            for i in 0..3 {
                let (mut p, mut m) = (x, x);
                p[i] += 1e-6;
                m[i] -= 1e-6;
                let fd = (psi_evaluate(&f, &p).unwrap() - psi_evaluate(&f, &m).unwrap()) / 2e-6;
                assert!((fd - g[i]).abs() < 1e-6, "family {} component {i}", f.id);
            }
        }
    }

    #[test]
    fn angular_requires_orthogonality() {
        assert!(LcwFamily::angular(int_vector(&[1, 1, 0]), int_vector(&[1, 0, 0])).is_err());
    }
}
