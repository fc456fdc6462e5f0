//! Eigenflag directions: the Cotton-York vanishing pattern in dimension 3 and
//! the Weyl invariance condition `W(v ∧ v^⊥) ⊆ v ∧ v^⊥` in dimension 4.

mod weyl4;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::{sym_eigen_numeric, Rational};

pub use weyl4::{
    eigenflag_check_4d, flag_defect_4d, halton_sphere_starts, weyl_type, weyl_type_with,
    DescentStats, Eigenvalue, PlaneCertificate, WeylTag, WeylType,
};

/// Denominator bound used when turning float candidates into exact ones.
pub const RATIONALIZE_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlagError {
    #[error("direction must be nonzero")]
    ZeroVector,
    #[error("expected a {expected}x{expected} matrix")]
    WrongShape { expected: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not trace free")]
    NotTraceFree,
    #[error("tensor lacks Weyl symmetries at {0:?}")]
    NotWeylSymmetric(Vec<usize>),
    #[error("direction must have unit length, got norm {0}")]
    NotUnit(f64),
}

/// A direction satisfying the eigenflag condition, either proven in exact
/// arithmetic or located numerically with its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FlagCertificate {
    Exact { direction: Vector },
    Numeric { direction: Vec<f64>, defect: f64 },
}

impl FlagCertificate {
    pub fn is_exact(&self) -> bool {
        matches!(self, FlagCertificate::Exact { .. })
    }

    pub fn exact_direction(&self) -> Option<&Vector> {
        match self {
            FlagCertificate::Exact { direction } => Some(direction),
            FlagCertificate::Numeric { .. } => None,
        }
    }

    pub fn defect(&self) -> f64 {
        match self {
            FlagCertificate::Exact { .. } => 0.0,
            FlagCertificate::Numeric { defect, .. } => *defect,
        }
    }
}

/// Outcome of the three-dimensional search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FlagSearch3d {
    /// `CY = 0`: every direction qualifies.
    AllDirections,
    Found {
        certificates: Vec<FlagCertificate>,
    },
}

impl FlagSearch3d {
    pub fn exists(&self) -> bool {
        match self {
            FlagSearch3d::AllDirections => true,
            FlagSearch3d::Found { certificates } => !certificates.is_empty(),
        }
    }

    pub fn certificates(&self) -> &[FlagCertificate] {
        match self {
            FlagSearch3d::AllDirections => &[],
            FlagSearch3d::Found { certificates } => certificates,
        }
    }
}

fn require_3x3_symmetric(cy: &Matrix) -> Result<(), FlagError> {
    if cy.rows() != 3 || cy.cols() != 3 {
        return Err(FlagError::WrongShape { expected: 3 });
    }
    if !cy.is_symmetric() {
        return Err(FlagError::NotSymmetric);
    }
    Ok(())
}

/// `CY(v,v) = 0` and `CY(w_i,w_j) = 0` on an exact basis of `v^⊥`.
pub fn eigenflag_check_3d(cy: &Matrix, v: &[Rational]) -> Result<bool, FlagError> {
    require_3x3_symmetric(cy)?;
    if v.len() != 3 {
        return Err(FlagError::WrongShape { expected: 3 });
    }
    if linalg::is_zero_vector(v) {
        return Err(FlagError::ZeroVector);
    }
    if !cy.bilinear(v, v).is_zero() {
        return Ok(false);
    }
    let w = linalg::complement_basis(v);
    for i in 0..w.len() {
        for j in i..w.len() {
            if !cy.bilinear(&w[i], &w[j]).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn det_cy(cy: &Matrix) -> Result<Rational, FlagError> {
    if cy.rows() != 3 || cy.cols() != 3 {
        return Err(FlagError::WrongShape { expected: 3 });
    }
    Ok(cy.determinant())
}

/// Residual `CY(v,v)² + |P CY P|²` with `P` the projector onto `v^⊥`.
fn defect_3d(cy: &[Vec<f64>], v: &[f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = v.iter().map(|x| x / norm).collect();
    let p = |i: usize, j: usize| f64::from(u8::from(i == j)) - u[i] * u[j];
    let mut vv = 0.0;
    let mut rest = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            vv += u[i] * cy[i][j] * u[j];
            let mut pcp = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    pcp += p(i, k) * cy[k][l] * p(l, j);
                }
            }
            rest += pcp * pcp;
        }
    }
    vv * vv + rest
}

/// Rescale so the largest entry is `±1` and round each entry by continued
/// fractions.
pub fn rationalize_direction(v: &[f64]) -> Option<Vector> {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let out: Option<Vector> = v
        .iter()
        .map(|x| Rational::approximate(x / scale, RATIONALIZE_BOUND))
        .collect();
    out.filter(|w| !linalg::is_zero_vector(w))
        .map(|w| linalg::primitive(&w))
}

/// Locate eigenflags of a symmetric trace-free Cotton-York matrix.
///
/// When `det CY = 0` and `CY ≠ 0` the eigenvalues are `0, ±μ` and the flags
/// are `u₊ ± u₋` for the unit eigenvectors of `±μ`.
pub fn eigenflag_find_3d(cy: &Matrix) -> Result<FlagSearch3d, FlagError> {
    require_3x3_symmetric(cy)?;
    if !cy.trace().is_zero() {
        return Err(FlagError::NotTraceFree);
    }
    if cy.is_zero() {
        return Ok(FlagSearch3d::AllDirections);
    }
    if !cy.determinant().is_zero() {
        return Ok(FlagSearch3d::Found {
            certificates: Vec::new(),
        });
    }
    let eig = sym_eigen_numeric(cy, crate::ratmath::eigen::DEFAULT_TOL)
        .map_err(|_| FlagError::NotSymmetric)?;
    let rows = cy.to_f64_rows();
    let (minus, plus) = (&eig.vectors[0], &eig.vectors[2]);
    let mut certificates: Vec<FlagCertificate> = Vec::new();
    for sign in [1.0, -1.0] {
        let cand: Vec<f64> = (0..3).map(|i| plus[i] + sign * minus[i]).collect();
        let exact =
            rationalize_direction(&cand).filter(|r| eigenflag_check_3d(cy, r).unwrap_or(false));
        let cert = match exact {
            Some(direction) => FlagCertificate::Exact { direction },
            None => FlagCertificate::Numeric {
                defect: defect_3d(&rows, &cand),
                direction: cand,
            },
        };
        if !certificates.contains(&cert) {
            certificates.push(cert);
        }
    }
    certificates.sort_by(|a, b| match (a, b) {
        (FlagCertificate::Exact { direction: x }, FlagCertificate::Exact { direction: y }) => {
            y.cmp(x)
        }
        _ => std::cmp::Ordering::Equal,
    });
    Ok(FlagSearch3d::Found { certificates })
}
