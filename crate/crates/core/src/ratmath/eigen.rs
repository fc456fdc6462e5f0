//! Cyclic Jacobi eigensolver for small symmetric matrices.

use thiserror::Error;

use super::linalg::Matrix;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

pub fn sym_eigen_numeric(m: &Matrix, tol: f64) -> Result<SymEigen, EigenError> {
    if !m.is_symmetric() {
        return Err(EigenError::NotSymmetric);
    }
    Ok(jacobi(m.to_f64_rows(), tol))
}

/// Jacobi sweeps on a dense row-major matrix assumed symmetric.
pub fn jacobi(mut a: Vec<Vec<f64>>, tol: f64) -> SymEigen {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let threshold = (tol * 1e-3 * scale).max(f64::EPSILON * scale);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = a[p][r];
                if apr.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vr = row[r];
                    row[p] = c * vp - s * vr;
                    row[r] = s * vp + c * vr;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    SymEigen {
        values: order.iter().map(|&k| a[k][k]).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i][k]).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::{q, Rational};
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn diagonal_input() {
        let m = Matrix::diagonal(&[q(1, 8), q(1, 2), q(-5, 8)]);
        let e = sym_eigen_numeric(&m, DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![-0.625, 0.125, 0.5]);
    }

    #[test]
    fn zero_matrix_gives_identity_vectors() {
        let e = sym_eigen_numeric(&Matrix::zeros(3, 3), DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        for (k, v) in e.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn arrow_matrix_has_root_two_spectrum() {
        let m = Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]]);
        let e = sym_eigen_numeric(&m, DEFAULT_TOL).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(e.values[0], -r2, 1e-12));
        assert!(close(e.values[1], 0.0, 1e-12));
        assert!(close(e.values[2], r2, 1e-12));
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            sym_eigen_numeric(&m, DEFAULT_TOL),
            Err(EigenError::NotSymmetric)
        );
    }

    fn symmetric_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=6).prop_flat_map(|n| {
            prop::collection::vec((-30i64..30, 1i64..7), n * n).prop_map(move |raw| {
                Matrix::from_fn(n, n, |i, j| {
                    let (a, b) = (i.min(j), i.max(j));
                    let (num, den) = raw[a * n + b];
                    Rational::new(num, den)
                })
            })
        })
    }

    proptest! {
        #[test]
        fn reconstruction_and_residuals(m in symmetric_matrix()) {
            let tol = DEFAULT_TOL;
            let e = sym_eigen_numeric(&m, tol).unwrap();
            let n = m.rows();
            let a = m.to_f64_rows();
            let scale = a.iter().flatten().fold(1.0f64, |s, x| s.max(x.abs()));
            for w in e.values.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            for (lambda, v) in e.values.iter().zip(&e.vectors) {
                for i in 0..n {
                    let mv: f64 = (0..n).map(|j| a[i][j] * v[j]).sum();
                    prop_assert!((mv - lambda * v[i]).abs() <= tol * scale * 10.0);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = (0..n).map(|k| e.vectors[i][k] * e.vectors[j][k]).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!(close(dot, expected, 1e-12));
                    let rec: f64 = (0..n).map(|k| e.vectors[k][i] * e.values[k] * e.vectors[k][j]).sum();
                    prop_assert!((rec - a[i][j]).abs() <= 10.0 * tol * scale);
                }
            }
        }
    }
}
