//! Metric Lie algebras with an orthonormal frame and the curvature of the
//! corresponding left-invariant metric.

mod curvature;
pub mod fixtures;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::{Rational, Symmetry, TensorTable};

pub use curvature::{
    connection, cotton, cotton_york, cotton_york_closed_form_3d, curvature_pack, kulkarni_nomizu,
    ricci, ricci_closed_form_3d, riemann, scalar, schouten, weyl, weyl_bivector_operator,
    weyl_operator_from, ConnectionTable, CurvaturePack, BIVECTOR_BASIS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension {0} unsupported; expected 3 or 4")]
    UnsupportedDimension(usize),
    #[error("bracket index ({0}, {1}) out of range")]
    IndexOutOfRange(usize, usize),
    #[error("bracket pair ({0}, {1}) must satisfy i < j")]
    BadPair(usize, usize),
    #[error("bracket [e{0}, e{1}] given twice")]
    DuplicatePair(usize, usize),
    #[error("structure constants not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails for (e{}, e{}, e{}): defect {defect:?}", triple.0, triple.1, triple.2)]
    Jacobi {
        triple: (usize, usize, usize),
        defect: Vector,
    },
    #[error("operation requires dimension {expected}, algebra has {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("change of basis matrix is singular")]
    SingularBasis,
}

/// Structure constants `[e_i, e_j] = Σ_k c_ij^k e_k` with `{e_i}` declared
/// orthonormal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieAlgebra {
    dim: usize,
    /// `constants[(i*dim + j)*dim + k] = c_ij^k`.
    constants: Vec<Rational>,
}

impl LieAlgebra {
    /// Build from brackets `[e_i, e_j]` with `i < j`; unspecified brackets
    /// vanish. Jacobi is checked unless `skip_jacobi` is set.
    pub fn load(
        dim: usize,
        brackets: &[((usize, usize), Vector)],
        skip_jacobi: bool,
    ) -> Result<Self, LieError> {
        if !(3..=4).contains(&dim) {
            return Err(LieError::UnsupportedDimension(dim));
        }
        let mut alg = LieAlgebra {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
        };
        let mut seen = vec![false; dim * dim];
        for ((i, j), result) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(LieError::IndexOutOfRange(i, j));
            }
            if i >= j {
                return Err(LieError::BadPair(i, j));
            }
            if result.len() != dim {
                return Err(LieError::IndexOutOfRange(i, j));
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(LieError::DuplicatePair(i, j));
            }
            for (k, v) in result.iter().enumerate() {
                alg.set(i, j, k, v.clone());
                alg.set(j, i, k, -v);
            }
        }
        if !skip_jacobi {
            alg.check_jacobi()?;
        }
        Ok(alg)
    }

    /// From a full rank-3 table `c[i][j][k]`.
    pub fn from_table(table: &TensorTable, skip_jacobi: bool) -> Result<Self, LieError> {
        let dim = table.dim();
        if !(3..=4).contains(&dim) || table.rank() != 3 {
            return Err(LieError::UnsupportedDimension(dim));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if *table.get(&[i, j, k]) != -table.get(&[j, i, k]) {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        let alg = LieAlgebra {
            dim,
            constants: table.entries().to_vec(),
        };
        if !skip_jacobi {
            alg.check_jacobi()?;
        }
        Ok(alg)
    }

    /// Diagonal unimodular brackets `[e1,e2] = l3 e3`, `[e2,e3] = l1 e1`,
    /// `[e3,e1] = l2 e2` (frame indexed from 0 here).
    pub fn unimodular_3d(l1: Rational, l2: Rational, l3: Rational) -> Self {
        let mut alg = LieAlgebra {
            dim: 3,
            constants: vec![Rational::zero(); 27],
        };
        for (i, j, k, l) in [(0, 1, 2, l3), (1, 2, 0, l1), (2, 0, 1, l2)] {
            alg.set(i, j, k, l.clone());
            alg.set(j, i, k, -l);
        }
        alg
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let n = self.dim;
        self.constants[(i * n + j) * n + k] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim;
        &self.constants[(i * n + j) * n + k]
    }

    pub fn structure_table(&self) -> TensorTable {
        TensorTable::from_fn(3, self.dim, |idx| self.c(idx[0], idx[1], idx[2]).clone())
            .with_symmetry(Symmetry::Antisymmetric(0, 1))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// `[u, v]` for constant-coefficient vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim;
        let mut out = linalg::zero_vector(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *slot += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Nonzero brackets `[e_i, e_j]`, `i < j`, in lexicographic order.
    pub fn brackets(&self) -> Vec<((usize, usize), Vector)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.bracket_basis(i, j)))
            .filter(|(_, v)| !linalg::is_zero_vector(v))
            .collect()
    }

    /// First triple `i < j < k` whose cyclic sum `[[e_i,e_j],e_k] + …` is
    /// nonzero.
    pub fn jacobi_defect(&self) -> Option<((usize, usize, usize), Vector)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a: usize| linalg::basis_vector(n, a);
                    let term = |a: usize, b: usize, c: usize| {
                        self.bracket(&self.bracket_basis(a, b), &e(c))
                    };
                    let sum =
                        linalg::add(&linalg::add(&term(i, j, k), &term(j, k, i)), &term(k, i, j));
                    if !linalg::is_zero_vector(&sum) {
                        return Some(((i, j, k), sum));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> Result<(), LieError> {
        match self.jacobi_defect() {
            Some((triple, defect)) => Err(LieError::Jacobi { triple, defect }),
            None => Ok(()),
        }
    }

    /// Express the brackets in the basis `f_a = Σ_i p[a][i] e_i`, then declare
    /// that basis orthonormal. Jacobi is preserved.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self, LieError> {
        let n = self.dim;
        let inv = p.inverse().ok_or(LieError::SingularBasis)?;
        let mut out = LieAlgebra {
            dim: n,
            constants: vec![Rational::zero(); n * n * n],
        };
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(p.row(a), p.row(b));
                // br = Σ_k br_k e_k and e_k = Σ_c inv[k][c] f_c
                for c in 0..n {
                    let v: Rational = (0..n).map(|k| &br[k] * &inv[(k, c)]).sum();
                    out.set(a, b, c, v.clone());
                    out.set(b, a, c, -v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Rational::is_zero)
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for ((i, j), v) in self.brackets() {
            m.entry(&format!("[e{i},e{j}]"), &v);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::int_vector;
    use crate::ratmath::rational::qi;

    #[test]
    fn abelian_is_valid() {
        let a = LieAlgebra::load(4, &[], false).unwrap();
        assert!(a.is_abelian());
    }

    #[test]
    fn type_b_example_is_valid() {
        assert!(fixtures::weyl_type_b().check_jacobi().is_ok());
    }

    #[test]
    fn broken_brackets_fail_jacobi() {
        // [e0,e1]=e2, [e1,e2]=e1 gives cyclic sum -e2
        let err = LieAlgebra::load(
            3,
            &[
                ((0, 1), int_vector(&[0, 0, 1])),
                ((1, 2), int_vector(&[0, 1, 0])),
            ],
            false,
        )
        .unwrap_err();
        match err {
            LieError::Jacobi { triple, defect } => {
                assert_eq!(triple, (0, 1, 2));
                assert_eq!(defect, int_vector(&[0, 0, -1]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn printed_type_c_brackets_fail_jacobi() {
        let err = fixtures::weyl_type_c_as_printed()
            .check_jacobi()
            .unwrap_err();
        assert_eq!(
            err,
            LieError::Jacobi {
                triple: (0, 1, 2),
                defect: int_vector(&[0, -2, -2, 0])
            }
        );
        assert!(fixtures::weyl_type_c().check_jacobi().is_ok());
    }

    #[test]
    fn input_validation() {
        assert_eq!(
            LieAlgebra::load(5, &[], false),
            Err(LieError::UnsupportedDimension(5))
        );
        assert_eq!(
            LieAlgebra::load(3, &[((1, 0), int_vector(&[0, 0, 1]))], false),
            Err(LieError::BadPair(1, 0))
        );
        let e = int_vector(&[0, 0, 1]);
        assert_eq!(
            LieAlgebra::load(3, &[((0, 1), e.clone()), ((0, 1), e)], false),
            Err(LieError::DuplicatePair(0, 1))
        );
    }

    #[test]
    fn unimodular_brackets() {
        let a = LieAlgebra::unimodular_3d(qi(1), qi(2), qi(3));
        assert_eq!(a.bracket_basis(0, 1), int_vector(&[0, 0, 3]));
        assert_eq!(a.bracket_basis(1, 2), int_vector(&[1, 0, 0]));
        assert_eq!(a.bracket_basis(2, 0), int_vector(&[0, 2, 0]));
        assert!(a.check_jacobi().is_ok());
    }

    #[test]
    fn change_of_basis_keeps_jacobi() {
        let p = Matrix::from_ints(&[&[1, 2, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 0, 2, 1]]);
        let b = fixtures::weyl_type_c().change_basis(&p).unwrap();
        assert!(b.check_jacobi().is_ok());
        let back = b.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, fixtures::weyl_type_c());
    }
}
