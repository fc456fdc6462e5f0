//! Dense rational tensors with declared index symmetries, plus exterior
//! algebra on fully antisymmetric tables.
//!
//! Forms use the `1/k!` normalization: `Alt(t) = (1/k!) Σ sign(π) t∘π` and
//! `a ∧ b = Alt(a ⊗ b)`, so `dx0 ∧ dx1` has component `(0,1) = 1/2`.

use std::fmt;

use thiserror::Error;

use super::linalg::Matrix;
use super::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
    /// `t[i,j,k,l] = t[k,l,i,j]`.
    PairExchange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("table is not antisymmetric")]
    NotAntisymmetric,
    #[error("declared symmetry {symmetry:?} fails at {index:?}")]
    SymmetryViolated {
        symmetry: Symmetry,
        index: Vec<usize>,
    },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorTable {
    rank: usize,
    dim: usize,
    data: Vec<Rational>,
    symmetries: Vec<Symmetry>,
}

impl TensorTable {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        TensorTable {
            rank,
            dim,
            data: vec![Rational::zero(); dim.pow(rank as u32)],
            symmetries: Vec::new(),
        }
    }

    pub fn from_fn(rank: usize, dim: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut t = Self::zeros(rank, dim);
        for flat in 0..t.data.len() {
            let idx = t.unflatten(flat);
            t.data[flat] = f(&idx);
        }
        t
    }

    /// Rank-1 table from a covector.
    pub fn one_form(v: &[Rational]) -> Self {
        Self::from_fn(1, v.len(), |i| v[i[0]].clone())
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        assert!(m.is_square());
        Self::from_fn(2, m.rows(), |i| m[(i[0], i[1])].clone())
    }

    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.rank, 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self.get(&[i, j]).clone())
    }

    /// Declare a symmetry. It is not checked here; see [`Self::verify_symmetries`].
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        if !self.symmetries.contains(&symmetry) {
            self.symmetries.push(symmetry);
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.symmetries
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let flat = self.flatten(idx);
        self.data[flat] = value;
    }

    /// All multi-indices in lexicographic order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.data.len()).map(|f| self.unflatten(f))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Sum of squares of all entries.
    pub fn norm_sq(&self) -> Rational {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn add(&self, other: &TensorTable) -> Result<TensorTable, TensorError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TensorTable) -> Result<TensorTable, TensorError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &TensorTable,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<TensorTable, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch(self.dim, other.dim));
        }
        if self.rank != other.rank {
            return Err(TensorError::IndexOutOfRange {
                index: other.rank,
                rank: self.rank,
            });
        }
        Ok(TensorTable {
            rank: self.rank,
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
            symmetries: Vec::new(),
        })
    }

    pub fn scale(&self, k: &Rational) -> TensorTable {
        TensorTable {
            rank: self.rank,
            dim: self.dim,
            data: self.data.iter().map(|x| x * k).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    pub fn tensor_product(&self, other: &TensorTable) -> Result<TensorTable, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch(self.dim, other.dim));
        }
        let r = self.rank;
        Ok(Self::from_fn(r + other.rank, self.dim, |idx| {
            self.get(&idx[..r]) * other.get(&idx[r..])
        }))
    }

    /// First violation of a declared symmetry, if any.
    pub fn verify_symmetries(&self) -> Result<(), TensorError> {
        for &symmetry in &self.symmetries {
            for idx in self.indices() {
                let (partner, negate) = match symmetry {
                    Symmetry::Symmetric(a, b) | Symmetry::Antisymmetric(a, b) => {
                        for k in [a, b] {
                            if k >= self.rank {
                                return Err(TensorError::IndexOutOfRange {
                                    index: k,
                                    rank: self.rank,
                                });
                            }
                        }
                        let mut p = idx.clone();
                        p.swap(a, b);
                        (p, matches!(symmetry, Symmetry::Antisymmetric(..)))
                    }
                    Symmetry::PairExchange => {
                        if self.rank != 4 {
                            return Err(TensorError::IndexOutOfRange {
                                index: 3,
                                rank: self.rank,
                            });
                        }
                        (vec![idx[2], idx[3], idx[0], idx[1]], false)
                    }
                };
                let v = self.get(&idx);
                let w = self.get(&partner);
                let holds = if negate { *v == -w } else { v == w };
                if !holds {
                    return Err(TensorError::SymmetryViolated {
                        symmetry,
                        index: idx,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.rank).all(|a| {
            (a + 1..self.rank).all(|b| {
                self.indices().all(|idx| {
                    let mut p = idx.clone();
                    p.swap(a, b);
                    *self.get(&idx) == -self.get(&p)
                })
            })
        })
    }

    /// Antisymmetrize over the listed index positions with `1/k!` weight.
    pub fn antisymmetrize(&self, positions: &[usize]) -> Result<TensorTable, TensorError> {
        if let Some(&bad) = positions.iter().find(|&&p| p >= self.rank) {
            return Err(TensorError::IndexOutOfRange {
                index: bad,
                rank: self.rank,
            });
        }
        let perms = signed_permutations(positions.len());
        let weight = Rational::from_integer(perms.len() as i64).recip().unwrap();
        let mut out = Self::from_fn(self.rank, self.dim, |idx| {
            let mut acc = Rational::zero();
            let mut src = idx.to_vec();
            for (perm, sign) in &perms {
                for (slot, &p) in perm.iter().enumerate() {
                    src[positions[slot]] = idx[positions[p]];
                }
                if *sign > 0 {
                    acc += self.get(&src);
                } else {
                    acc -= self.get(&src);
                }
            }
            acc * &weight
        });
        for (i, &a) in positions.iter().enumerate() {
            for &b in &positions[i + 1..] {
                out = out.with_symmetry(Symmetry::Antisymmetric(a, b));
            }
        }
        Ok(out)
    }

    /// Exterior product `Alt(a ⊗ b)`; degree overflow yields the zero form
    /// of rank `dim`.
    pub fn wedge(&self, other: &TensorTable) -> Result<TensorTable, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch(self.dim, other.dim));
        }
        if !self.is_antisymmetric() || !other.is_antisymmetric() {
            return Err(TensorError::NotAntisymmetric);
        }
        let degree = self.rank + other.rank;
        if degree > self.dim {
            return Ok(TensorTable::zeros(self.dim, self.dim));
        }
        let all: Vec<usize> = (0..degree).collect();
        self.tensor_product(other)?.antisymmetrize(&all)
    }
}

/// Permutations of `0..k` with their signs, in lexicographic order.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i8)>) {
        if prefix.len() == used.len() {
            let inversions = (0..prefix.len())
                .flat_map(|i| (i + 1..prefix.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

impl fmt::Debug for TensorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for idx in self.indices() {
            let v = self.get(&idx);
            if !v.is_zero() {
                m.entry(&idx, v);
            }
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::linalg::basis_vector;
    use crate::ratmath::rational::{q, qi};
    use proptest::prelude::*;

    fn dx(dim: usize, i: usize) -> TensorTable {
        TensorTable::one_form(&basis_vector(dim, i))
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
    }

    fn form1(dim: usize) -> impl Strategy<Value = TensorTable> {
        prop::collection::vec(small_rational(), dim).prop_map(|v| TensorTable::one_form(&v))
    }

    #[test]
    fn basis_wedge_component_is_half() {
        let w = dx(3, 0).wedge(&dx(3, 1)).unwrap();
        assert_eq!(*w.get(&[0, 1]), q(1, 2));
        assert_eq!(*w.get(&[1, 0]), q(-1, 2));
        assert_eq!(*w.get(&[0, 2]), qi(0));
    }

    #[test]
    fn antisymmetrize_symmetric_is_zero() {
        let t = TensorTable::from_fn(2, 3, |i| qi((i[0] + i[1]) as i64));
        assert!(t.antisymmetrize(&[0, 1]).unwrap().is_zero());
    }

    #[test]
    fn antisymmetrize_elementary_product() {
        let t = dx(3, 0).tensor_product(&dx(3, 1)).unwrap();
        let a = t.antisymmetrize(&[0, 1]).unwrap();
        assert_eq!(*a.get(&[0, 1]), q(1, 2));
        assert_eq!(*a.get(&[1, 0]), q(-1, 2));
        assert!(a.verify_symmetries().is_ok());
    }

    #[test]
    fn antisymmetrize_rejects_bad_index() {
        let t = TensorTable::zeros(2, 3);
        assert_eq!(
            t.antisymmetrize(&[0, 2]),
            Err(TensorError::IndexOutOfRange { index: 2, rank: 2 })
        );
    }

    #[test]
    fn degree_overflow_is_zero() {
        let a = dx(2, 0).wedge(&dx(2, 1)).unwrap();
        assert!(a.wedge(&dx(2, 0)).unwrap().is_zero());
    }

    #[test]
    fn declared_symmetry_violation_is_reported() {
        let mut t = TensorTable::zeros(2, 2).with_symmetry(Symmetry::Symmetric(0, 1));
        t.set(&[0, 1], qi(1));
        assert!(matches!(
            t.verify_symmetries(),
            Err(TensorError::SymmetryViolated { .. })
        ));
    }

    proptest! {
        #[test]
        fn antisymmetrize_is_idempotent(entries in prop::collection::vec(small_rational(), 27)) {
            let t = TensorTable::from_fn(3, 3, |i| entries[i[0] * 9 + i[1] * 3 + i[2]].clone());
            let once = t.antisymmetrize(&[0, 1, 2]).unwrap();
            let twice = once.antisymmetrize(&[0, 1, 2]).unwrap();
            prop_assert_eq!(once.entries(), twice.entries());
            prop_assert!(once.is_antisymmetric());
        }

        #[test]
        fn wedge_is_associative(a in form1(4), b in form1(4), c in form1(4)) {
            let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert_eq!(left.entries(), right.entries());
        }

        #[test]
        fn wedge_graded_commutativity(a in form1(4), b in form1(4), c in form1(4)) {
            let ab = a.wedge(&b).unwrap();
            prop_assert!(a.wedge(&a).unwrap().is_zero());
            // (1,2) forms commute: (-1)^{1*2} = 1
            let ab_c = ab.wedge(&c).unwrap();
            let c_ab = c.wedge(&ab).unwrap();
            prop_assert_eq!(ab_c.entries(), c_ab.entries());
            let ba = b.wedge(&a).unwrap();
            let neg_ba = ba.scale(&qi(-1));
            prop_assert_eq!(ab.entries(), neg_ba.entries());
        }

        #[test]
        fn gamma_sigma_wedge_gamma_vanishes(g in form1(4), s in form1(4)) {
            let gs = g.wedge(&s).unwrap();
            prop_assert!(gs.wedge(&g).unwrap().is_zero());
        }
    }
}
