//! Dense exact vectors and matrices over [`Rational`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{denominator_lcm, Rational};

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn int_vector(values: &[i64]) -> Vector {
    values.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], k: &Rational) -> Vector {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_vector(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

pub fn to_f64_vector(a: &[Rational]) -> Vec<f64> {
    a.iter().map(Rational::to_f64).collect()
}

/// 3D cross product.
pub fn cross(a: &[Rational], b: &[Rational]) -> Vector {
    assert!(a.len() == 3 && b.len() == 3);
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Rescale to the primitive integer vector on the same ray-or-line, with the
/// first nonzero entry positive. Zero vectors are returned unchanged.
pub fn primitive(v: &[Rational]) -> Vector {
    if is_zero_vector(v) {
        return v.to_vec();
    }
    let lcm = denominator_lcm(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |g, x| g.gcd(x));
    let first_negative = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = Rational::from_bigints(x / &gcd, BigInt::from(1));
            if first_negative {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// Exact (non-orthonormal) basis of the orthogonal complement of `v`.
///
/// In dimension 3 the basis is `v × e_k`, `v × (v × e_k)` with `e_k` the
/// coordinate axis where `|v_k|` is smallest; in other dimensions the pivot
/// construction `v_p e_i - v_i e_p` is used. Each vector is made primitive.
pub fn complement_basis(v: &[Rational]) -> Vec<Vector> {
    let n = v.len();
    assert!(!is_zero_vector(v), "complement of the zero vector");
    let raw: Vec<Vector> = if n == 3 {
        let k = (0..3).min_by(|&a, &b| v[a].abs().cmp(&v[b].abs())).unwrap();
        let w1 = cross(v, &basis_vector(3, k));
        let w2 = cross(v, &w1);
        vec![w1, w2]
    } else {
        let p = v.iter().position(|x| !x.is_zero()).unwrap();
        (0..n)
            .filter(|&i| i != p)
            .map(|i| {
                let mut w = zero_vector(n);
                w[i] = v[p].clone();
                w[p] = -&v[i];
                w
            })
            .collect()
    };
    raw.iter().map(|w| primitive(w)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vector(r)).collect())
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Column vectors stacked side by side.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, cols.len(), |i, j| cols[j][i].clone())
    }

    /// The skew matrix `a bᵀ - b aᵀ`.
    pub fn wedge(a: &[Rational], b: &[Rational]) -> Self {
        let n = a.len();
        Self::from_fn(n, n, |i, j| &a[i] * &b[j] - &b[i] * &a[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| to_f64_vector(self.row(i))).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(u, &self.mul_vec(v))
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Row echelon form by fraction-exact Gaussian elimination; returns the
    /// reduced matrix and its rank.
    fn echelon(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].recip().unwrap();
            for j in col..m.cols {
                let v = &m[(rank, j)] * &inv;
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r != rank && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(r, j)] - &factor * &m[(rank, j)];
                        m[(r, j)] = v;
                    }
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            let inv = p.recip().unwrap();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..n {
                    let v = &m[(r, j)] - &factor * &m[(col, j)];
                    m[(r, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (red, _) = aug.echelon();
        if (0..n).any(|i| !red[(i, i)].is_one()) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red[(i, j + n)].clone()))
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<Vector> {
        let (red, rank) = self.echelon();
        let mut pivots = Vec::with_capacity(rank);
        let mut r = 0;
        for c in 0..self.cols {
            if r < rank && red[(r, c)].is_one() && (0..r).all(|k| red[(k, c)].is_zero()) {
                pivots.push(c);
                r += 1;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&red[(row, f)];
                }
                v
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}
