use super::{LieAlgebra, LieError};
use crate::ratmath::linalg::{Matrix, Vector};
use crate::ratmath::{Rational, Symmetry, TensorTable};

/// Bivector basis order for the Weyl operator on `Λ²`.
pub const BIVECTOR_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `n_ijk = g(∇_{e_i} e_j, e_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    table: TensorTable,
}

impl ConnectionTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.table.get(&[i, j, k])
    }

    pub fn table(&self) -> &TensorTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Components of `∇_{e_i} e_j`.
    pub fn nabla(&self, i: usize, j: usize) -> Vector {
        (0..self.dim()).map(|k| self.get(i, j, k).clone()).collect()
    }

    /// `∇_u v` for constant-coefficient fields.
    pub fn covariant(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = Rational::zero();
                for i in 0..n {
                    if u[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !v[j].is_zero() {
                            acc += &u[i] * &v[j] * self.get(i, j, k);
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

/// Levi-Civita connection of the orthonormal frame:
/// `n_ijk = ½(a_ijk - a_jki + a_kij)` with `a_ijk = c_ij^k`.
pub fn connection(alg: &LieAlgebra) -> ConnectionTable {
    let half = Rational::new(1, 2);
    let table = TensorTable::from_fn(3, alg.dim(), |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        (alg.c(i, j, k) - alg.c(j, k, i) + alg.c(k, i, j)) * &half
    })
    .with_symmetry(Symmetry::Antisymmetric(1, 2));
    ConnectionTable { table }
}

fn riemann_from(alg: &LieAlgebra, conn: &ConnectionTable) -> TensorTable {
    let n = alg.dim();
    TensorTable::from_fn(4, n, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut acc = Rational::zero();
        for m in 0..n {
            acc += conn.get(i, k, m) * conn.get(j, m, l) - conn.get(j, k, m) * conn.get(i, m, l)
                + alg.c(i, j, m) * conn.get(m, k, l);
        }
        acc
    })
    .with_symmetry(Symmetry::Antisymmetric(0, 1))
    .with_symmetry(Symmetry::Antisymmetric(2, 3))
    .with_symmetry(Symmetry::PairExchange)
}

/// `R_ijkl = g(R(e_i,e_j)e_k, e_l)` with `R(X,Y) = ∇_Y∇_X - ∇_X∇_Y + ∇_[X,Y]`,
/// so that `R_ijij` is the sectional curvature of the plane `e_i ∧ e_j`.
pub fn riemann(alg: &LieAlgebra) -> TensorTable {
    riemann_from(alg, &connection(alg))
}

fn ricci_from(riem: &TensorTable) -> Matrix {
    let n = riem.dim();
    Matrix::from_fn(n, n, |j, k| (0..n).map(|i| riem.get(&[i, j, i, k])).sum())
}

/// `Ric_jk = Σ_i R_ijik`.
pub fn ricci(alg: &LieAlgebra) -> Matrix {
    ricci_from(&riemann(alg))
}

pub fn scalar(alg: &LieAlgebra) -> Rational {
    ricci(alg).trace()
}

fn schouten_from(ric: &Matrix) -> Matrix {
    let n = ric.rows() as i64;
    let s = ric.trace();
    let shift = s * Rational::new(1, 2 * (n - 1));
    ric.sub(&Matrix::identity(ric.rows()).scale(&shift))
        .scale(&Rational::new(1, n - 2))
}

/// `S = (Ric - s g / (2(n-1))) / (n-2)`.
pub fn schouten(alg: &LieAlgebra) -> Matrix {
    schouten_from(&ricci(alg))
}

/// `(a ⊘ b)_ijkl = a_ik b_jl + a_jl b_ik - a_il b_jk - a_jk b_il`.
pub fn kulkarni_nomizu(a: &Matrix, b: &Matrix) -> TensorTable {
    TensorTable::from_fn(4, a.rows(), |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        &a[(i, k)] * &b[(j, l)] + &a[(j, l)] * &b[(i, k)]
            - &a[(i, l)] * &b[(j, k)]
            - &a[(j, k)] * &b[(i, l)]
    })
}

fn cotton_from(conn: &ConnectionTable, sch: &Matrix) -> TensorTable {
    let n = conn.dim();
    // ∇_i S_jk for a frame-constant S
    let grad = |i: usize, j: usize, k: usize| -> Rational {
        let mut acc = Rational::zero();
        for m in 0..n {
            acc -= conn.get(i, j, m) * &sch[(m, k)] + conn.get(i, k, m) * &sch[(j, m)];
        }
        acc
    };
    TensorTable::from_fn(3, n, |x| grad(x[0], x[1], x[2]) - grad(x[1], x[0], x[2]))
        .with_symmetry(Symmetry::Antisymmetric(0, 1))
}

/// `C_ijk = ∇_i S_jk - ∇_j S_ik`.
pub fn cotton(alg: &LieAlgebra) -> TensorTable {
    cotton_from(&connection(alg), &schouten(alg))
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn cotton_york_from(c: &TensorTable) -> Matrix {
    let half = Rational::new(1, 2);
    Matrix::from_fn(3, 3, |a, b| {
        let mut acc = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                match levi_civita(a, i, j) {
                    1 => acc += c.get(&[i, j, b]),
                    -1 => acc -= c.get(&[i, j, b]),
                    _ => {}
                }
            }
        }
        acc * &half
    })
}

/// `CY_ab = ½ Σ ε_aij C_ijb`; three-dimensional only.
pub fn cotton_york(alg: &LieAlgebra) -> Result<Matrix, LieError> {
    require_dim(alg, 3)?;
    Ok(cotton_york_from(&cotton(alg)))
}

fn weyl_from(riem: &TensorTable, sch: &Matrix) -> TensorTable {
    let kn = kulkarni_nomizu(sch, &Matrix::identity(sch.rows()));
    riem.sub(&kn)
        .expect("same shape")
        .with_symmetry(Symmetry::Antisymmetric(0, 1))
        .with_symmetry(Symmetry::Antisymmetric(2, 3))
        .with_symmetry(Symmetry::PairExchange)
}

/// `W = R - S ⊘ g`; four-dimensional only.
pub fn weyl(alg: &LieAlgebra) -> Result<TensorTable, LieError> {
    require_dim(alg, 4)?;
    Ok(weyl_from(&riemann(alg), &schouten(alg)))
}

/// Matrix `W[(ij),(kl)] = W_ijkl` in the basis [`BIVECTOR_BASIS`].
pub fn weyl_operator_from(w: &TensorTable) -> Matrix {
    Matrix::from_fn(6, 6, |a, b| {
        let (i, j) = BIVECTOR_BASIS[a];
        let (k, l) = BIVECTOR_BASIS[b];
        w.get(&[i, j, k, l]).clone()
    })
}

pub fn weyl_bivector_operator(alg: &LieAlgebra) -> Result<Matrix, LieError> {
    Ok(weyl_operator_from(&weyl(alg)?))
}

fn require_dim(alg: &LieAlgebra, expected: usize) -> Result<(), LieError> {
    if alg.dim() == expected {
        Ok(())
    } else {
        Err(LieError::WrongDimension {
            expected,
            got: alg.dim(),
        })
    }
}

/// Ricci eigenvalues and scalar curvature of the diagonal unimodular algebra
/// from the closed forms `μ_i = ½(l1+l2+l3) - l_i`, `Ric_i = 2 μ_j μ_k`.
pub fn ricci_closed_form_3d(
    l1: &Rational,
    l2: &Rational,
    l3: &Rational,
) -> ([Rational; 3], Rational) {
    let half_sum = (l1 + l2 + l3) * Rational::new(1, 2);
    let mu = [&half_sum - l1, &half_sum - l2, &half_sum - l3];
    let two = Rational::from_integer(2);
    let ric = [
        &mu[1] * &mu[2] * &two,
        &mu[0] * &mu[2] * &two,
        &mu[0] * &mu[1] * &two,
    ];
    let s = (&mu[0] * &mu[1] + &mu[0] * &mu[2] + &mu[1] * &mu[2]) * &two;
    (ric, s)
}

/// Diagonal of the Cotton-York tensor of the diagonal unimodular algebra,
/// which is diagonal in the frame. Avoids building the full curvature.
pub fn cotton_york_closed_form_3d(l1: &Rational, l2: &Rational, l3: &Rational) -> [Rational; 3] {
    let half = Rational::new(1, 2);
    // n_ijk for the cyclic and anticyclic frame triples.
    let n012 = (l3 - l1 + l2) * &half;
    let n120 = (l1 - l2 + l3) * &half;
    let n201 = (l2 - l3 + l1) * &half;
    let n102 = (l2 - l3 - l1) * &half;
    let n210 = (l3 - l1 - l2) * &half;
    let n021 = (l1 - l2 - l3) * &half;
    let (ric, s) = ricci_closed_form_3d(l1, l2, l3);
    let quarter_s = s * Rational::new(1, 4);
    let [s0, s1, s2] = ric.map(|r| r - &quarter_s);
    let c012 = -(&n012 * &s2) - &n021 * &s1 + &n102 * &s2 + &n120 * &s0;
    let c120 = -(&n120 * &s0) - &n102 * &s2 + &n210 * &s0 + &n201 * &s1;
    let c201 = -(&n201 * &s1) - &n210 * &s0 + &n021 * &s1 + &n012 * &s2;
    [c120, c201, c012]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvaturePack {
    pub connection: ConnectionTable,
    pub riemann: TensorTable,
    pub ricci: Matrix,
    pub scalar: Rational,
    pub schouten: Matrix,
    pub cotton: Option<TensorTable>,
    pub cotton_york: Option<Matrix>,
    pub weyl: Option<TensorTable>,
    pub weyl_operator: Option<Matrix>,
}

/// Every curvature quantity of the algebra, sharing intermediate results.
pub fn curvature_pack(alg: &LieAlgebra) -> CurvaturePack {
    let connection = connection(alg);
    let riemann = riemann_from(alg, &connection);
    let ricci = ricci_from(&riemann);
    let scalar = ricci.trace();
    let schouten = schouten_from(&ricci);
    let (cotton, cotton_york) = if alg.dim() == 3 {
        let c = cotton_from(&connection, &schouten);
        let cy = cotton_york_from(&c);
        (Some(c), Some(cy))
    } else {
        (None, None)
    };
    let (weyl, weyl_operator) = if alg.dim() == 4 {
        let w = weyl_from(&riemann, &schouten);
        let op = weyl_operator_from(&w);
        (Some(w), Some(op))
    } else {
        (None, None)
    };
    CurvaturePack {
        connection,
        riemann,
        ricci,
        scalar,
        schouten,
        cotton,
        cotton_york,
        weyl,
        weyl_operator,
    }
}
