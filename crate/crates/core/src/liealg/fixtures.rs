//! Reference algebras used by tests, scenarios and the demo.

use super::LieAlgebra;
use crate::ratmath::linalg::Vector;
use crate::ratmath::rational::{q, qi};
use crate::ratmath::Rational;

fn v(entries: [Rational; 4]) -> Vector {
    entries.to_vec()
}

/// Four-dimensional algebra whose Weyl operator is diagonal in the frame
/// bivectors with three distinct eigenvalues.
pub fn weyl_type_b() -> LieAlgebra {
    let z = || qi(0);
    LieAlgebra::load(
        4,
        &[
            ((0, 1), v([z(), z(), q(-1, 2), z()])),
            ((0, 2), v([z(), qi(-1), z(), z()])),
            ((1, 2), v([qi(1), z(), z(), z()])),
            ((1, 3), v([z(), z(), q(-1, 2), z()])),
            ((2, 3), v([z(), qi(-1), z(), z()])),
        ],
        false,
    )
    .expect("valid algebra")
}

fn type_c_brackets(e3_in_12: i64) -> Vec<((usize, usize), Vector)> {
    let i = |a: [i64; 4]| a.iter().map(|&x| qi(x)).collect::<Vector>();
    vec![
        ((0, 1), i([0, 0, -1, -1])),
        ((0, 2), i([0, -1, 0, 1])),
        ((0, 3), i([0, -1, -1, 0])),
        ((1, 2), i([1, 0, 0, e3_in_12])),
        ((1, 3), i([1, 0, -3, 0])),
        ((2, 3), i([-1, -3, 0, 0])),
    ]
}

/// Four-dimensional algebra with Weyl operator of type C: the planes
/// `e0 ⊕ e1` and `e2 ⊕ e3` consist of eigenflags.
pub fn weyl_type_c() -> LieAlgebra {
    LieAlgebra::load(4, &type_c_brackets(3), false).expect("valid algebra")
}

/// The same brackets with `[e1, e2] = e0 + e3`, which violate Jacobi.
/// Loaded without validation so the failure can be reported.
pub fn weyl_type_c_as_printed() -> LieAlgebra {
    LieAlgebra::load(4, &type_c_brackets(1), true).expect("well-formed brackets")
}

/// Diagonal unimodular algebra with Cotton-York `diag(-315/2, 315/2, 0)`.
pub fn unimodular_6_m4_5() -> LieAlgebra {
    LieAlgebra::unimodular_3d(qi(6), qi(-4), qi(5))
}
