//! Exact rational scalars, vectors, matrices and tensors.

pub mod eigen;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod tensor;

pub use eigen::{sym_eigen_numeric, SymEigen};
pub use linalg::{Matrix, Vector};
pub use poly::{Poly1, RatFn};
pub use rational::{q, qi, Rational};
pub use tensor::{Symmetry, TensorTable};
