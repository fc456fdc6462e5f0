//! Exact-arithmetic analysis of limiting Carleman weights on Euclidean space
//! and of curvature obstructions on left-invariant metrics.

pub mod ckf;
pub mod dist;
pub mod flags;
pub mod liealg;
pub mod ratmath;
