use serde::{Deserialize, Serialize};

use super::{rationalize_direction, FlagCertificate, FlagError, RATIONALIZE_BOUND};
use crate::liealg::BIVECTOR_BASIS;
use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::{sym_eigen_numeric, Rational, TensorTable};

const STARTS: usize = 64;
const MAX_ITERATIONS: usize = 500;
const STOP_DEFECT: f64 = 1e-14;
const NO_FLAG_FLOOR: f64 = 1e-8;
const FD_STEP: f64 = 1e-6;
const DEGENERATE_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeylTag {
    A,
    B,
    C,
    D,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Eigenvalue {
    Exact {
        value: Rational,
        multiplicity: usize,
    },
    Numeric {
        value: f64,
        multiplicity: usize,
    },
}

impl Eigenvalue {
    pub fn multiplicity(&self) -> usize {
        match self {
            Eigenvalue::Exact { multiplicity, .. } | Eigenvalue::Numeric { multiplicity, .. } => {
                *multiplicity
            }
        }
    }
}

/// A 2-plane every direction of which is an eigenflag, certified at five
/// exact sample directions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCertificate {
    pub basis: [Vector; 2],
    pub samples: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStats {
    pub starts: usize,
    /// Descents ending with defect at most `1e-8`.
    pub converged: usize,
    pub min_defect: f64,
    pub max_defect: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylType {
    pub tag: WeylTag,
    pub eigenvalues: Vec<Eigenvalue>,
    pub multiplicities_exact: bool,
    /// Exact eigenflag directions found, as primitive integer vectors.
    pub flags: Vec<FlagCertificate>,
    pub planes: Vec<PlaneCertificate>,
    pub search: Option<DescentStats>,
    pub note: Option<String>,
}

fn check_weyl_symmetries(w: &TensorTable) -> Result<(), FlagError> {
    if w.rank() != 4 || w.dim() != 4 {
        return Err(FlagError::WrongShape { expected: 4 });
    }
    for idx in w.indices() {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let x = w.get(&idx);
        if *x != -w.get(&[j, i, k, l]) || *x != -w.get(&[i, j, l, k]) || x != w.get(&[k, l, i, j]) {
            return Err(FlagError::NotWeylSymmetric(idx));
        }
    }
    Ok(())
}

fn operator(w: &TensorTable) -> Matrix {
    crate::liealg::weyl_operator_from(w)
}

fn bivector(v: &[Rational], u: &[Rational]) -> Vector {
    BIVECTOR_BASIS
        .iter()
        .map(|&(i, j)| &v[i] * &u[j] - &v[j] * &u[i])
        .collect()
}

/// Exact invariance test on the bivector operator.
pub(crate) fn check_on_operator(w6: &Matrix, v: &[Rational]) -> bool {
    let flag: Vec<Vector> = linalg::complement_basis(v)
        .iter()
        .map(|w| bivector(v, w))
        .collect();
    let span = Matrix::from_columns(&flag);
    let mut cols = flag.clone();
    cols.extend(flag.iter().map(|b| w6.mul_vec(b)));
    Matrix::from_columns(&cols).rank() == span.rank()
}

/// `W(v ∧ v^⊥) ⊆ v ∧ v^⊥`, decided by exact rank.
pub fn eigenflag_check_4d(w: &TensorTable, v: &[Rational]) -> Result<bool, FlagError> {
    check_weyl_symmetries(w)?;
    if v.len() != 4 {
        return Err(FlagError::WrongShape { expected: 4 });
    }
    if linalg::is_zero_vector(v) {
        return Err(FlagError::ZeroVector);
    }
    Ok(check_on_operator(&operator(w), v))
}

type Op6 = [[f64; 6]; 6];

fn operator_f64(w6: &Matrix) -> Op6 {
    let mut out = [[0.0; 6]; 6];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            *slot = w6[(a, b)].to_f64();
        }
    }
    out
}

/// `|(1-P) W P|²` where `P ω = v ∧ ι_v ω` projects onto `v ∧ v^⊥`; the input
/// is normalized first so the value depends only on the direction.
fn defect_raw(w: &Op6, v: &[f64; 4]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u = v.map(|x| x / norm);
    let mut p = [[0.0; 6]; 6];
    for (b, &(a0, a1)) in BIVECTOR_BASIS.iter().enumerate() {
        // ι_u (e_a0 ∧ e_a1) = u_a0 e_a1 - u_a1 e_a0
        let mut iu = [0.0; 4];
        iu[a1] += u[a0];
        iu[a0] -= u[a1];
        for (a, &(j, k)) in BIVECTOR_BASIS.iter().enumerate() {
            p[a][b] = u[j] * iu[k] - u[k] * iu[j];
        }
    }
    let mut wp = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            wp[i][j] = (0..6).map(|k| w[i][k] * p[k][j]).sum();
        }
    }
    let mut total = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            let pwp: f64 = (0..6).map(|k| p[i][k] * wp[k][j]).sum();
            let r = wp[i][j] - pwp;
            total += r * r;
        }
    }
    total
}

/// Squared norm of the part of `W(v ∧ v^⊥)` leaving `v ∧ v^⊥`.
pub fn flag_defect_4d(w: &TensorTable, v: &[f64]) -> Result<f64, FlagError> {
    check_weyl_symmetries(w)?;
    if v.len() != 4 {
        return Err(FlagError::WrongShape { expected: 4 });
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(FlagError::NotUnit(norm));
    }
    Ok(defect_raw(
        &operator_f64(&operator(w)),
        &[v[0], v[1], v[2], v[3]],
    ))
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Deterministic quasi-random unit vectors in `R^4` from the Halton sequence
/// in bases 2, 3, 5, 7, skipping points too close to the origin.
pub fn halton_sphere_starts(count: usize) -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1;
    while out.len() < count {
        let x = [2, 3, 5, 7].map(|b| 2.0 * radical_inverse(i, b) - 1.0);
        let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm > 0.2 {
            out.push(x.map(|t| t / norm));
        }
        i += 1;
    }
    out
}

struct DescentEnd {
    point: [f64; 4],
    defect: f64,
    iterations: usize,
}

fn descend(w: &Op6, start: [f64; 4]) -> DescentEnd {
    let f = |x: &[f64; 4]| defect_raw(w, x);
    let mut x = start;
    let mut fx = f(&x);
    let mut step = 1.0;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && fx >= STOP_DEFECT {
        iterations += 1;
        let mut g = [0.0; 4];
        for k in 0..4 {
            let (mut hi, mut lo) = (x, x);
            hi[k] += FD_STEP;
            lo[k] -= FD_STEP;
            g[k] = (f(&hi) - f(&lo)) / (2.0 * FD_STEP);
        }
        // project to the tangent space of the sphere
        let radial: f64 = (0..4).map(|k| g[k] * x[k]).sum();
        for k in 0..4 {
            g[k] -= radial * x[k];
        }
        let gg: f64 = g.iter().map(|t| t * t).sum();
        if gg == 0.0 {
            break;
        }
        let mut improved = false;
        while step > 1e-16 {
            let mut y = [0.0; 4];
            for k in 0..4 {
                y[k] = x[k] - step * g[k];
            }
            let n = y.iter().map(|t| t * t).sum::<f64>().sqrt();
            let y = y.map(|t| t / n);
            let fy = f(&y);
            if fy <= fx - 1e-4 * step * gg {
                x = y;
                fx = fy;
                improved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    DescentEnd {
        point: x,
        defect: fx,
        iterations,
    }
}

fn run_descents(w: &Op6, workers: usize) -> Vec<DescentEnd> {
    let starts = halton_sphere_starts(STARTS);
    if workers <= 1 {
        return starts.into_iter().map(|s| descend(w, s)).collect();
    }
    let chunk = starts.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || part.iter().map(|&s| descend(w, s)).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("descent worker panicked"))
            .collect()
    })
}

struct Spectrum {
    eigenvalues: Vec<Eigenvalue>,
    exact: bool,
    /// Exact eigenspaces, when available, aligned with `eigenvalues`.
    spaces: Vec<Vec<Vector>>,
    degenerate_gap: Option<f64>,
}

fn spectrum(w6: &Matrix) -> Spectrum {
    let eig = sym_eigen_numeric(w6, crate::ratmath::eigen::DEFAULT_TOL)
        .expect("Weyl operator is symmetric");
    let scale = eig.values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for &x in &eig.values {
        match clusters.last_mut() {
            Some(c) if x - c[c.len() - 1] < DEGENERATE_GAP * scale => c.push(x),
            _ => clusters.push(vec![x]),
        }
    }
    // exact attempt: rationalize each cluster centre and verify the nullity
    let mut exact = Vec::new();
    let mut spaces = Vec::new();
    for c in &clusters {
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        let Some(r) = Rational::approximate(mean, RATIONALIZE_BOUND) else {
            break;
        };
        let kernel = w6.sub(&Matrix::identity(6).scale(&r)).kernel();
        if kernel.len() != c.len() {
            break;
        }
        exact.push(Eigenvalue::Exact {
            value: r,
            multiplicity: c.len(),
        });
        spaces.push(kernel);
    }
    if exact.len() == clusters.len() {
        return Spectrum {
            eigenvalues: exact,
            exact: true,
            spaces,
            degenerate_gap: None,
        };
    }
    let mut degenerate_gap = None;
    for c in clusters.iter().filter(|c| c.len() > 1) {
        let gap = c.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
        degenerate_gap = Some(degenerate_gap.map_or(gap, |g: f64| g.max(gap)));
    }
    let eigenvalues = clusters
        .iter()
        .map(|c| Eigenvalue::Numeric {
            value: c.iter().sum::<f64>() / c.len() as f64,
            multiplicity: c.len(),
        })
        .collect();
    Spectrum {
        eigenvalues,
        exact: false,
        spaces: Vec::new(),
        degenerate_gap,
    }
}

fn multiplicity_pattern(eigenvalues: &[Eigenvalue]) -> Vec<usize> {
    let mut m: Vec<usize> = eigenvalues.iter().map(Eigenvalue::multiplicity).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

/// Decomposable bivectors in a 2-dimensional exact subspace of `Λ²`, found
/// by solving the Plücker quadric `ω01 ω23 - ω02 ω13 + ω03 ω12 = 0`.
fn decomposable_in(space: &[Vector]) -> Vec<Vector> {
    if space.len() != 2 {
        return Vec::new();
    }
    let plucker = |a: &Vector, b: &Vector| {
        // symmetric bilinear form of the quadric
        let half = Rational::new(1, 2);
        (&a[0] * &b[5] + &a[5] * &b[0] - &a[1] * &b[4] - &a[4] * &b[1]
            + &a[2] * &b[3]
            + &a[3] * &b[2])
            * half
    };
    let (x, y) = (&space[0], &space[1]);
    // Q(s x + t y) = A s² + 2B st + C t²
    let (a, b, c) = (plucker(x, x), plucker(x, y), plucker(y, y));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    if a.is_zero() {
        out.push(x.clone());
        // remaining root: 2B s + C t = 0
        if !b.is_zero() {
            let s = -&c / (&b * Rational::from_integer(2));
            out.push(linalg::add(&linalg::scale(x, &s), y));
        }
        return out;
    }
    // A s² + 2B s + C = 0 with t = 1
    let disc = &b * &b - &a * &c;
    if let Some(root) = disc.sqrt_exact() {
        for sign in [1, -1] {
            let s = (-&b + &root * Rational::from_integer(sign)) / &a;
            let v = linalg::add(&linalg::scale(x, &s), y);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// The 2-plane `{x : x ∧ ω = 0}` of a decomposable bivector, as two exact
/// spanning vectors.
fn plane_of(omega: &[Rational]) -> Option<[Vector; 2]> {
    let mut m = Matrix::zeros(4, 4);
    for (k, &(i, j)) in BIVECTOR_BASIS.iter().enumerate() {
        m[(i, j)] = omega[k].clone();
        m[(j, i)] = -&omega[k];
    }
    let mut basis: Vec<Vector> = Vec::new();
    for i in 0..4 {
        let row = linalg::primitive(m.row(i));
        if linalg::is_zero_vector(&row) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(row.clone());
        if Matrix::from_columns(&trial).rank() == trial.len() {
            basis = trial;
        }
        if basis.len() == 2 {
            return Some([basis[0].clone(), basis[1].clone()]);
        }
    }
    None
}

fn certify_plane(w6: &Matrix, basis: [Vector; 2]) -> Option<PlaneCertificate> {
    let (u, w) = (&basis[0], &basis[1]);
    let samples = vec![
        u.clone(),
        w.clone(),
        linalg::add(u, w),
        linalg::sub(u, w),
        linalg::add(u, &linalg::scale(w, &Rational::from_integer(2))),
    ];
    samples
        .iter()
        .all(|s| check_on_operator(w6, s))
        .then_some(PlaneCertificate { basis, samples })
}

/// Classify a four-dimensional Weyl tensor, fanning the descent out over the
/// available cores.
pub fn weyl_type(w: &TensorTable) -> Result<WeylType, FlagError> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(8);
    weyl_type_with(w, workers)
}

pub fn weyl_type_with(w: &TensorTable, workers: usize) -> Result<WeylType, FlagError> {
    check_weyl_symmetries(w)?;
    let w6 = operator(w);
    if w6.is_zero() {
        return Ok(WeylType {
            tag: WeylTag::D,
            eigenvalues: vec![Eigenvalue::Exact {
                value: Rational::zero(),
                multiplicity: 6,
            }],
            multiplicities_exact: true,
            flags: Vec::new(),
            planes: Vec::new(),
            search: None,
            note: Some("all directions are eigenflags".into()),
        });
    }
    let spectral = spectrum(&w6);

    let op = operator_f64(&w6);
    let ends = run_descents(&op, workers);
    let stats = DescentStats {
        starts: ends.len(),
        converged: ends.iter().filter(|e| e.defect <= NO_FLAG_FLOOR).count(),
        min_defect: ends.iter().map(|e| e.defect).fold(f64::INFINITY, f64::min),
        max_defect: ends.iter().map(|e| e.defect).fold(0.0, f64::max),
        iterations: ends.iter().map(|e| e.iterations).sum(),
    };

    let mut candidates: Vec<Vector> = (0..4).map(|i| linalg::basis_vector(4, i)).collect();
    candidates.extend(
        ends.iter()
            .filter(|e| e.defect <= NO_FLAG_FLOOR)
            .filter_map(|e| rationalize_direction(&e.point)),
    );
    let mut flags: Vec<Vector> = Vec::new();
    for c in candidates {
        let c = linalg::primitive(&c);
        if !flags.contains(&c) && check_on_operator(&w6, &c) {
            flags.push(c);
        }
    }

    let pattern = multiplicity_pattern(&spectral.eigenvalues);
    let mut planes = Vec::new();
    let mut note = None;
    let tag = if let Some(gap) = spectral.degenerate_gap {
        note = Some(format!(
            "eigenvalues within {gap:e} could not be separated or confirmed equal"
        ));
        WeylTag::Inconclusive
    } else if flags.is_empty() {
        if stats.converged == 0 {
            note = Some(format!(
                "numeric verdict: all {} descents ended above {NO_FLAG_FLOOR:e}",
                stats.starts
            ));
            WeylTag::A
        } else {
            note = Some("numeric minimizers found but none certified exactly".into());
            WeylTag::Inconclusive
        }
    } else if pattern == [2, 2, 2] {
        if flags.len() != 4 {
            note = Some(format!(
                "expected four eigenflag directions, certified {}",
                flags.len()
            ));
        }
        WeylTag::B
    } else if pattern == [4, 2] {
        let two = spectral
            .eigenvalues
            .iter()
            .position(|e| e.multiplicity() == 2)
            .and_then(|k| spectral.spaces.get(k));
        if let Some(space) = two {
            for omega in decomposable_in(space) {
                if let Some(cert) = plane_of(&omega).and_then(|b| certify_plane(&w6, b)) {
                    planes.push(cert);
                }
            }
        }
        if planes.len() != 2 {
            note = Some(format!(
                "certified {} of the two eigenflag planes",
                planes.len()
            ));
        }
        WeylTag::C
    } else {
        note = Some(format!(
            "eigenflags exist but multiplicities {pattern:?} fit neither B nor C"
        ));
        WeylTag::Inconclusive
    };

    // Directions inside a certified plane are described by the plane.
    flags.retain(|v| {
        !planes.iter().any(|p| {
            Matrix::from_columns(&[p.basis[0].clone(), p.basis[1].clone(), v.clone()]).rank() == 2
        })
    });
    // Descending order puts frame directions in frame order.
    flags.sort_by(|a, b| b.cmp(a));
    for p in &mut planes {
        p.basis.sort_by(|a, b| b.cmp(a));
    }
    planes.sort_by(|a, b| b.basis.cmp(&a.basis));
    Ok(WeylType {
        tag,
        eigenvalues: spectral.eigenvalues,
        multiplicities_exact: spectral.exact,
        flags: flags
            .into_iter()
            .map(|direction| FlagCertificate::Exact { direction })
            .collect(),
        planes,
        search: Some(stats),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{fixtures, weyl, LieAlgebra};
    use crate::ratmath::linalg::int_vector;
    use crate::ratmath::rational::qi;

    fn w_b() -> TensorTable {
        weyl(&fixtures::weyl_type_b()).unwrap()
    }

    fn w_c() -> TensorTable {
        weyl(&fixtures::weyl_type_c()).unwrap()
    }

    #[test]
    fn check_4d_examples() {
        assert!(eigenflag_check_4d(&w_b(), &int_vector(&[1, 0, 0, 0])).unwrap());
        assert!(!eigenflag_check_4d(&w_c(), &int_vector(&[1, 0, 1, 0])).unwrap());
        assert!(eigenflag_check_4d(&w_c(), &int_vector(&[2, -3, 0, 0])).unwrap());
        let zero = TensorTable::zeros(4, 4);
        assert!(eigenflag_check_4d(&zero, &int_vector(&[1, 2, 3, 4])).unwrap());
        assert_eq!(
            eigenflag_check_4d(&zero, &int_vector(&[0, 0, 0, 0])),
            Err(FlagError::ZeroVector)
        );
    }

    #[test]
    fn rejects_non_weyl_tensor() {
        let mut t = TensorTable::zeros(4, 4);
        t.set(&[0, 1, 0, 1], qi(1));
        assert!(matches!(
            eigenflag_check_4d(&t, &int_vector(&[1, 0, 0, 0])),
            Err(FlagError::NotWeylSymmetric(_))
        ));
    }

    #[test]
    fn defect_examples() {
        assert!(flag_defect_4d(&w_b(), &[1.0, 0.0, 0.0, 0.0]).unwrap() <= 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(flag_defect_4d(&w_c(), &[h, 0.0, h, 0.0]).unwrap() > 1e-3);
        assert_eq!(
            flag_defect_4d(&TensorTable::zeros(4, 4), &[0.5, 0.5, 0.5, 0.5]).unwrap(),
            0.0
        );
        assert!(matches!(
            flag_defect_4d(&w_b(), &[1.0, 1.0, 0.0, 0.0]),
            Err(FlagError::NotUnit(_))
        ));
    }

    #[test]
    fn halton_starts_are_unit_and_distinct() {
        let s = halton_sphere_starts(64);
        assert_eq!(s.len(), 64);
        for p in &s {
            assert!((p.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_ne!(s[0], s[1]);
    }

    #[test]
    fn type_b_has_frame_flags() {
        let t = weyl_type(&w_b()).unwrap();
        assert_eq!(t.tag, WeylTag::B);
        assert!(t.multiplicities_exact);
        let dirs: Vec<Vector> = t
            .flags
            .iter()
            .filter_map(|f| f.exact_direction().cloned())
            .collect();
        let expected: Vec<Vector> = (0..4).map(|i| linalg::basis_vector(4, i)).collect();
        assert_eq!(dirs, expected);
        assert!(t.note.is_none());
    }

    #[test]
    fn type_c_planes() {
        let t = weyl_type(&w_c()).unwrap();
        assert_eq!(t.tag, WeylTag::C);
        assert_eq!(t.planes.len(), 2);
        let spans: Vec<Matrix> = t
            .planes
            .iter()
            .map(|p| Matrix::from_columns(&p.basis))
            .collect();
        let e = |i| linalg::basis_vector(4, i);
        let in_span = |m: &Matrix, v: Vector| {
            let mut cols: Vec<Vector> = (0..2).map(|k| m.column(k)).collect();
            cols.push(v);
            Matrix::from_columns(&cols).rank() == 2
        };
        assert!(spans.iter().any(|m| in_span(m, e(0)) && in_span(m, e(1))));
        assert!(spans.iter().any(|m| in_span(m, e(2)) && in_span(m, e(3))));
    }

    #[test]
    fn type_c_sampled_directions() {
        let w6 = operator(&w_c());
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a == 0 && b == 0 {
                    continue;
                }
                assert!(check_on_operator(&w6, &int_vector(&[a, b, 0, 0])));
                assert!(check_on_operator(&w6, &int_vector(&[0, 0, a, b])));
                if a != 0 && b != 0 {
                    assert!(!check_on_operator(&w6, &int_vector(&[a, 0, b, 0])));
                    assert!(!check_on_operator(&w6, &int_vector(&[a, 1, 0, b])));
                }
            }
        }
    }

    #[test]
    fn abelian_is_type_d() {
        let w = weyl(&LieAlgebra::load(4, &[], false).unwrap()).unwrap();
        assert_eq!(weyl_type(&w).unwrap().tag, WeylTag::D);
    }

    #[test]
    fn defect_vanishes_exactly_at_certified_flags() {
        for w in [w_b(), w_c()] {
            let t = weyl_type(&w).unwrap();
            let w6 = operator(&w);
            for f in &t.flags {
                let d = f.exact_direction().unwrap();
                let v = linalg::to_f64_vector(d);
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let u: Vec<f64> = v.iter().map(|x| x / n).collect();
                assert!(flag_defect_4d(&w, &u).unwrap() <= 1e-12);
                assert!(check_on_operator(&w6, d));
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let one = weyl_type_with(&w_c(), 1).unwrap();
        let many = weyl_type_with(&w_c(), 5).unwrap();
        assert_eq!(one, many);
    }
}
