use serde::{Deserialize, Serialize};

use super::{lcw_conditions, CkField, CkfError, ConformalMove, LcwFamily};
use crate::ratmath::linalg::{self, Matrix, Vector};
use crate::ratmath::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub family: LcwFamily,
    /// Moves applied left to right; the result is `family.field()`.
    pub chain: Vec<ConformalMove>,
}

pub fn orbit_of_family(id: u8) -> u8 {
    match id {
        1 | 4 => 1,
        2 | 6 => 2,
        3 | 5 => 3,
        _ => panic!("family id {id} out of range"),
    }
}

struct Tracker {
    field: CkField,
    chain: Vec<ConformalMove>,
}

impl Tracker {
    /// Consecutive translations are merged, and dropped when they cancel.
    fn translate(&mut self, x0: Vector) {
        let m = ConformalMove::Translation { x0: x0.clone() };
        self.field = m.apply(&self.field);
        if let Some(ConformalMove::Translation { x0: prev }) = self.chain.last() {
            let merged = linalg::add(prev, &x0);
            self.chain.pop();
            if !linalg::is_zero_vector(&merged) {
                self.chain.push(ConformalMove::Translation { x0: merged });
            }
        } else {
            self.chain.push(m);
        }
    }
}

fn fail(msg: &str) -> CkfError {
    CkfError::NotReducible(msg.to_string())
}

/// Bring a tuple satisfying the weight conditions to one of the six normal
/// forms using translations only; the affine scale absorbs `c` in the
/// logarithmic case.
pub fn reduce_to_family(x: &CkField) -> Result<Reduction, CkfError> {
    if !lcw_conditions(x).pass {
        return Err(CkfError::NotLcw);
    }
    let n = x.dim();
    let mut t = Tracker {
        field: x.clone(),
        chain: Vec::new(),
    };

    let family = if linalg::is_zero_vector(t.field.alpha()) {
        reduce_without_alpha(&mut t, n)?
    } else {
        reduce_with_alpha(&mut t, n)?
    };

    let replay = t.chain.iter().fold(x.clone(), |acc, m| m.apply(&acc));
    if replay != family.field() {
        return Err(fail("replayed chain does not reach the normal form"));
    }
    Ok(Reduction {
        family,
        chain: t.chain,
    })
}

fn reduce_without_alpha(t: &mut Tracker, n: usize) -> Result<LcwFamily, CkfError> {
    let c = t.field.c().clone();
    if t.field.b().is_zero() {
        if c.is_zero() {
            return LcwFamily::linear(t.field.gamma().to_vec());
        }
        let x0 = linalg::scale(t.field.gamma(), &c.recip().unwrap());
        if !linalg::is_zero_vector(&x0) {
            t.translate(x0);
        }
        return LcwFamily::logarithmic(n).with_affine(c.recip().unwrap(), Rational::zero());
    }
    if !c.is_zero() {
        return Err(fail("c and B both nonzero with alpha = 0"));
    }
    if linalg::is_zero_vector(t.field.gamma()) {
        let b = t.field.b();
        let i = (0..n)
            .find(|&i| !linalg::is_zero_vector(&b.column(i)))
            .ok_or_else(|| fail("B vanishes"))?;
        let mut x0 = linalg::zero_vector(n);
        x0[i] = -Rational::one();
        t.translate(x0);
    }
    let gamma = t.field.gamma().to_vec();
    let gg = linalg::norm_sq(&gamma);
    let sigma = linalg::scale(&t.field.b().mul_vec(&gamma), &-gg.recip().unwrap());
    if *t.field.b() != Matrix::wedge(&gamma, &sigma) {
        return Err(fail("B is not of the form gamma ∧ sigma"));
    }
    let ss = linalg::norm_sq(&sigma);
    t.translate(linalg::scale(&sigma, &ss.recip().unwrap()));
    if !linalg::is_zero_vector(t.field.gamma()) {
        return Err(fail("translation did not clear gamma"));
    }
    LcwFamily::angular(gamma, sigma)
}

fn reduce_with_alpha(t: &mut Tracker, n: usize) -> Result<LcwFamily, CkfError> {
    let alpha = t.field.alpha().to_vec();
    let aa = linalg::norm_sq(&alpha);
    let aa_inv = aa.recip().unwrap();
    if !t.field.c().is_zero() {
        let x0 = linalg::scale(&alpha, &(t.field.c() * &aa_inv));
        t.translate(x0);
    }
    if linalg::is_zero_vector(t.field.gamma()) {
        let x0 = auxiliary_offset(&t.field, &alpha, &aa_inv, n)?;
        t.translate(x0);
    }
    let gamma = t.field.gamma().to_vec();
    let r = linalg::dot(&gamma, &alpha) * &aa_inv;
    if gamma != linalg::scale(&alpha, &r) {
        return Err(fail("gamma is not parallel to alpha"));
    }
    let sigma = linalg::scale(&t.field.b().mul_vec(&alpha), &-&aa_inv);
    if *t.field.b() != Matrix::wedge(&alpha, &sigma) {
        return Err(fail("B is not of the form alpha ∧ sigma"));
    }
    let s_half = &r + linalg::norm_sq(&sigma) * Rational::new(1, 2);
    if !linalg::is_zero_vector(&sigma) {
        t.translate(linalg::scale(&sigma, &-Rational::one()));
    }
    let two = Rational::from_integer(2);
    match s_half.signum() {
        1 => LcwFamily::spherical_arctan(alpha, s_half * two),
        0 => LcwFamily::inverse_linear(alpha),
        _ => LcwFamily::spherical_arctanh(alpha, -s_half * two),
    }
}

/// `-k·u` with `u` the first basis vector projected onto `α^⊥` that is
/// nonzero, and `k = 1, 2, …` the first scale making the new `γ` nonzero.
fn auxiliary_offset(
    x: &CkField,
    alpha: &[Rational],
    aa_inv: &Rational,
    n: usize,
) -> Result<Vector, CkfError> {
    let u = (0..n)
        .map(|i| {
            let e = linalg::basis_vector(n, i);
            let k = &alpha[i] * aa_inv;
            linalg::sub(&e, &linalg::scale(alpha, &k))
        })
        .find(|u| !linalg::is_zero_vector(u))
        .ok_or_else(|| fail("alpha has no orthogonal complement"))?;
    let uu = linalg::norm_sq(&u);
    let bu = x.b().mul_vec(&u);
    for k in 1..=3i64 {
        let k = Rational::from_integer(k);
        let half_k2 = &k * &k * &uu * Rational::new(1, 2);
        let candidate: Vector = (0..n).map(|i| &k * &bu[i] - &half_k2 * &alpha[i]).collect();
        if !linalg::is_zero_vector(&candidate) {
            return Ok(linalg::scale(&u, &-k));
        }
    }
    Err(fail("no auxiliary translation found"))
}

pub fn orbit_class(x: &CkField) -> Result<u8, CkfError> {
    Ok(reduce_to_family(x)?.family.orbit())
}
