//! Parallel grid scan over diagonal unimodular brackets
//! `[e0,e1] = l3 e2`, `[e1,e2] = l1 e0`, `[e2,e0] = l2 e1`.

use clap::ValueEnum;
use lcwlab_core::dist::{is_integrable, is_umbilical, Distribution};
use lcwlab_core::flags::{eigenflag_find_3d, FlagCertificate, FlagSearch3d};
use lcwlab_core::liealg::{cotton_york_closed_form_3d, LieAlgebra};
use lcwlab_core::ratmath::{Matrix, Rational, Vector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    DetcyZero,
    EigenflagExists,
    EigenflagWithoutLcw,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::DetcyZero => "detcy-zero",
            Predicate::EigenflagExists => "eigenflag-exists",
            Predicate::EigenflagWithoutLcw => "eigenflag-without-lcw",
        }
    }
}

/// Closed range `lo:hi:step`; a bare value is a one-point range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range {
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
}

impl Range {
    pub fn parse(flag: &str, s: &str) -> Result<Self, CliError> {
        let field = |e: &dyn std::fmt::Display| CliError::field(flag, e);
        let parts: Vec<&str> = s.split(':').collect();
        let (lo, hi, step) = match parts.as_slice() {
            [v] => (
                v.parse().map_err(|e| field(&e))?,
                v.parse().map_err(|e| field(&e))?,
                Rational::one(),
            ),
            [lo, hi, step] => (
                lo.parse().map_err(|e| field(&e))?,
                hi.parse().map_err(|e| field(&e))?,
                step.parse().map_err(|e| field(&e))?,
            ),
            _ => return Err(field(&"expected lo:hi:step")),
        };
        if !step.is_positive() {
            return Err(field(&"step must be positive"));
        }
        if hi < lo {
            return Err(field(&"empty range: hi < lo"));
        }
        Ok(Range { lo, hi, step })
    }

    pub fn values(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            out.push(x.clone());
            x = &x + &self.step;
        }
        out
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub ranges: [Range; 3],
    pub predicate: Predicate,
}

impl SweepSpec {
    pub fn parse(l1: &str, l2: &str, l3: &str, predicate: Predicate) -> Result<Self, CliError> {
        Ok(SweepSpec {
            ranges: [
                Range::parse("l1", l1)?,
                Range::parse("l2", l2)?,
                Range::parse("l3", l3)?,
            ],
            predicate,
        })
    }

    /// Grid points in enumeration order, `l3` varying fastest.
    pub fn grid(&self) -> Vec<[Rational; 3]> {
        let [a, b, c] = self.ranges.each_ref().map(Range::values);
        let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
        for x in &a {
            for y in &b {
                for z in &c {
                    out.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagCheck {
    pub direction: Vector,
    pub integrable: bool,
    /// Tangent bracket and its component along the flag when not integrable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<(Vector, Rational)>,
    pub umbilical: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub index: usize,
    pub lambda: [Rational; 3],
    pub cy: [Rational; 3],
    pub det_cy: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flags: Option<FlagSearch3d>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<FlagCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Findings {
    pub predicate: Predicate,
    pub l1: String,
    pub l2: String,
    pub l3: String,
    pub points: usize,
    pub matches: Vec<Finding>,
}

impl Findings {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("findings hold finite values");
        s.push('\n');
        s
    }
}

fn flag_checks(
    alg: &LieAlgebra,
    certs: &[FlagCertificate],
) -> Result<Option<Vec<FlagCheck>>, CliError> {
    let mut out = Vec::with_capacity(certs.len());
    for c in certs {
        let Some(v) = c.exact_direction() else {
            return Ok(None);
        };
        let d = Distribution::orthogonal_to(v).map_err(|e| CliError::Validation(e.to_string()))?;
        let integ = is_integrable(alg, &d).map_err(|e| CliError::Validation(e.to_string()))?;
        let umb = is_umbilical(alg, &d).map_err(|e| CliError::Validation(e.to_string()))?;
        out.push(FlagCheck {
            direction: v.clone(),
            integrable: integ.integrable,
            witness: integ.witness.map(|w| (w.bracket, w.normal_component)),
            umbilical: umb.umbilical,
        });
    }
    Ok(Some(out))
}

/// Evaluate one grid point; `None` when the predicate does not hold. The
/// Cotton-York tensor is diagonal here, so its determinant is the product
/// of the closed-form diagonal.
pub fn evaluate(
    index: usize,
    lambda: &[Rational; 3],
    predicate: Predicate,
) -> Result<Option<Finding>, CliError> {
    let [l1, l2, l3] = lambda;
    let diag = cotton_york_closed_form_3d(l1, l2, l3);
    let det = &diag[0] * &diag[1] * &diag[2];
    let mut finding = Finding {
        index,
        lambda: lambda.clone(),
        cy: diag.clone(),
        det_cy: det.clone(),
        flags: None,
        checks: Vec::new(),
    };
    if predicate == Predicate::DetcyZero {
        return Ok(det.is_zero().then_some(finding));
    }
    if !det.is_zero() {
        return Ok(None);
    }
    let cy = Matrix::diagonal(&diag);
    let search = eigenflag_find_3d(&cy).map_err(|e| CliError::Validation(e.to_string()))?;
    if !search.exists() {
        return Ok(None);
    }
    if predicate == Predicate::EigenflagWithoutLcw {
        // With CY = 0 every direction is a flag and nothing is ruled out.
        if matches!(search, FlagSearch3d::AllDirections) {
            return Ok(None);
        }
        let alg = LieAlgebra::unimodular_3d(l1.clone(), l2.clone(), l3.clone());
        let Some(checks) = flag_checks(&alg, search.certificates())? else {
            return Ok(None);
        };
        if checks.iter().any(|c| c.integrable && c.umbilical) {
            return Ok(None);
        }
        finding.checks = checks;
    }
    finding.flags = Some(search);
    Ok(Some(finding))
}

/// Split the grid into contiguous chunks over `workers` threads and gather
/// the matches in grid order.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<Findings, CliError> {
    if workers == 0 {
        return Err(CliError::Validation("workers must be at least 1".into()));
    }
    let grid = spec.grid();
    let chunk = grid.len().div_ceil(workers).max(1);
    let predicate = spec.predicate;
    let results: Vec<Result<Vec<Finding>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .enumerate()
            .map(|(c, points)| {
                scope.spawn(move || {
                    let mut found = Vec::new();
                    for (offset, lambda) in points.iter().enumerate() {
                        if let Some(f) = evaluate(c * chunk + offset, lambda, predicate)? {
                            found.push(f);
                        }
                    }
                    Ok(found)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut matches = Vec::new();
    for r in results {
        matches.extend(r?);
    }
    matches.sort_by_key(|f| f.index);
    let [l1, l2, l3] = spec.ranges.each_ref().map(Range::to_string);
    Ok(Findings {
        predicate,
        l1,
        l2,
        l3,
        points: grid.len(),
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcwlab_core::ratmath::qi;

    fn lambdas(f: &Findings) -> Vec<[i64; 3]> {
        f.matches
            .iter()
            .map(|m| {
                m.lambda
                    .each_ref()
                    .map(|x| x.to_string().parse::<i64>().unwrap())
            })
            .collect()
    }

    #[test]
    fn ranges() {
        let r = Range::parse("l1", "-1/2:1:1/2").unwrap();
        assert_eq!(r.values().len(), 4);
        assert_eq!(Range::parse("l1", "3").unwrap().values(), vec![qi(3)]);
        assert!(Range::parse("l1", "2:1:1").is_err());
        assert!(Range::parse("l1", "0:1:0").is_err());
        assert!(Range::parse("l1", "0:1:0.5")
            .unwrap_err()
            .to_string()
            .contains("decimals forbidden"));
    }

    #[test]
    fn det_zero_grid_matches_closed_form_count() {
        // 29 zeros of det CY on {-2..2}^3, from the closed-form oracle.
        let spec = SweepSpec::parse("-2:2:1", "-2:2:1", "-2:2:1", Predicate::DetcyZero).unwrap();
        let f = run_sweep(&spec, 3).unwrap();
        assert_eq!(f.points, 125);
        assert_eq!(f.matches.len(), 29);
        assert!(lambdas(&f).contains(&[1, 1, 1]));
        let spec = SweepSpec {
            predicate: Predicate::EigenflagExists,
            ..spec
        };
        assert_eq!(run_sweep(&spec, 2).unwrap().matches.len(), 29);
        let spec = SweepSpec {
            predicate: Predicate::EigenflagWithoutLcw,
            ..spec
        };
        assert!(run_sweep(&spec, 2).unwrap().matches.is_empty());
    }

    #[test]
    fn single_point_without_flags() {
        let spec = SweepSpec::parse("1", "2", "3", Predicate::EigenflagWithoutLcw).unwrap();
        let f = run_sweep(&spec, 4).unwrap();
        assert_eq!(f.points, 1);
        assert!(f.matches.is_empty());
    }

    #[test]
    fn neighbourhood_of_example() {
        let spec =
            SweepSpec::parse("4:6:1", "-4:-2:1", "3:5:1", Predicate::EigenflagWithoutLcw).unwrap();
        let f = run_sweep(&spec, 5).unwrap();
        assert_eq!(lambdas(&f), vec![[6, -4, 5]]);
        let m = &f.matches[0];
        assert_eq!(m.checks.len(), 2);
        assert!(m.checks.iter().all(|c| !c.integrable));
    }
}
