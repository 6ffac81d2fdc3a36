//! Detection of positive-dimensional families of small solutions from the
//! GCD degrees along the pairwise-resultant chain.

use std::fmt;

use crate::elimination::{classical_resultant_system, gcd_report, GcdReport};
use crate::error::Result;
use crate::polycore::{regularize, MultiPoly, PolySystem, UniView};

use super::chain::normalize_system;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// Finitely many small solutions.
    Finite,
    NoSmallSolutions,
    /// A common factor with small zeros appears when eliminating `x_level`.
    Family { level: usize },
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyVerdict::Finite => write!(f, "finite"),
            FamilyVerdict::NoSmallSolutions => write!(f, "no small solutions"),
            FamilyVerdict::Family { level } => write!(f, "positive-dimensional family at level {level}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    /// `(level, report)` from the top level down.
    pub levels: Vec<(usize, GcdReport)>,
    pub verdict: FamilyVerdict,
}

fn single_report(f: &MultiPoly, var: usize) -> GcdReport {
    let degree = f.degree_in(var);
    if degree == 0 {
        return GcdReport { degree: 0, witness: None, small_degree: 0 };
    }
    let w = f.primitive_part_in(var).integer_primitive();
    let axis = w.restrict_to(var);
    let small_degree = if axis.is_zero() { degree } else { axis.valuation_in(var).unwrap_or(0) };
    GcdReport { degree, witness: Some(w), small_degree }
}

/// Runs the GCD degree tests level by level.
pub fn detect_families(system: &PolySystem) -> Result<FamilyReport> {
    let n = system.nvars();
    let mut current = normalize_system(system)?;
    let mut levels = Vec::new();
    for k in (1..=n).rev() {
        if !current.vanishes_at_origin() {
            return Ok(FamilyReport { levels, verdict: FamilyVerdict::NoSmallSolutions });
        }
        let (reg, _) = regularize(&current, k)?;
        let report = if reg.len() == 1 {
            single_report(&reg.equations()[0], k)
        } else {
            let views: Vec<UniView> = reg.equations().iter().map(|f| UniView::new(f, k)).collect();
            gcd_report(&views)?
        };
        levels.push((k, report.clone()));
        if k == 1 {
            let verdict = if report.small_degree > 0 {
                FamilyVerdict::Finite
            } else {
                FamilyVerdict::NoSmallSolutions
            };
            return Ok(FamilyReport { levels, verdict });
        }
        let mut eqs = reg.equations().to_vec();
        if let Some(w) = &report.witness {
            if report.small_degree > 0 {
                return Ok(FamilyReport { levels, verdict: FamilyVerdict::Family { level: k } });
            }
            // the common factor has no zeros near the origin: drop it
            for f in eqs.iter_mut() {
                match f.div_exact(w) {
                    Some(q) => *f = q,
                    None => return Ok(FamilyReport { levels, verdict: FamilyVerdict::Family { level: k } }),
                }
            }
        }
        let reduced = PolySystem::new(eqs)?;
        if reduced.len() == 1 {
            current = PolySystem::new(vec![reduced.equations()[0].truncate_vars(k - 1)])?;
        } else {
            current = classical_resultant_system(&reduced, k)?;
        }
    }
    Ok(FamilyReport { levels, verdict: FamilyVerdict::NoSmallSolutions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(eqs: &[&[(i64, &[u32])]]) -> PolySystem {
        PolySystem::new(eqs.iter().map(|t| MultiPoly::from_int_terms(2, t)).collect()).unwrap()
    }

    #[test]
    fn examples() {
        // {x2 - x1, x2 + x1 - λ}
        let s = sys(&[&[(1, &[0, 0, 1]), (-1, &[0, 1, 0])], &[(1, &[0, 0, 1]), (1, &[0, 1, 0]), (-1, &[1, 0, 0])]]);
        let r = detect_families(&s).unwrap();
        assert_eq!(r.verdict, FamilyVerdict::Finite);
        assert_eq!(r.levels[0].1.degree, 0);

        // {x2 (x2 - λ), x2 (x2 - x1)}
        let s = sys(&[&[(1, &[0, 0, 2]), (-1, &[1, 0, 1])], &[(1, &[0, 0, 2]), (-1, &[0, 1, 1])]]);
        let r = detect_families(&s).unwrap();
        assert_eq!(r.verdict, FamilyVerdict::Family { level: 2 });
        assert_eq!(r.levels[0].1.degree, 1);

        // {x2^2 - λ, x2^2 - 2λ}
        let s = sys(&[&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 2]), (-2, &[1, 0, 0])]]);
        assert_eq!(detect_families(&s).unwrap().verdict, FamilyVerdict::NoSmallSolutions);
    }
}
