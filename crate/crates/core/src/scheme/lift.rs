//! Lifting a partial branch one level up the chain by matching the simple
//! roots of the univariate slices.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{compose_slice, Assignment, JetPoly, PuiseuxJet};
use crate::puiseux::{jet_branches, Branch, SimplicityCertificate};

use super::chain::ChainLevel;

/// Jets of the simple small roots of one slice equation.
#[derive(Clone, Debug, PartialEq)]
pub struct JetSet {
    /// 1-based equation index within the level.
    pub equation: usize,
    pub jets: Vec<PuiseuxJet>,
    /// Order at which the jets were compared.
    pub t: Rational64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityStatus {
    Regular,
    Ambiguous,
    Empty,
    DegenerateEdge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub level: usize,
    pub status: RegularityStatus,
    pub matched: Option<PuiseuxJet>,
    /// The common jets when ambiguous.
    pub witnesses: Vec<PuiseuxJet>,
    /// Per-equation jet sets when empty or ambiguous.
    pub jet_sets: Vec<JetSet>,
    pub t: Rational64,
    /// Decided by the multiple-vertex shortcut.
    pub shortcut: bool,
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub report: RegularityReport,
    /// The new coordinate `v_k` with its certificate, when regular.
    pub component: Option<(PuiseuxJet, SimplicityCertificate)>,
}

/// The slices `S̃_k[j](partial, y)` in `y = v_k`; `partial[i]` is `v_i` for
/// `1 ≤ i < k` (slot 0 unused).
pub fn slices(level: &ChainLevel, partial: &[PuiseuxJet]) -> Result<Vec<JetPoly>> {
    let k = level.k;
    let assignment: Assignment = (1..k).map(|i| (i, partial[i].clone())).collect();
    level
        .regularized
        .equations()
        .iter()
        .map(|f| compose_slice(f, &assignment, k))
        .collect()
}

fn simple_jets(branches: &[Branch]) -> Vec<(PuiseuxJet, SimplicityCertificate)> {
    branches
        .iter()
        .filter(|b| b.is_simple())
        .map(|b| (b.jet.clone(), b.certificate.clone().expect("simple")))
        .collect()
}

/// Shortcut: when every slice indexed by a multiple vertex of
/// the level's tree has exactly one small root and it is simple, that root
/// is the lift. Returns `None` when the condition does not hold.
pub fn check_mu_shortcut(
    level: &ChainLevel,
    slices: &[JetPoly],
    order: Rational64,
    work: Rational64,
    prec: u32,
) -> Result<Option<Lift>> {
    let Some(tree) = &level.tree else {
        return Ok(None);
    };
    let mu = tree.multiple_vertices();
    if mu.is_empty() {
        return Ok(None);
    }
    let mut found: Vec<(PuiseuxJet, SimplicityCertificate)> = Vec::new();
    for &j in &mu {
        let branches = jet_branches(&slices[j - 1], work, prec)?;
        let count: usize = branches.iter().map(|b| b.multiplicity).sum();
        let simple = simple_jets(&branches);
        if count != 1 || simple.len() != 1 || simple[0].0.trunc() < crate::polycore::Order::At(order) {
            return Ok(None);
        }
        found.push(simple[0].clone());
    }
    if found.windows(2).any(|w| !w[0].0.agree_to(&w[1].0, order)) {
        return Ok(None);
    }
    let (jet, cert) = found.swap_remove(0);
    Ok(Some(Lift {
        report: RegularityReport {
            level: level.k,
            status: RegularityStatus::Regular,
            matched: Some(jet.clone()),
            witnesses: Vec::new(),
            jet_sets: Vec::new(),
            t: order,
            shortcut: true,
        },
        component: Some((jet, cert)),
    }))
}

/// Finds the unique common simple root of all slices at level `k`.
///
/// Jets are expanded to the working order `work`; they are compared at an
/// order `t` starting from the largest defining order of the slice jets and
/// doubling up to `order`. An error `TruncationUnderflow` asks the caller
/// for a larger working order.
pub fn lift_branch(
    level: &ChainLevel,
    partial: &[PuiseuxJet],
    order: Rational64,
    work: Rational64,
    prec: u32,
    use_shortcut: bool,
) -> Result<Lift> {
    let slices = slices(level, partial)?;
    if use_shortcut {
        if let Some(lift) = check_mu_shortcut(level, &slices, order, work, prec)? {
            return Ok(lift);
        }
    }
    let mut all: Vec<Vec<Branch>> = Vec::with_capacity(slices.len());
    for s in &slices {
        all.push(jet_branches(s, work, prec)?);
    }
    let sets: Vec<Vec<(PuiseuxJet, SimplicityCertificate)>> = all.iter().map(|b| simple_jets(b)).collect();
    let max_order = sets
        .iter()
        .flatten()
        .map(|(_, c)| c.order)
        .max()
        .unwrap_or_else(|| Rational64::from_integer(0));
    let one = Rational64::from_integer(1);
    let mut t = max_order.max(one).min(order);
    loop {
        let short = all
            .iter()
            .flatten()
            .any(|b| b.jet.trunc() < crate::polycore::Order::At(t));
        if short {
            return Err(Error::TruncationUnderflow { required: t });
        }
        let common: Vec<&(PuiseuxJet, SimplicityCertificate)> = sets[0]
            .iter()
            .filter(|(a, _)| sets[1..].iter().all(|s| s.iter().any(|(b, _)| a.agree_to(b, t))))
            .collect();
        let jet_sets = || {
            sets.iter()
                .enumerate()
                .map(|(j, s)| JetSet { equation: j + 1, jets: s.iter().map(|x| x.0.clone()).collect(), t })
                .collect::<Vec<_>>()
        };
        let report = |status, matched, witnesses, jet_sets| RegularityReport {
            level: level.k,
            status,
            matched,
            witnesses,
            jet_sets,
            t,
            shortcut: false,
        };
        match common.len() {
            1 => {
                let (jet, cert) = common[0].clone();
                return Ok(Lift {
                    report: report(RegularityStatus::Regular, Some(jet.clone()), Vec::new(), Vec::new()),
                    component: Some((jet, cert)),
                });
            }
            0 => {
                return Ok(Lift {
                    report: report(RegularityStatus::Empty, None, Vec::new(), jet_sets()),
                    component: None,
                })
            }
            _ if t >= order => {
                let witnesses = common.iter().map(|x| x.0.clone()).collect();
                return Ok(Lift {
                    report: report(RegularityStatus::Ambiguous, None, witnesses, jet_sets()),
                    component: None,
                });
            }
            _ => t = (t * 2).min(order),
        }
    }
}
