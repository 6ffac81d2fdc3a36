//! The solver: eliminate along a tree chain, expand the final scalar
//! equation, lift each simple branch level by level and verify.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::polycore::{Coeff, Order, PolySystem, PuiseuxJet, DEFAULT_PRECISION};
use crate::puiseux::{puiseux_branches, SimplicityCertificate};

use super::chain::{build_chain, BuiltChain};
use super::families::{detect_families, FamilyVerdict};
use super::lift::{lift_branch, RegularityReport, RegularityStatus};
use super::realness::{classify_realness, RealClass};
use super::trees::TreeChain;
use super::verify::{verify_residuals, Residual};

/// The working order may grow to this multiple of the target order.
const MAX_WORK_FACTOR: i64 = 16;

#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    FirstChain,
    AllChains,
    Explicit(TreeChain),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Target truncation order `T`.
    pub order: Rational64,
    pub strategy: Strategy,
    pub prec: u32,
    /// Use the multiple-vertex shortcut before full matching.
    pub use_shortcut: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            order: Rational64::from_integer(6),
            strategy: Strategy::FirstChain,
            prec: DEFAULT_PRECISION,
            use_shortcut: true,
        }
    }
}

/// Certification of one coordinate of a branch.
#[derive(Clone, Debug)]
pub struct LevelCertificate {
    pub report: RegularityReport,
    pub certificate: SimplicityCertificate,
}

#[derive(Clone, Debug)]
pub struct SolutionBranch {
    /// `x_1..x_n` in the coordinates of the input, truncated at `T`.
    pub components: Vec<PuiseuxJet>,
    /// `levels[k - 1]` certifies level `k`.
    pub levels: Vec<LevelCertificate>,
    pub residuals: Vec<Residual>,
    pub real_class: RealClass,
    /// Prüfer codes of the chains that produced this branch.
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl SolutionBranch {
    /// Common ramification of the components.
    pub fn ram(&self) -> u32 {
        self.components.iter().fold(1, |acc, j| num_integer::lcm(acc, j.ram()))
    }

    pub fn trunc(&self) -> Order {
        self.components.iter().map(|j| j.trunc()).min().unwrap_or(Order::Infinite)
    }

    fn same_jets(&self, other: &SolutionBranch) -> bool {
        self.components.iter().zip(&other.components).all(|(a, b)| a.same_as(b))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiscardReason {
    /// Multiple root of the final scalar equation.
    NotSimple { multiplicity: usize },
    /// No common simple jet at `level`; the base root does not lift.
    Empty(RegularityReport),
    /// Two or more common jets persist at order `T`.
    Ambiguous(RegularityReport),
    /// Residual check failed against the input system.
    Verification(Error),
    /// Not resolved within the working-order cap.
    Unresolved(Error),
}

impl DiscardReason {
    pub fn kind(&self) -> &'static str {
        match self {
            DiscardReason::NotSimple { .. } => "not-simple",
            DiscardReason::Empty(_) => "empty",
            DiscardReason::Ambiguous(_) => "ambiguous",
            DiscardReason::Verification(_) => "verification-failed",
            DiscardReason::Unresolved(_) => "unresolved",
        }
    }
}

impl fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscardReason::NotSimple { multiplicity } => {
                write!(f, "root of multiplicity {multiplicity}: not simple, not effectively computable")
            }
            DiscardReason::Empty(r) => write!(f, "no common simple jet at level {} (t = {})", r.level, r.t),
            DiscardReason::Ambiguous(r) => {
                write!(f, "{} common jets at level {} persist at t = {}", r.witnesses.len(), r.level, r.t)
            }
            DiscardReason::Verification(e) | DiscardReason::Unresolved(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Discard {
    /// The final-level root that was abandoned.
    pub base: PuiseuxJet,
    pub level: usize,
    pub reason: DiscardReason,
    pub chain: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Emitted,
    NoSmallSolutions,
    Family { level: usize },
    /// Nothing emitted and some root lacked a certificate.
    Ambiguous,
}

impl SolveStatus {
    pub fn exit_code(&self) -> i32 {
        match self {
            SolveStatus::Emitted => 0,
            SolveStatus::NoSmallSolutions => 1,
            SolveStatus::Family { .. } => 2,
            SolveStatus::Ambiguous => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Emitted => "emitted",
            SolveStatus::NoSmallSolutions => "no-small-solutions",
            SolveStatus::Family { .. } => "family",
            SolveStatus::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub order: Rational64,
    pub branches: Vec<SolutionBranch>,
    pub discards: Vec<Discard>,
    pub status: SolveStatus,
    /// Chain errors such as degenerate edges, with the chain codes.
    pub chain_errors: Vec<(Vec<Vec<usize>>, Error)>,
}

enum Outcome {
    Emit(SolutionBranch),
    Drop(Discard),
    /// Needs a larger working order; carries the cause.
    Escalate(Discard),
}

fn escalation(e: &Error) -> bool {
    matches!(
        e,
        Error::TruncationUnderflow { .. } | Error::ExtendJet { .. } | Error::TruncationCeiling { .. }
    )
}

/// Lifts one base root through the chain at working order `work`.
fn lift_all(
    built: &BuiltChain,
    base: &PuiseuxJet,
    base_cert: &SimplicityCertificate,
    opts: &SolveOptions,
    work: Rational64,
) -> Outcome {
    let n = built.n();
    let t = opts.order;
    let codes = built.chain.codes();
    let discard = |level, reason| Discard { base: base.clone(), level, reason, chain: codes.clone() };
    let fail = |level, e: Error| {
        if escalation(&e) {
            Outcome::Escalate(discard(level, DiscardReason::Unresolved(e)))
        } else {
            Outcome::Drop(discard(level, DiscardReason::Unresolved(e)))
        }
    };

    let mut levels = vec![LevelCertificate {
        report: RegularityReport {
            level: 1,
            status: RegularityStatus::Regular,
            matched: Some(base.clone()),
            witnesses: Vec::new(),
            jet_sets: Vec::new(),
            t: base_cert.order,
            shortcut: false,
        },
        certificate: base_cert.clone(),
    }];
    // u holds level-k coordinates with slot 0 unused
    let l1 = built.level(1);
    let mut u = l1.map.apply_jets(&[PuiseuxJet::exact_zero(), base.clone()]);
    for k in 2..=n {
        let level = built.level(k);
        let lift = match lift_branch(level, &u, t, work, opts.prec, opts.use_shortcut) {
            Ok(l) => l,
            Err(e) => return fail(k, e),
        };
        let Some((jet, cert)) = lift.component else {
            let reason = match lift.report.status {
                RegularityStatus::Ambiguous => DiscardReason::Ambiguous(lift.report),
                _ => DiscardReason::Empty(lift.report),
            };
            return Outcome::Drop(discard(k, reason));
        };
        levels.push(LevelCertificate { report: lift.report, certificate: cert });
        let mut v = u.clone();
        v.push(jet);
        u = level.map.apply_jets(&v);
    }
    let full: Vec<PuiseuxJet> = u[1..].to_vec();
    if let Some(i) = full.iter().position(|j| j.trunc() < Order::At(t)) {
        let have = full[i].trunc().finite().unwrap_or(t);
        return fail(n, Error::TruncationCeiling { available: have });
    }
    let components: Vec<PuiseuxJet> = full.iter().map(|j| j.truncate(Order::At(t))).collect();
    let residuals = match verify_residuals(&built.original, &components, t) {
        Ok(r) => r,
        Err(e) => return Outcome::Drop(discard(n, DiscardReason::Verification(e))),
    };
    let certs: Vec<SimplicityCertificate> = levels.iter().map(|l| l.certificate.clone()).collect();
    let real_class = match classify_realness(&full, &certs, built.original.is_real(), opts.prec) {
        Ok(c) => c,
        Err(Error::ExtendFirst { .. }) => RealClass::Undetermined,
        Err(e) => return fail(n, e),
    };
    Outcome::Emit(SolutionBranch { components, levels, residuals, real_class, chains: vec![codes] })
}

/// Branches and discards of one chain at working order `work`, or `None`
/// when some root needs a larger working order.
fn solve_at(built: &BuiltChain, opts: &SolveOptions, work: Rational64, last: bool) -> Result<Option<(Vec<SolutionBranch>, Vec<Discard>)>> {
    let base_eq = &built.level(1).regularized.equations()[0];
    let base = match puiseux_branches(base_eq, work, opts.prec) {
        Ok(b) => b,
        Err(e) if escalation(&e) && !last => return Ok(None),
        Err(e) => return Err(e),
    };
    let codes = built.chain.codes();
    let (mut emitted, mut dropped) = (Vec::new(), Vec::new());
    for b in &base {
        let Some(cert) = b.certificate.as_ref().filter(|_| b.multiplicity == 1) else {
            // a cluster known only to finite order may still split
            if !last && !b.jet.trunc().is_infinite() {
                return Ok(None);
            }
            dropped.push(Discard {
                base: b.jet.clone(),
                level: 1,
                reason: DiscardReason::NotSimple { multiplicity: b.multiplicity },
                chain: codes.clone(),
            });
            continue;
        };
        match lift_all(built, &b.jet, cert, opts, work) {
            Outcome::Emit(s) => emitted.push(s),
            Outcome::Drop(d) => dropped.push(d),
            Outcome::Escalate(_) if !last => return Ok(None),
            Outcome::Escalate(d) => dropped.push(d),
        }
    }
    Ok(Some((emitted, dropped)))
}

/// Solves one built chain, doubling the working order as needed.
pub fn solve_chain(built: &BuiltChain, opts: &SolveOptions) -> Result<(Vec<SolutionBranch>, Vec<Discard>)> {
    let cap = opts.order * MAX_WORK_FACTOR;
    let mut work = opts.order * 2;
    loop {
        let last = work >= cap;
        if let Some(out) = solve_at(built, opts, work, last)? {
            return Ok(out);
        }
        work = (work * 2).min(cap);
    }
}

fn chains_for(n: usize, strategy: &Strategy) -> Result<Vec<TreeChain>> {
    if n == 1 {
        return Ok(vec![TreeChain::trivial()]);
    }
    match strategy {
        Strategy::FirstChain => Ok(vec![TreeChain::first(n)?]),
        Strategy::AllChains => TreeChain::all(n),
        Strategy::Explicit(c) => Ok(vec![c.clone()]),
    }
}

/// Effectively computable small solutions of a square system: every
/// emitted branch is regular at each level and passes the residual check.
pub fn solve_effective(system: &PolySystem, opts: &SolveOptions) -> Result<SolveReport> {
    if opts.order <= Rational64::from_integer(0) {
        return Err(Error::Input(format!("order must be positive, got {}", opts.order)));
    }
    let n = system.nvars();
    let mut branches: Vec<SolutionBranch> = Vec::new();
    let mut discards = Vec::new();
    let mut chain_errors = Vec::new();
    let mut no_small = false;
    for chain in chains_for(n, &opts.strategy)? {
        let built = match build_chain(system, &chain) {
            Ok(b) => b,
            Err(e @ (Error::DegenerateEdge { .. } | Error::RegularizationFailed { .. })) => {
                chain_errors.push((chain.codes(), e));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !built.is_complete() {
            no_small = true;
            break;
        }
        let (found, dropped) = solve_chain(&built, opts)?;
        discards.extend(dropped);
        for b in found {
            match branches.iter_mut().find(|x| x.same_jets(&b)) {
                Some(x) => x.chains.extend(b.chains),
                None => branches.push(b),
            }
        }
    }
    branches.sort_by(|a, b| compare_branches(a, b));
    let status = if !branches.is_empty() {
        SolveStatus::Emitted
    } else if no_small {
        SolveStatus::NoSmallSolutions
    } else if !chain_errors.is_empty() && discards.is_empty() {
        match detect_families(system)?.verdict {
            FamilyVerdict::Family { level } => SolveStatus::Family { level },
            FamilyVerdict::NoSmallSolutions => SolveStatus::NoSmallSolutions,
            FamilyVerdict::Finite => SolveStatus::Ambiguous,
        }
    } else if discards
        .iter()
        .any(|d| matches!(d.reason, DiscardReason::Ambiguous(_) | DiscardReason::NotSimple { .. } | DiscardReason::Unresolved(_)))
    {
        SolveStatus::Ambiguous
    } else {
        SolveStatus::NoSmallSolutions
    };
    Ok(SolveReport { order: opts.order, branches, discards, status, chain_errors })
}

fn compare_jets(a: &PuiseuxJet, b: &PuiseuxJet) -> std::cmp::Ordering {
    let ta: Vec<(Rational64, &Coeff)> = a.terms().collect();
    let tb: Vec<(Rational64, &Coeff)> = b.terms().collect();
    for ((ea, ca), (eb, cb)) in ta.iter().zip(&tb) {
        let o = ea.cmp(eb).then_with(|| ca.canonical_cmp(cb));
        if o.is_ne() {
            return o;
        }
    }
    ta.len().cmp(&tb.len())
}

/// Deterministic branch order: lexicographic on the component jets.
pub fn compare_branches(a: &SolutionBranch, b: &SolutionBranch) -> std::cmp::Ordering {
    for (x, y) in a.components.iter().zip(&b.components) {
        let o = compare_jets(x, y);
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::MultiPoly;

    fn sys(nvars: usize, eqs: &[&[(i64, &[u32])]]) -> PolySystem {
        PolySystem::new(eqs.iter().map(|t| MultiPoly::from_int_terms(nvars, t)).collect()).unwrap()
    }

    fn opts(t: i64) -> SolveOptions {
        SolveOptions { order: Rational64::from_integer(t), ..Default::default() }
    }

    fn lam(c: i64, n: i64, d: u32) -> PuiseuxJet {
        PuiseuxJet::monomial(Coeff::int(c), n, d)
    }

    #[test]
    fn squares_lift_linearly() {
        // {x1^2 - λ^2, x2 - x1}
        let s = sys(2, &[&[(1, &[0, 2, 0]), (-1, &[2, 0, 0])], &[(1, &[0, 0, 1]), (-1, &[0, 1, 0])]]);
        let r = solve_effective(&s, &opts(3)).unwrap();
        assert_eq!(r.status, SolveStatus::Emitted);
        assert_eq!(r.branches.len(), 2);
        for (b, sign) in r.branches.iter().zip([-1, 1]) {
            for c in &b.components {
                assert!(c.agree_to(&lam(sign, 1, 1), Rational64::from_integer(3)));
            }
            assert_eq!(b.real_class, RealClass::RealBoth);
        }
    }

    #[test]
    fn half_powers() {
        // {x2^2 - λ, x2 - x1}
        let s = sys(2, &[&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 1]), (-1, &[0, 1, 0])]]);
        let r = solve_effective(&s, &opts(3)).unwrap();
        assert_eq!(r.branches.len(), 2);
        for b in &r.branches {
            assert_eq!(b.ram(), 2);
            assert_eq!(b.real_class, RealClass::RealPositive);
        }
    }

    #[test]
    fn nondegenerate_linear_system() {
        // {x1 + x2 - λ, x1 - x2}
        let s = sys(2, &[&[(1, &[0, 1, 0]), (1, &[0, 0, 1]), (-1, &[1, 0, 0])], &[(1, &[0, 1, 0]), (-1, &[0, 0, 1])]]);
        let r = solve_effective(&s, &opts(3)).unwrap();
        assert_eq!(r.branches.len(), 1);
        let half = PuiseuxJet::monomial(Coeff::ratio(1, 2), 1, 1);
        assert!(r.branches[0].components.iter().all(|c| c.agree_to(&half, Rational64::from_integer(3))));
    }

    #[test]
    fn statuses() {
        // common factor: family
        let s = sys(2, &[&[(1, &[0, 0, 2]), (-1, &[1, 0, 1])], &[(1, &[0, 0, 2]), (-1, &[0, 1, 1])]]);
        assert_eq!(solve_effective(&s, &opts(3)).unwrap().status, SolveStatus::Family { level: 2 });
        // {x2^2 - λ, x2^2 - 2λ}: none
        let s = sys(2, &[&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 2]), (-2, &[1, 0, 0])]]);
        assert_eq!(solve_effective(&s, &opts(3)).unwrap().status, SolveStatus::NoSmallSolutions);
    }

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn l(n: usize, k: u32, c: i64) -> MultiPoly {
        let mut e = vec![0; n + 1];
        e[0] = k;
        MultiPoly::monomial(n, e, Coeff::int(c))
    }

    #[test]
    fn ambiguity_is_reported() {
        // f1 = (x2 - λ)(x2 - λ - x1), f2 = (x2 - λ - x1 + λ^8)(x2 - λ - 2 x1)
        let (x1, x2) = (v(2, 1), v(2, 2));
        let a = &x2 - &l(2, 1, 1);
        let f1 = &a * &(&a - &x1);
        let f2 = &(&(&a - &x1) + &l(2, 8, 1)) * &(&a - &x1.scale(&Coeff::int(2)));
        let s = PolySystem::new(vec![f1, f2]).unwrap();
        let r = solve_effective(&s, &opts(6)).unwrap();
        assert!(r.branches.is_empty());
        assert_eq!(r.status, SolveStatus::Ambiguous);
        let amb = r.discards.iter().find_map(|d| match &d.reason {
            DiscardReason::Ambiguous(rep) => Some(rep),
            _ => None,
        });
        assert_eq!(amb.unwrap().witnesses.len(), 2);
    }

    #[test]
    fn three_unknowns() {
        // planted (λ, λ^2, -λ)
        let n = 3;
        let (x1, x2, x3) = (v(n, 1), v(n, 2), v(n, 3));
        let d1 = &x1 - &l(n, 1, 1);
        let d2 = &x2 - &l(n, 2, 1);
        let d3 = &x3 + &l(n, 1, 1);
        let s = PolySystem::new(vec![&d1 + &(&d2 * &x3), &d2 + &d1.pow(2), &d3 + &(&x1 * &d2)]).unwrap();
        for strategy in [Strategy::FirstChain, Strategy::AllChains] {
            let r = solve_effective(&s, &SolveOptions { strategy: strategy.clone(), ..opts(4) }).unwrap();
            assert_eq!(r.branches.len(), 1, "{strategy:?}");
            let want = [lam(1, 1, 1), lam(1, 2, 1), lam(-1, 1, 1)];
            for (c, w) in r.branches[0].components.iter().zip(&want) {
                assert!(c.agree_to(w, Rational64::from_integer(4)));
            }
            if strategy == Strategy::AllChains {
                assert_eq!(r.branches[0].chains.len(), 3);
            }
        }
    }
}
