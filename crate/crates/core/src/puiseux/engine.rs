//! Newton-polygon expansion of the small roots of a polynomial in one
//! unknown whose coefficients are jets in λ.

use num_rational::Rational64;

use super::roots::roots;
use crate::error::{Error, Result};
use crate::polycore::{Coeff, JetPoly, MultiPoly, Order, PuiseuxJet};

/// One segment of the lower Newton polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonEdge {
    /// Valuation of the roots belonging to this edge.
    pub slope: Rational64,
    /// `(λ-exponent, x-exponent)` of the support points on the edge.
    pub support: Vec<(Rational64, usize)>,
    /// `char_poly[k]` multiplies `c^k`.
    pub char_poly: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityCertificate {
    /// Number of leading terms fixed before the continuation becomes linear.
    pub r: usize,
    /// Leading coefficient of `∂f/∂x` along the branch.
    pub alpha: Coeff,
    pub alpha_order: Rational64,
    /// Terms with exponent above this order follow from `α γ_j = β_j`.
    pub order: Rational64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub jet: PuiseuxJet,
    /// Number of roots represented; more than one when the roots are not
    /// separated at the requested order.
    pub multiplicity: usize,
    /// The jet stopped short of the requested order for lack of input terms.
    pub limited: bool,
    pub certificate: Option<SimplicityCertificate>,
}

impl Branch {
    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1 && self.certificate.is_some()
    }
}

/// Lower convex hull of points sorted by abscissa.
fn lower_hull(points: &[(usize, Rational64)]) -> Vec<(usize, Rational64)> {
    let mut hull: Vec<(usize, Rational64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a–p
            let lhs = (b.1 - a.1) * Rational64::from_integer((p.0 - a.0) as i64);
            let rhs = (p.1 - a.1) * Rational64::from_integer((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Number of roots of valuation `> 0`: the first index with valuation zero.
fn small_root_count(g: &JetPoly) -> Result<usize> {
    (0..=g.degree())
        .find(|&i| g.coeff(i).valuation() == Some(Rational64::from_integer(0)))
        .ok_or(Error::NotRegular)
}

fn known_points(g: &JetPoly, n: usize) -> Vec<(usize, Rational64)> {
    (0..=n).filter_map(|i| g.coeff(i).valuation().map(|v| (i, v))).collect()
}

/// Every coefficient is known on and below the line `m - γ i`.
fn certified(g: &JetPoly, m: Rational64, gamma: Rational64) -> bool {
    g.coeffs
        .iter()
        .enumerate()
        .all(|(i, c)| c.trunc() >= Order::At(m - gamma * i as i64))
}

fn char_poly(g: &JetPoly, i1: usize, i2: usize, m: Rational64, gamma: Rational64) -> Vec<Coeff> {
    (i1..=i2).map(|i| g.coeff(i).coeff_at(m - gamma * i as i64)).collect()
}

/// Edges of the lower polygon over the first `n + 1` coefficients, from the
/// smallest slope up, as `(i1, i2, slope, line value)`.
fn edges(g: &JetPoly, n: usize) -> Vec<(usize, usize, Rational64, Rational64)> {
    let hull = lower_hull(&known_points(g, n));
    hull.windows(2)
        .rev()
        .map(|w| {
            let ((i1, v1), (i2, v2)) = (w[0], w[1]);
            let gamma = (v1 - v2) / Rational64::from_integer((i2 - i1) as i64);
            (i1, i2, gamma, v2 + gamma * i2 as i64)
        })
        .collect()
}

/// Polygon edges with positive slope of a polynomial in λ and one unknown.
pub fn newton_polygon(f: &MultiPoly) -> Result<Vec<PolygonEdge>> {
    jet_polygon(&JetPoly::from_bivariate(f, sole_unknown(f)?)?)
}

pub fn jet_polygon(g: &JetPoly) -> Result<Vec<PolygonEdge>> {
    let n = small_root_count(g)?;
    Ok(edges(g, n)
        .into_iter()
        .map(|(i1, i2, gamma, m)| PolygonEdge {
            slope: gamma,
            support: (i1..=i2)
                .filter(|&i| g.coeff(i).valuation() == Some(m - gamma * i as i64))
                .map(|i| (m - gamma * i as i64, i))
                .collect(),
            char_poly: char_poly(g, i1, i2, m, gamma),
        })
        .collect())
}

fn sole_unknown(f: &MultiPoly) -> Result<usize> {
    let vars: Vec<usize> = (1..=f.nvars()).filter(|&v| f.involves(v)).collect();
    match vars.as_slice() {
        [v] => Ok(*v),
        [] => Err(Error::NotRegular),
        _ => Err(Error::Input("expected a polynomial in λ and one unknown".into())),
    }
}

struct Engine<'a> {
    top: &'a JetPoly,
    target: Rational64,
    prec: u32,
    out: Vec<Branch>,
}

impl Engine<'_> {
    fn emit(&mut self, jet: PuiseuxJet, multiplicity: usize, limited: bool) {
        let certificate = if multiplicity == 1 {
            jet_certificate(self.top, &jet).ok()
        } else {
            None
        };
        self.out.push(Branch { jet, multiplicity, limited, certificate });
    }

    /// Finds the `n` roots of `g` with valuation `> e`; `g(y)` is the top
    /// polynomial at `prefix + y`.
    fn expand(&mut self, g: JetPoly, prefix: PuiseuxJet, e: Rational64, n: usize) -> Result<()> {
        let (mut g, mut n) = (g, n);
        if n > 0 && g.coeff(0).is_exact_zero() {
            let k = (1..=n).find(|&i| !g.coeff(i).is_exact_zero()).unwrap_or(n);
            self.emit(prefix.clone(), k, false);
            g = JetPoly::new(g.coeffs[k..].to_vec());
            n -= k;
        }
        if n == 0 {
            return Ok(());
        }
        if n == 1 {
            let (jet, limited) = continue_linear(&g, &prefix, e, self.target)?;
            self.emit(jet, 1, limited);
            return Ok(());
        }
        let Some(vn) = g.coeff(n).valuation() else {
            self.emit(prefix.truncate(Order::At(e)), n, true);
            return Ok(());
        };
        let mut j = n;
        for (i1, i2, gamma, m) in edges(&g, n) {
            debug_assert_eq!(i2, j);
            if gamma > self.target || !certified(&g, m, gamma) {
                break;
            }
            for root in roots(&char_poly(&g, i1, i2, m, gamma), self.prec)? {
                let term = PuiseuxJet::from_rational_terms(vec![(gamma, root.value)], Order::Infinite);
                let shifted = g.shift(&term);
                self.expand(shifted, prefix.add(&term), gamma, root.multiplicity)?;
            }
            j = i1;
        }
        if j > 0 {
            let vj = if j == n { vn } else { g.coeff(j).valuation().expect("hull vertex") };
            let (trunc, limited) = unresolved_order(&g, j, vj, e, self.target);
            self.emit(prefix.truncate(Order::At(trunc)), j, limited);
        }
        Ok(())
    }
}

/// Order through which the `j` roots left of the known polygon agree with
/// the prefix: bounded by the coefficients known only up to truncation.
fn unresolved_order(g: &JetPoly, j: usize, vj: Rational64, e: Rational64, target: Rational64) -> (Rational64, bool) {
    let mut bound: Option<Rational64> = None;
    for i in 0..j {
        let c = g.coeff(i);
        if let (None, Order::At(t)) = (c.valuation(), c.trunc()) {
            let b = (t - vj) / Rational64::from_integer((j - i) as i64);
            bound = Some(bound.map_or(b, |x: Rational64| x.min(b)));
        }
    }
    match bound {
        Some(b) if b.max(e) < target => (b.max(e), true),
        _ => (target, false),
    }
}

/// Continues a root of valuation `> e` of `g` (at most one such root
/// exists) term by term: each step solves `α γ = -β` for the leading term
/// `β` of the current residual. Returns `prefix + y` and whether input data
/// ran out before `target`.
fn continue_linear(
    g: &JetPoly,
    prefix: &PuiseuxJet,
    e: Rational64,
    target: Rational64,
) -> Result<(PuiseuxJet, bool)> {
    let Some((v1, alpha)) = g.coeff(1).leading().map(|(v, c)| (v, c.clone())) else {
        return Ok((prefix.truncate(Order::At(e)), true));
    };
    let mut y = PuiseuxJet::exact_zero();
    let mut last = e;
    loop {
        let r = g.eval(&y);
        match r.leading() {
            None => {
                let full = prefix.add(&y);
                return Ok(match r.trunc() {
                    Order::Infinite => (full, false),
                    Order::At(t) => {
                        let b = (t - v1).max(last);
                        if b >= target {
                            (full.truncate(Order::At(target)), false)
                        } else {
                            (full.truncate(Order::At(b)), true)
                        }
                    }
                });
            }
            Some((w, beta)) => {
                let gamma = w - v1;
                if gamma > target {
                    return Ok((prefix.add(&y).truncate(Order::At(target)), false));
                }
                if gamma <= last {
                    return Ok((prefix.add(&y).truncate(Order::At(last)), true));
                }
                let c = -(beta / &alpha);
                y = y.add(&PuiseuxJet::from_rational_terms(vec![(gamma, c)], Order::Infinite));
                last = gamma;
            }
        }
    }
}

/// All small-root branches of a polynomial in λ and one unknown, each known
/// through order `target` unless flagged `limited`.
pub fn puiseux_branches(f: &MultiPoly, target: Rational64, prec: u32) -> Result<Vec<Branch>> {
    jet_branches(&JetPoly::from_bivariate(f, sole_unknown(f)?)?, target, prec)
}

pub fn jet_branches(g: &JetPoly, target: Rational64, prec: u32) -> Result<Vec<Branch>> {
    let n = small_root_count(g)?;
    // Large inputs are expanded from a copy cut at order `b`, raised while
    // a branch runs out of data; small ones keep exact roots exact.
    let size: usize = g.coeffs.iter().map(PuiseuxJet::num_terms).sum();
    let mut b = if size <= EXACT_EXPANSION_TERMS {
        None
    } else {
        let v0 = (0..=n).filter_map(|i| g.coeff(i).valuation()).max().unwrap_or_default();
        Some(v0 + target * 2)
    };
    loop {
        let (work, cut) = match b {
            Some(b) => truncate_coeffs(g, b),
            None => (g.clone(), false),
        };
        let mut engine = Engine { top: g, target, prec, out: Vec::new() };
        engine.expand(work, PuiseuxJet::exact_zero(), Rational64::from_integer(0), n)?;
        if !cut || engine.out.iter().all(|br| !br.limited) {
            return Ok(engine.out);
        }
        b = b.map(|b| b * 2);
    }
}

/// Inputs with at most this many coefficient terms are expanded exactly.
const EXACT_EXPANSION_TERMS: usize = 256;

/// Whether `h` has exactly one root of valuation `> e`; `None` when the
/// known coefficients cannot decide.
fn single_root_above(h: &JetPoly, e: Order) -> std::result::Result<bool, Rational64> {
    let Some(v1) = h.coeff(1).valuation() else {
        return if h.coeff(1).is_exact() {
            Ok(false)
        } else {
            Err(h.coeff(1).trunc().finite().expect("finite"))
        };
    };
    let Order::At(e) = e else {
        // an exact root: simple iff the derivative is nonzero
        return Ok(true);
    };
    let line = v1 + e;
    let h0 = h.coeff(0);
    match h0.valuation() {
        Some(w) if w <= line => return Ok(false),
        Some(_) => {}
        None => {
            if let Order::At(t) = h0.trunc() {
                if t < line {
                    return Err(line);
                }
            }
        }
    }
    for (i, c) in h.coeffs.iter().enumerate().skip(2) {
        let rhs = line - e * i as i64;
        match c.valuation() {
            Some(w) if w < rhs => return Ok(false),
            Some(_) => {}
            None => {
                if let Order::At(t) = c.trunc() {
                    if t < rhs {
                        return Err(rhs);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `g` with coefficients cut at order `b`, and whether information was
/// lost; past the largest exponent present `g` is returned whole.
fn truncate_coeffs(g: &JetPoly, b: Rational64) -> (JetPoly, bool) {
    let top = g
        .coeffs
        .iter()
        .filter_map(|c| match c.trunc() {
            Order::At(t) => Some(t),
            Order::Infinite => c.terms().last().map(|(e, _)| e),
        })
        .max();
    if top.map_or(true, |t| b >= t) {
        return (g.clone(), false);
    }
    let order = Order::At(b);
    (JetPoly::new(g.coeffs.iter().map(|c| c.truncate(order)).collect()), true)
}

/// `single_root_above` for `g(prefix + y)`, shifting a copy of `g` cut at
/// a growing order instead of the exact polynomial.
///
/// Only the first `n + 1` shifted coefficients are formed: `g` has `n`
/// small roots, so `h_n` has valuation zero and the coefficients above it
/// cannot fail the test.
fn decide_shifted(g: &JetPoly, prefix: &PuiseuxJet, e: Order) -> (std::result::Result<bool, Rational64>, JetPoly) {
    let head = small_root_count(g).unwrap_or_else(|_| g.degree());
    let mut b = e.finite().map_or(Rational64::from_integer(8), |e| (e + 1) * 2).max(Rational64::from_integer(4));
    loop {
        let (gt, cut) = truncate_coeffs(g, b);
        let h = gt.shift_head(prefix, head);
        match single_root_above(&h, e) {
            Err(required) if cut => b = (b * 2).max(required + 1),
            r => return (r, h),
        }
    }
}

/// Certifies that `branch` is a simple root of `g` and finds the defining
/// number.
pub fn jet_certificate(g: &JetPoly, branch: &PuiseuxJet) -> Result<SimplicityCertificate> {
    let (decision, h) = decide_shifted(g, &branch.as_exact(), branch.trunc());
    match decision {
        Ok(true) => {}
        Ok(false) => return Err(Error::NotSimple),
        Err(required) => return Err(Error::ExtendJet { required }),
    }
    let (alpha_order, alpha) = h
        .coeff(1)
        .leading()
        .map(|(v, c)| (v, c.clone()))
        .ok_or(Error::NotSimple)?;
    let terms: Vec<(Rational64, Coeff)> = branch.terms().map(|(e, c)| (e, c.clone())).collect();
    let mut r = terms.len();
    let mut order = branch.trunc().finite().unwrap_or_else(|| terms.last().map_or(Rational64::from_integer(0), |t| t.0));
    for k in 0..=terms.len() {
        let e = if k == 0 { Rational64::from_integer(0) } else { terms[k - 1].0 };
        let prefix = PuiseuxJet::from_rational_terms(terms[..k].to_vec(), Order::Infinite);
        if decide_shifted(g, &prefix, Order::At(e)).0 == Ok(true) {
            r = k;
            order = e;
            break;
        }
    }
    Ok(SimplicityCertificate { r, alpha, alpha_order, order })
}

pub fn simplicity_certificate(f: &MultiPoly, branch: &PuiseuxJet) -> Result<SimplicityCertificate> {
    jet_certificate(&JetPoly::from_bivariate(f, sole_unknown(f)?)?, branch)
}

/// Extends a simple branch of `g` to order `target` by the linear
/// recursion, reporting whether the input data sufficed.
pub fn extend_jet_poly(
    g: &JetPoly,
    branch: &PuiseuxJet,
    cert: &SimplicityCertificate,
    target: Rational64,
) -> Result<(PuiseuxJet, bool)> {
    let Order::At(t) = branch.trunc() else {
        return Ok((branch.clone(), false));
    };
    let prefix = branch.as_exact();
    let h = g.shift(&prefix);
    if h.coeff(1).valuation() != Some(cert.alpha_order) {
        return Err(Error::NotSimple);
    }
    continue_linear(&h, &prefix, t, target)
}

pub fn extend_jet(
    f: &MultiPoly,
    branch: &PuiseuxJet,
    cert: &SimplicityCertificate,
    target: Rational64,
) -> Result<PuiseuxJet> {
    let g = JetPoly::from_bivariate(f, sole_unknown(f)?)?;
    let (jet, limited) = extend_jet_poly(&g, branch, cert, target)?;
    if limited {
        return Err(Error::TruncationCeiling { available: jet.trunc().finite().unwrap_or(target) });
    }
    Ok(jet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::jet::exp;

    const P: u32 = 256;

    fn poly(terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_int_terms(1, terms)
    }

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::ratio(n, d)
    }

    fn jet(terms: &[(i64, i64, Coeff)], trunc: Order) -> PuiseuxJet {
        PuiseuxJet::from_rational_terms(terms.iter().map(|(n, d, c)| (exp(*n, *d), c.clone())).collect(), trunc)
    }

    #[test]
    fn polygon_examples() {
        let e = newton_polygon(&poly(&[(1, &[0, 2]), (-1, &[1, 0])])).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope, exp(1, 2));
        assert_eq!(e[0].char_poly, vec![q(-1, 1), q(0, 1), q(1, 1)]);

        let e = newton_polygon(&poly(&[(1, &[0, 2]), (-1, &[2, 0])])).unwrap();
        assert_eq!(e[0].slope, exp(1, 1));

        // x^3 - (λ + λ^2) x^2 + λ^3 x
        let f = poly(&[(1, &[0, 3]), (-1, &[1, 2]), (-1, &[2, 2]), (1, &[3, 1])]);
        let e = newton_polygon(&f).unwrap();
        let slopes: Vec<_> = e.iter().map(|x| x.slope).collect();
        assert_eq!(slopes, vec![exp(1, 1), exp(2, 1)]);
        assert_eq!(e[0].support, vec![(exp(1, 1), 2), (exp(0, 1), 3)]);
        assert_eq!(e[1].support, vec![(exp(3, 1), 1), (exp(1, 1), 2)]);

        assert_eq!(newton_polygon(&poly(&[(1, &[1, 1])])), Err(Error::NotRegular));
    }

    #[test]
    fn square_root_branches() {
        let b = puiseux_branches(&poly(&[(1, &[0, 2]), (-1, &[1, 0])]), exp(2, 1), P).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].jet, jet(&[(1, 2, q(-1, 1))], Order::Infinite));
        assert_eq!(b[1].jet, jet(&[(1, 2, q(1, 1))], Order::Infinite));
        assert!(b.iter().all(|x| x.multiplicity == 1 && x.is_simple() && x.jet.ram() == 2));
    }

    #[test]
    fn completing_the_square() {
        // (x - λ)^2 - λ^3
        let f = poly(&[(1, &[0, 2]), (-2, &[1, 1]), (1, &[2, 0]), (-1, &[3, 0])]);
        let b = puiseux_branches(&f, exp(3, 1), P).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].jet, jet(&[(1, 1, q(1, 1)), (3, 2, q(-1, 1))], Order::Infinite));
        assert_eq!(b[1].jet, jet(&[(1, 1, q(1, 1)), (3, 2, q(1, 1))], Order::Infinite));
        // unresolved at order 1: one double cluster
        let b = puiseux_branches(&f, exp(1, 1), P).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].multiplicity, 2);
        assert_eq!(b[0].jet, jet(&[(1, 1, q(1, 1))], Order::int(1)));
    }

    #[test]
    fn binomial_series() {
        // x^2 - λ^2 (1 + λ)
        let f = poly(&[(1, &[0, 2]), (-1, &[2, 0]), (-1, &[3, 0])]);
        let b = puiseux_branches(&f, exp(3, 1), P).unwrap();
        assert_eq!(b.len(), 2);
        let plus = jet(&[(1, 1, q(1, 1)), (2, 1, q(1, 2)), (3, 1, q(-1, 8))], Order::int(3));
        assert_eq!(b[1].jet, plus);
        assert_eq!(b[0].jet, plus.neg());

        let short = plus.truncate(Order::int(2));
        let cert = simplicity_certificate(&f, &short).unwrap();
        let ext = extend_jet(&f, &short, &cert, exp(4, 1)).unwrap();
        let want = jet(
            &[(1, 1, q(1, 1)), (2, 1, q(1, 2)), (3, 1, q(-1, 8)), (4, 1, q(1, 16))],
            Order::int(4),
        );
        assert_eq!(ext, want);
    }

    #[test]
    fn extension_of_exact_root_adds_nothing() {
        let f = poly(&[(1, &[0, 2]), (-1, &[1, 0])]);
        let root = jet(&[(1, 2, q(1, 1))], Order::Infinite);
        let cert = simplicity_certificate(&f, &root).unwrap();
        assert_eq!(extend_jet(&f, &root, &cert, exp(9, 1)).unwrap(), root);
    }

    #[test]
    fn one_recursion_step_after_square_completion() {
        // (x - λ)^2 - λ^3 - λ^4: branch λ + λ^{3/2} gains a λ^2 term
        let f = poly(&[(1, &[0, 2]), (-2, &[1, 1]), (1, &[2, 0]), (-1, &[3, 0]), (-1, &[4, 0])]);
        let b = jet(&[(1, 1, q(1, 1)), (3, 2, q(1, 1))], Order::At(exp(3, 2)));
        let cert = simplicity_certificate(&f, &b).unwrap();
        let ext = extend_jet(&f, &b, &cert, exp(5, 2)).unwrap();
        // λ sqrt(λ + λ^2) = λ^{3/2} (1 + λ/2 - …)
        let want = jet(&[(1, 1, q(1, 1)), (3, 2, q(1, 1)), (5, 2, q(1, 2))], Order::At(exp(5, 2)));
        assert_eq!(ext, want);
    }

    #[test]
    fn certificate_examples() {
        let f = poly(&[(1, &[0, 2]), (-1, &[1, 0])]);
        let c = simplicity_certificate(&f, &jet(&[(1, 2, q(1, 1))], Order::Infinite)).unwrap();
        assert_eq!(c.alpha, q(2, 1));
        assert_eq!(c.alpha_order, exp(1, 2));

        let f = poly(&[(1, &[0, 2])]);
        assert_eq!(simplicity_certificate(&f, &PuiseuxJet::exact_zero()), Err(Error::NotSimple));

        // (x - λ)(x - λ^2), branch λ: f_x = λ - λ^2
        let f = poly(&[(1, &[0, 2]), (-1, &[1, 1]), (-1, &[2, 1]), (1, &[3, 0])]);
        let c = simplicity_certificate(&f, &jet(&[(1, 1, q(1, 1))], Order::Infinite)).unwrap();
        assert_eq!(c.alpha, q(1, 1));
        assert_eq!(c.alpha_order, exp(1, 1));
    }

    #[test]
    fn zero_root_and_multiplicity_conservation() {
        let f = poly(&[(1, &[0, 3]), (-1, &[1, 2]), (-1, &[2, 2]), (1, &[3, 1])]);
        let b = puiseux_branches(&f, exp(4, 1), P).unwrap();
        assert_eq!(b.iter().map(|x| x.multiplicity).sum::<usize>(), 3);
        assert!(b.iter().any(|x| x.jet.is_exact_zero()));
    }

    #[test]
    fn complex_char_roots() {
        // x^2 + λ^2
        let b = puiseux_branches(&poly(&[(1, &[0, 2]), (1, &[2, 0])]), exp(3, 1), P).unwrap();
        assert_eq!(b.len(), 2);
        for x in &b {
            let (_, c) = x.jet.leading().unwrap();
            assert!(!c.is_real());
            assert!(x.is_simple());
        }
    }
}
