//! Truncated Puiseux series in λ.
//!
//! A jet `Σ γ_i λ^{τ_i/τ} + o(λ^T)` stores integer exponent numerators over a
//! common ramification `τ` and the order `T` up to which it is known. Every
//! operation propagates the weakest guarantee of its inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_integer::Integer as _;
use num_rational::Rational64;
use num_traits::Zero;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::coeff::{unit_root, Coeff};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Known order of a jet: exact through `At(T)`, or exact altogether.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    At(Rational64),
    Infinite,
}

impl Order {
    pub fn int(v: i64) -> Self {
        Order::At(Rational64::from_integer(v))
    }

    pub fn finite(self) -> Option<Rational64> {
        match self {
            Order::At(r) => Some(r),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Order::Infinite
    }
}

impl Add<Rational64> for Order {
    type Output = Order;
    fn add(self, rhs: Rational64) -> Order {
        match self {
            Order::At(r) => Order::At(r + rhs),
            Order::Infinite => Order::Infinite,
        }
    }
}

impl Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::At(a), Order::At(b)) => Order::At(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::At(r) => write!(f, "{r}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PuiseuxJet {
    ram: u32,
    /// `(τ_i, γ_i)` with strictly increasing `τ_i` and nonzero `γ_i`.
    terms: Vec<(i64, Coeff)>,
    trunc: Order,
}

impl PuiseuxJet {
    /// Builds a jet from `(numerator, coefficient)` pairs over `ram`, merging
    /// duplicates, dropping zeros and terms past `trunc`, and minimizing the
    /// ramification.
    pub fn new(ram: u32, terms: Vec<(i64, Coeff)>, trunc: Order) -> Self {
        assert!(ram > 0, "ramification must be positive");
        let mut merged: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            assert!(e >= 0, "jet exponents are nonnegative");
            let slot = merged.entry(e).or_insert_with(Coeff::zero);
            *slot = &*slot + &c;
        }
        let terms = merged
            .into_iter()
            .filter(|(e, c)| {
                !c.is_zero() && Order::At(Rational64::new(*e, ram as i64)) <= trunc
            })
            .collect();
        let mut jet = PuiseuxJet { ram, terms, trunc };
        jet.minimize_ram();
        jet
    }

    pub fn zero(trunc: Order) -> Self {
        PuiseuxJet { ram: 1, terms: Vec::new(), trunc }
    }

    pub fn exact_zero() -> Self {
        Self::zero(Order::Infinite)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::new(1, vec![(0, c)], Order::Infinite)
    }

    /// `c λ^{num/ram}`, exact.
    pub fn monomial(c: Coeff, num: i64, ram: u32) -> Self {
        Self::new(ram, vec![(num, c)], Order::Infinite)
    }

    /// An exact polynomial in λ from its coefficients `[a_0, a_1, …]`.
    pub fn from_poly(coeffs: &[Coeff]) -> Self {
        Self::new(
            1,
            coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())).collect(),
            Order::Infinite,
        )
    }

    /// Builds a jet from rational exponents.
    pub fn from_rational_terms(terms: Vec<(Rational64, Coeff)>, trunc: Order) -> Self {
        let ram = terms.iter().fold(1i64, |acc, (e, _)| acc.lcm(e.denom()));
        let terms = terms
            .into_iter()
            .map(|(e, c)| ((e * ram).to_integer(), c))
            .collect();
        Self::new(ram as u32, terms, trunc)
    }

    fn minimize_ram(&mut self) {
        let g = self
            .terms
            .iter()
            .fold(self.ram as i64, |acc, (e, _)| acc.gcd(e));
        if g > 1 {
            self.ram /= g as u32;
            for (e, _) in &mut self.terms {
                *e /= g;
            }
        }
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn trunc(&self) -> Order {
        self.trunc
    }

    pub fn raw_terms(&self) -> &[(i64, Coeff)] {
        &self.terms
    }

    /// Terms with rational exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &Coeff)> + '_ {
        let r = self.ram as i64;
        self.terms.iter().map(move |(e, c)| (Rational64::new(*e, r), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// No known nonzero term (the jet may still be nonzero beyond `trunc`).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    pub fn is_numeric_free(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_exact())
    }

    /// Exponent of the leading known term.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms().next().map(|(e, _)| e)
    }

    /// Lower bound on the valuation: the leading exponent, or the truncation
    /// order for a jet with no known term.
    pub fn valuation_bound(&self) -> Order {
        match self.valuation() {
            Some(v) => Order::At(v),
            None => self.trunc,
        }
    }

    pub fn leading(&self) -> Option<(Rational64, &Coeff)> {
        self.terms().next()
    }

    pub fn coeff_at(&self, exp: Rational64) -> Coeff {
        self.terms()
            .find(|(e, _)| *e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    /// Same jet over the ramification `ram * k` (not minimized).
    fn lifted_terms(&self, ram: u32) -> Vec<(i64, Coeff)> {
        assert_eq!(ram % self.ram, 0, "target ramification must be a multiple");
        let k = (ram / self.ram) as i64;
        self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect()
    }

    pub fn truncate(&self, order: Order) -> PuiseuxJet {
        PuiseuxJet::new(self.ram, self.terms.clone(), self.trunc.min(order))
    }

    /// Treats the known part as exact.
    pub fn as_exact(&self) -> PuiseuxJet {
        PuiseuxJet { ram: self.ram, terms: self.terms.clone(), trunc: Order::Infinite }
    }

    pub fn scale(&self, c: &Coeff) -> PuiseuxJet {
        if c.is_zero() {
            return PuiseuxJet::zero(self.trunc.max(Order::Infinite));
        }
        PuiseuxJet::new(self.ram, self.terms.iter().map(|(e, a)| (*e, a * c)).collect(), self.trunc)
    }

    /// Multiplies by `c λ^{exp}`.
    pub fn mul_monomial(&self, c: &Coeff, exp: Rational64) -> PuiseuxJet {
        self.mul(&PuiseuxJet::from_rational_terms(vec![(exp, c.clone())], Order::Infinite))
    }

    pub fn neg(&self) -> PuiseuxJet {
        self.scale(&Coeff::int(-1))
    }

    pub fn add(&self, other: &PuiseuxJet) -> PuiseuxJet {
        let ram = lcm(self.ram, other.ram);
        let mut terms = self.lifted_terms(ram);
        terms.extend(other.lifted_terms(ram));
        PuiseuxJet::new(ram, terms, self.trunc.min(other.trunc))
    }

    pub fn sub(&self, other: &PuiseuxJet) -> PuiseuxJet {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PuiseuxJet) -> PuiseuxJet {
        let trunc = (self.valuation_bound() + other.trunc).min(other.valuation_bound() + self.trunc);
        let ram = lcm(self.ram, other.ram);
        let a = self.lifted_terms(ram);
        let b = other.lifted_terms(ram);
        let limit = trunc.finite().map(|t| (t * ram as i64).floor().to_integer());
        let mut out = Vec::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                if limit.map_or(true, |l| ea + eb <= l) {
                    out.push((ea + eb, ca * cb));
                }
            }
        }
        PuiseuxJet::new(ram, out, trunc)
    }

    pub fn pow(&self, n: u32) -> PuiseuxJet {
        let mut acc = PuiseuxJet::constant(Coeff::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self) -> PuiseuxJet {
        PuiseuxJet::new(self.ram, self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(), self.trunc)
    }

    /// Whether both jets are known through `order` and agree there.
    pub fn agree_to(&self, other: &PuiseuxJet, order: Rational64) -> bool {
        let o = Order::At(order);
        if self.trunc < o || other.trunc < o {
            return false;
        }
        let diff = self.truncate(o).sub(&other.truncate(o));
        diff.is_zero()
    }

    /// Equality of known parts and truncation orders.
    pub fn same_as(&self, other: &PuiseuxJet) -> bool {
        self.trunc == other.trunc && self.sub(other).is_zero()
    }

    /// Principal-branch value at complex λ: `λ^{p/τ} = exp((p/τ) log λ)`.
    pub fn eval_complex(&self, lambda: &Complex, prec: u32) -> Complex {
        let mut acc = Complex::new(prec);
        if self.terms.is_empty() {
            return acc;
        }
        let log = Complex::with_val(prec, lambda.ln_ref());
        for (e, c) in &self.terms {
            let t = if *e == 0 {
                c.to_complex(prec)
            } else {
                let pw = Complex::with_val(prec, &log * *e) / self.ram;
                c.to_complex(prec) * pw.exp()
            };
            acc += t;
        }
        acc
    }

    /// Value at real `λ > 0`.
    pub fn eval_positive(&self, lambda: &Float, prec: u32) -> Complex {
        assert!(lambda.cmp0() == Some(std::cmp::Ordering::Greater));
        let root = Float::with_val(prec, lambda.root_ref(self.ram));
        let mut acc = Complex::new(prec);
        for (e, c) in &self.terms {
            let pw = root.clone().pow(*e as i32);
            acc += c.to_complex(prec) * pw;
        }
        acc
    }

    /// The coefficient of `λ^{p/τ}` on the half-axis λ < 0 written as
    /// `λ = -s`: `γ · e^{iπ p/τ}` for the principal branch.
    pub fn negative_axis_coeffs(&self, prec: u32) -> Vec<(Rational64, Coeff)> {
        self.terms()
            .map(|(e, c)| {
                let w = unit_root(*e.numer(), *e.denom(), prec);
                (e, Coeff::Numeric(c.to_complex(prec) * w))
            })
            .collect()
    }
}

/// Jet equality compares known parts and truncation.
impl PartialEq for PuiseuxJet {
    fn eq(&self, other: &PuiseuxJet) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for PuiseuxJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, c) = c.sign_split();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = if e == Rational64::from_integer(1) {
                "λ".to_string()
            } else if e.is_integer() {
                format!("λ^{e}")
            } else {
                format!("λ^({e})")
            };
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{c}*{power}")?;
            }
        }
        if let Order::At(t) = self.trunc {
            write!(f, " + o(λ^{t})")?;
        }
        Ok(())
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

/// A polynomial in one unknown whose coefficients are jets.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoly {
    /// `coeffs[k]` multiplies `y^k`.
    pub coeffs: Vec<PuiseuxJet>,
}

impl JetPoly {
    pub fn new(mut coeffs: Vec<PuiseuxJet>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(PuiseuxJet::exact_zero());
        }
        JetPoly { coeffs }
    }

    /// Views a polynomial in λ and `x_var` only as a jet polynomial in `x_var`.
    pub fn from_bivariate(f: &MultiPoly, var: usize) -> Result<Self> {
        let mut buckets: Vec<Vec<Coeff>> = vec![Vec::new(); f.degree_in(var) as usize + 1];
        for (e, c) in f.terms() {
            if e.iter().enumerate().any(|(i, &k)| i != 0 && i != var && k > 0) {
                return Err(Error::Input("polynomial involves other unknowns".into()));
            }
            let row = &mut buckets[e[var] as usize];
            let k = e[0] as usize;
            if row.len() <= k {
                row.resize(k + 1, Coeff::zero());
            }
            row[k] = &row[k] + c;
        }
        Ok(JetPoly::new(buckets.iter().map(|r| PuiseuxJet::from_poly(r)).collect()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> PuiseuxJet {
        self.coeffs.get(k).cloned().unwrap_or_else(PuiseuxJet::exact_zero)
    }

    pub fn derivative(&self) -> JetPoly {
        JetPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Coeff::int(k as i64)))
                .collect(),
        )
    }

    /// Value at a jet, by Horner's rule.
    pub fn eval(&self, y: &PuiseuxJet) -> PuiseuxJet {
        let mut acc = PuiseuxJet::exact_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(y).add(c);
        }
        acc
    }

    /// `G(y + s)` expanded in `y`.
    pub fn shift(&self, s: &PuiseuxJet) -> JetPoly {
        self.shift_head(s, self.degree())
    }

    /// The first `m + 1` coefficients of `g(s + y)`, by repeated synthetic
    /// division by `y - s`.
    pub fn shift_head(&self, s: &PuiseuxJet, m: usize) -> JetPoly {
        let mut a = self.coeffs.clone();
        let mut out = Vec::with_capacity(m + 1);
        while out.len() <= m && !a.is_empty() {
            let d = a.len() - 1;
            let mut q = Vec::with_capacity(d);
            let mut acc = a[d].clone();
            for k in (0..d).rev() {
                q.push(acc.clone());
                acc = a[k].add(&s.mul(&acc));
            }
            q.reverse();
            out.push(acc);
            a = q;
        }
        JetPoly::new(out)
    }

    pub fn conj(&self) -> JetPoly {
        JetPoly::new(self.coeffs.iter().map(PuiseuxJet::conj).collect())
    }

    pub fn ram(&self) -> u32 {
        self.coeffs.iter().fold(1, |acc, c| lcm(acc, c.ram()))
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*y^{k}")?;
        }
        Ok(())
    }
}

/// Assignment of jets to unknowns, keyed by unknown index (1-based).
pub type Assignment = BTreeMap<usize, PuiseuxJet>;

fn compose_terms(
    f: &MultiPoly,
    assignment: &Assignment,
    free_var: Option<usize>,
) -> Result<Vec<PuiseuxJet>> {
    let deg = free_var.map_or(0, |v| f.degree_in(v) as usize);
    let mut out = vec![PuiseuxJet::exact_zero(); deg + 1];
    let mut powers: BTreeMap<(usize, u32), PuiseuxJet> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut t = PuiseuxJet::monomial(c.clone(), e[0] as i64, 1);
        let mut slot = 0;
        for (v, &k) in e.iter().enumerate().skip(1) {
            if k == 0 {
                continue;
            }
            if Some(v) == free_var {
                slot = k as usize;
                continue;
            }
            let jet = assignment
                .get(&v)
                .ok_or_else(|| Error::Input(format!("no jet assigned to x{v}")))?;
            let p = powers.entry((v, k)).or_insert_with(|| jet.pow(k));
            t = t.mul(p);
        }
        out[slot] = out[slot].add(&t);
    }
    Ok(out)
}

/// The jet of `f(λ, jets…)`.
pub fn compose(f: &MultiPoly, assignment: &Assignment) -> Result<PuiseuxJet> {
    Ok(compose_terms(f, assignment, None)?.pop().expect("one slot"))
}

/// The univariate slice `f(λ, jets…, y)` with `y = x_free`.
pub fn compose_slice(f: &MultiPoly, assignment: &Assignment, free_var: usize) -> Result<JetPoly> {
    Ok(JetPoly::new(compose_terms(f, assignment, Some(free_var))?))
}

/// Exponent helper for tests and callers: `p/q` as a `Rational64`.
pub fn exp(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::ratio(n, d)
    }

    #[test]
    fn ramification_is_minimized() {
        let j = PuiseuxJet::new(4, vec![(2, q(1, 1)), (6, q(1, 2))], Order::Infinite);
        assert_eq!(j.ram(), 2);
        assert_eq!(j.raw_terms()[1].0, 3);
    }

    #[test]
    fn product_truncation_is_weakest_guarantee() {
        // (λ + o(λ^3)) (λ^2 + o(λ^4)) known to order min(1+4, 2+3) = 5
        let a = PuiseuxJet::new(1, vec![(1, q(1, 1))], Order::int(3));
        let b = PuiseuxJet::new(1, vec![(2, q(1, 1))], Order::int(4));
        let p = a.mul(&b);
        assert_eq!(p.trunc(), Order::int(5));
        assert_eq!(p.valuation(), Some(exp(3, 1)));
    }

    #[test]
    fn compose_exact_root_gives_zero() {
        // x1^2 - λ at x1 = λ^{1/2}
        let f = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let mut a = Assignment::new();
        a.insert(1, PuiseuxJet::monomial(Coeff::one(), 1, 2));
        let r = compose(&f, &a).unwrap();
        assert!(r.is_exact_zero());
        // truncated input: zero up to its guaranteed order
        a.insert(1, PuiseuxJet::new(2, vec![(1, Coeff::one())], Order::int(3)));
        let r = compose(&f, &a).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.trunc(), Order::At(exp(7, 2)));
    }

    #[test]
    fn compose_direct_expansion() {
        let f = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let mut a = Assignment::new();
        a.insert(1, PuiseuxJet::monomial(Coeff::one(), 1, 1));
        let r = compose(&f, &a).unwrap();
        assert_eq!(r, PuiseuxJet::from_poly(&[q(0, 1), q(-1, 1), q(1, 1)]));
    }

    #[test]
    fn compose_slice_with_free_variable() {
        // x2 - x1^2 with x1 = λ + λ^2, free x2  ->  x2 - (λ^2 + 2λ^3 + λ^4)
        let f = MultiPoly::from_int_terms(2, &[(1, &[0, 0, 1]), (-1, &[0, 2, 0])]);
        let mut a = Assignment::new();
        a.insert(1, PuiseuxJet::from_poly(&[q(0, 1), q(1, 1), q(1, 1)]));
        let s = compose_slice(&f, &a, 2).unwrap();
        assert_eq!(s.degree(), 1);
        assert_eq!(s.coeff(1), PuiseuxJet::constant(q(1, 1)));
        assert_eq!(
            s.coeff(0),
            PuiseuxJet::from_poly(&[q(0, 1), q(0, 1), q(-1, 1), q(-2, 1), q(-1, 1)])
        );
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let f = MultiPoly::from_int_terms(1, &[(1, &[0, 3]), (-2, &[1, 1]), (5, &[2, 0])]);
        let g = JetPoly::from_bivariate(&f, 1).unwrap();
        let s = PuiseuxJet::new(2, vec![(1, q(3, 1)), (3, q(-1, 2))], Order::Infinite);
        let y = PuiseuxJet::monomial(q(7, 1), 5, 2);
        let lhs = g.shift(&s).eval(&y);
        let rhs = g.eval(&s.add(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn high_degree_shift_is_exact() {
        // y^80 at 1 + y: the middle coefficient is C(80, 40), beyond i64
        let mut coeffs = vec![PuiseuxJet::exact_zero(); 80];
        coeffs.push(PuiseuxJet::constant(q(1, 1)));
        let h = JetPoly::new(coeffs).shift(&PuiseuxJet::constant(q(1, 1)));
        let c40: rug::Integer = rug::Integer::from(rug::Integer::binomial_u(80, 40));
        assert_eq!(h.coeff(40), PuiseuxJet::constant(Coeff::Exact(rug::Rational::from(c40))));
        assert_eq!(h.coeff(0), PuiseuxJet::constant(q(1, 1)));
    }

    fn arb_jet() -> impl Strategy<Value = PuiseuxJet> {
        (1u32..4, prop::collection::vec((0i64..12, -6i64..6), 0..5), 4i64..10).prop_map(
            |(ram, ts, t)| {
                PuiseuxJet::new(
                    ram,
                    ts.into_iter().map(|(e, c)| (e, Coeff::int(c))).collect(),
                    Order::int(t),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn lifting_ramification_round_trips(j in arb_jet(), k in 1u32..4) {
            let lifted = PuiseuxJet::new(j.ram() * k, j.lifted_terms(j.ram() * k), j.trunc());
            prop_assert_eq!(lifted, j);
        }

        #[test]
        fn compose_is_linear(a in arb_jet(), c1 in -3i64..3, c2 in -3i64..3) {
            let f = MultiPoly::from_int_terms(1, &[(c1, &[0, 2]), (1, &[1, 1])]);
            let g = MultiPoly::from_int_terms(1, &[(c2, &[0, 3]), (-1, &[2, 0])]);
            let mut asg = Assignment::new();
            asg.insert(1, a);
            let lhs = compose(&(&f + &g), &asg).unwrap();
            let rhs = compose(&f, &asg).unwrap().add(&compose(&g, &asg).unwrap());
            let t = lhs.trunc().min(rhs.trunc());
            prop_assert_eq!(lhs.truncate(t), rhs.truncate(t));
        }
    }
}
