//! Sparse multivariate polynomials in λ, x_1 … x_n.
//!
//! Exponent vectors have length `nvars + 1`; slot 0 is the power of λ and
//! slot `i` the power of `x_i`. Terms are kept in a `BTreeMap`, so iteration
//! order is lexicographic with λ most significant, which doubles as the
//! monomial order for exact division.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Complex, Integer, Rational};

use super::coeff::Coeff;
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Coeff>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars + 1], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    /// The unknown `x_var` (`var >= 1`), or λ for `var == 0`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars + 1];
        e[var] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Coeff::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Coeff) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials and rejecting malformed exponent vectors and mixed
    /// numeric precisions.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coeff, Exponents)>,
    {
        let mut p = Self::zero(nvars);
        let mut prec: Option<u32> = None;
        for (c, e) in terms {
            if e.len() != nvars + 1 {
                return Err(Error::Input(format!(
                    "exponent vector of length {} for {} unknowns",
                    e.len(),
                    nvars
                )));
            }
            if let Some(q) = c.precision() {
                match prec {
                    Some(p0) if p0 != q => return Err(Error::PrecisionMismatch(p0, q)),
                    _ => prec = Some(q),
                }
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(c, e)| (Coeff::int(*c), e.to_vec())))
            .expect("well-formed integer terms")
    }

    pub fn add_term(&mut self, exps: Exponents, c: Coeff) {
        debug_assert_eq!(exps.len(), self.nvars + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Coeff::is_real)
    }

    pub fn precision(&self) -> Option<u32> {
        self.terms.values().filter_map(Coeff::precision).max()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff_of(&vec![0; self.nvars + 1])
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Smallest power of `var` over all terms; `None` for the zero polynomial.
    pub fn valuation_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub fn lambda_valuation(&self) -> Option<u32> {
        self.valuation_in(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Largest variable index that occurs, if any.
    pub fn main_var(&self) -> Option<usize> {
        (0..=self.nvars).rev().find(|&v| self.involves(v))
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by `λ^a x_var^b`-style monomials given as an exponent shift.
    pub fn shift(&self, delta: &[u32]) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let ne = e.iter().zip(delta).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Divides every term by `λ^k`; the caller guarantees divisibility.
    pub fn unshift_lambda(&self, k: u32) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[0] -= k;
            out.terms.insert(ne, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                out.add_term(ne, c * &Coeff::int(e[var] as i64));
            }
        }
        out
    }

    pub fn conj(&self) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.conj());
        }
        out
    }

    /// Substitutes `x_var := value`; `value` may itself involve `x_var`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let view = UniView::new(self, var);
        let mut acc = Self::zero(self.nvars);
        for c in view.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Sets every variable except `keep` (λ included) to zero.
    pub fn restrict_to(&self, keep: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().enumerate().all(|(i, &k)| i == keep || k == 0) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Sets λ to zero.
    pub fn at_lambda_zero(&self) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[0] == 0 {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Removes unknowns with index `> keep` that do not occur.
    pub fn truncate_vars(&self, keep: usize) -> MultiPoly {
        assert!(
            (keep + 1..=self.nvars).all(|v| !self.involves(v)),
            "cannot drop variables that occur"
        );
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            out.terms.insert(e[..=keep].to_vec(), c.clone());
        }
        out
    }

    /// Re-embeds into a ring with more unknowns.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.resize(nvars + 1, 0);
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Numeric evaluation at `λ` and `xs = [x_1, …, x_n]`.
    pub fn eval_complex(&self, lambda: &Complex, xs: &[Complex], prec: u32) -> Complex {
        let mut acc = Complex::new(prec);
        for (e, c) in &self.terms {
            let mut t = c.to_complex(prec);
            if e[0] > 0 {
                t *= Complex::with_val(prec, rug::ops::Pow::pow(lambda, e[0]));
            }
            for (i, &k) in e.iter().enumerate().skip(1) {
                if k > 0 {
                    t *= Complex::with_val(prec, rug::ops::Pow::pow(&xs[i - 1], k));
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lt_e, lt_c) = d.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            let qc = &c / &lt_c;
            let step = d.shift(&qe).scale(&qc);
            rem = &rem - &step;
            // numeric cancellation may leave a residue on the leading monomial
            rem.terms.remove(&e);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `b` in `var`.
    pub fn prem(&self, b: &MultiPoly, var: usize) -> MultiPoly {
        let db = b.degree_in(var);
        let bv = UniView::new(b, var);
        let lcb = bv.leading().clone();
        let mut r = self.clone();
        let da = self.degree_in(var);
        if da < db {
            return r;
        }
        let mut steps = da - db + 1;
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let rv = UniView::new(&r, var);
            let lcr = rv.leading().clone();
            let mut delta = vec![0; self.nvars + 1];
            delta[var] = dr - db;
            let head = UniView::new(&r, var).without_leading();
            let tail = bv.without_leading().shift(&delta);
            r = &(&lcb * &head) - &(&lcr * &tail);
            steps -= 1;
        }
        if steps > 0 {
            r = &r * &lcb.pow(steps);
        }
        r
    }

    /// Scales so the lex-leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// For exact polynomials: the rational multiple with coprime integer
    /// coefficients and positive leading coefficient. Numeric polynomials are
    /// made monic instead.
    pub fn integer_primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        if !self.is_exact() {
            return self.monic();
        }
        let mut den_lcm = Integer::from(1);
        let mut num_gcd = Integer::from(0);
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            den_lcm.lcm_mut(r.denom());
            num_gcd.gcd_mut(r.numer());
        }
        let mut factor = Rational::from((den_lcm, num_gcd));
        if let Some((_, c)) = self.leading_term() {
            if c.as_rational().unwrap().cmp0() == std::cmp::Ordering::Less {
                factor = -factor;
            }
        }
        self.scale(&Coeff::Exact(factor))
    }

    /// Content with respect to `var`: the GCD of the coefficients of the
    /// powers of `x_var`.
    pub fn content_in(&self, var: usize) -> MultiPoly {
        let view = UniView::new(self, var);
        let mut g = Self::zero(self.nvars);
        for c in &view.coeffs {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, c);
            if g.is_constant() {
                break;
            }
        }
        g
    }

    pub fn primitive_part_in(&self, var: usize) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides")
    }
}

/// GCD over the rationals (or complex numerics), normalized monic.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let nvars = a.nvars;
    let var = match a.main_var().max(b.main_var()) {
        None => return MultiPoly::one(nvars),
        Some(v) => v,
    };
    if !a.involves(var) {
        return gcd(a, &b.content_in(var));
    }
    if !b.involves(var) {
        return gcd(&a.content_in(var), b);
    }
    let ca = a.content_in(var);
    let cb = b.content_in(var);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.involves(var) {
        let r = p.prem(&q, var);
        p = q;
        q = if r.is_zero() { r } else { r.primitive_part_in(var).integer_primitive() };
    }
    let g = if q.is_zero() { p.primitive_part_in(var) } else { MultiPoly::one(nvars) };
    (&c * &g).monic()
}

/// A polynomial viewed as univariate in one distinguished unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct UniView {
    pub var: usize,
    /// `coeffs[k]` multiplies `x_var^k`; none of them involves `var`.
    pub coeffs: Vec<MultiPoly>,
}

impl UniView {
    pub fn new(p: &MultiPoly, var: usize) -> Self {
        let deg = p.degree_in(var) as usize;
        let mut coeffs = vec![MultiPoly::zero(p.nvars); deg + 1];
        for (e, c) in &p.terms {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            coeffs[k].terms.insert(ne, c.clone());
        }
        UniView { var, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &MultiPoly {
        self.coeffs.last().expect("nonempty view")
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars
    }

    /// `base - lc·x^deg`, i.e. the polynomial with its leading power removed.
    pub fn without_leading(&self) -> MultiPoly {
        let n = self.coeffs.len() - 1;
        let view = UniView { var: self.var, coeffs: self.coeffs[..n].to_vec() };
        if n == 0 {
            MultiPoly::zero(self.nvars())
        } else {
            view.reassemble()
        }
    }

    pub fn reassemble(&self) -> MultiPoly {
        let nvars = self.nvars();
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut delta = vec![0; nvars + 1];
            delta[self.var] = k as u32;
            for (e, a) in c.shift(&delta).terms {
                out.add_term(e, a);
            }
        }
        out
    }
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Coeff::int(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (neg, c) = c.sign_split();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(c.to_string());
            }
            for (v, &k) in e.iter().enumerate().filter(|(_, &k)| k > 0) {
                let name = if v == 0 { "λ".to_string() } else { format!("x{v}") };
                factors.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(nvars: usize, t: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_int_terms(nvars, t)
    }

    #[test]
    fn rejects_bad_exponent_length() {
        let err = MultiPoly::from_terms(2, vec![(Coeff::one(), vec![1, 0])]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn rejects_mixed_precisions() {
        let err = MultiPoly::from_terms(
            1,
            vec![(Coeff::numeric(1.0, 0.0, 64), vec![0, 1]), (Coeff::numeric(1.0, 0.0, 128), vec![1, 0])],
        )
        .unwrap_err();
        assert_eq!(err, Error::PrecisionMismatch(64, 128));
    }

    #[test]
    fn exact_division_and_failure() {
        // (x1 - λ)(x1 + λ) / (x1 - λ)
        let a = p(1, &[(1, &[0, 2]), (-1, &[2, 0])]);
        let b = p(1, &[(1, &[0, 1]), (-1, &[1, 0])]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, p(1, &[(1, &[0, 1]), (1, &[1, 0])]));
        assert!(a.div_exact(&p(1, &[(1, &[0, 1]), (-2, &[1, 0])])).is_none());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // x2^2 - λ^2 and x2 - λ share x2 - λ
        let a = p(2, &[(1, &[0, 0, 2]), (-1, &[2, 0, 0])]);
        let b = p(2, &[(2, &[0, 0, 1]), (-2, &[1, 0, 0])]);
        let g = gcd(&a, &b);
        assert_eq!(g, p(2, &[(1, &[0, 0, 1]), (-1, &[1, 0, 0])]).monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = p(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let b = p(1, &[(1, &[0, 1]), (1, &[1, 0])]);
        assert_eq!(gcd(&a, &b), MultiPoly::one(1));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(2, &[(3, &[1, 1, 3]), (1, &[0, 0, 1]), (-2, &[2, 0, 0])]);
        let b = p(2, &[(1, &[1, 0, 2]), (1, &[0, 1, 0])]);
        let r = a.prem(&b, 2);
        assert!(r.degree_in(2) < 2);
        // lc(b)^(3-2+1) a - r is divisible by b
        let lc = UniView::new(&b, 2).leading().clone();
        let lhs = &(&lc.pow(2) * &a) - &r;
        assert!(lhs.div_exact(&b).is_some());
    }

    #[test]
    fn substitute_and_restrict() {
        // x2 - x1^2 with x1 := λ + λ^2
        let f = p(2, &[(1, &[0, 0, 1]), (-1, &[0, 2, 0])]);
        let v = p(2, &[(1, &[1, 0, 0]), (1, &[2, 0, 0])]);
        let g = f.substitute(1, &v);
        assert_eq!(g, p(2, &[(1, &[0, 0, 1]), (-1, &[2, 0, 0]), (-2, &[3, 0, 0]), (-1, &[4, 0, 0])]));
        assert_eq!(f.restrict_to(2), p(2, &[(1, &[0, 0, 1])]));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-5i64..=5, prop::collection::vec(0u32..4, 3)), 0..8)
            .prop_map(|ts| {
                MultiPoly::from_terms(2, ts.into_iter().map(|(c, e)| (Coeff::int(c), e))).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn uniview_reassembles_exactly(f in arb_poly(), var in 0usize..3) {
            prop_assert_eq!(UniView::new(&f, var).reassemble(), f);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let (a, b) = (&a * &c, &b * &c);
            let g = gcd(&a, &b);
            if !a.is_zero() { prop_assert!(a.div_exact(&g).is_some()); }
            if !b.is_zero() { prop_assert!(b.div_exact(&g).is_some()); }
            if !c.is_zero() && !a.is_zero() && !b.is_zero() {
                prop_assert!(g.div_exact(&c.monic()).is_some());
            }
        }
    }
}
