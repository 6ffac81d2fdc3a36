//! Exact rational and high-precision complex coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

/// Working precision used when none is requested.
pub const DEFAULT_PRECISION: u32 = 256;

/// A polynomial or jet coefficient.
///
/// Exact values are rationals kept in lowest terms with a positive
/// denominator (guaranteed by GMP). Numeric values are complex floats whose
/// precision is the precision tag.
#[derive(Clone, Debug)]
pub enum Coeff {
    Exact(Rational),
    Numeric(Complex),
}

/// Numeric magnitudes at or below `2^(-prec/2)` count as zero.
pub fn zero_tolerance(prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(Rational::new())
    }

    pub fn one() -> Self {
        Coeff::Exact(Rational::from(1))
    }

    pub fn int(v: i64) -> Self {
        Coeff::Exact(Rational::from(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff::Exact(Rational::from((num, den)))
    }

    pub fn numeric(re: f64, im: f64, prec: u32) -> Self {
        Coeff::Numeric(Complex::with_val(prec, (re, im)))
    }

    /// The imaginary unit at the given precision.
    pub fn i(prec: u32) -> Self {
        Coeff::Numeric(Complex::with_val(prec, (0, 1)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Coeff::Exact(_) => None,
            Coeff::Numeric(c) => Some(c.prec().0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(r) => r.cmp0() == Ordering::Equal,
            Coeff::Numeric(c) => {
                let prec = c.prec().0;
                let mag = Float::with_val(prec, c.abs_ref());
                mag <= zero_tolerance(prec)
            }
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Exact(r) => *r == 1,
            Coeff::Numeric(_) => (self - &Coeff::one()).is_zero(),
        }
    }

    /// Value as a complex number at `prec` bits.
    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Coeff::Exact(r) => Complex::with_val(prec, r),
            Coeff::Numeric(c) => Complex::with_val(prec, c),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            Coeff::Exact(r) => (r.to_f64(), 0.0),
            Coeff::Numeric(c) => (c.real().to_f64(), c.imag().to_f64()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coeff::Exact(r) => Some(r),
            Coeff::Numeric(_) => None,
        }
    }

    /// Converts to the numeric representation at `prec` bits.
    pub fn to_numeric(&self, prec: u32) -> Coeff {
        Coeff::Numeric(self.to_complex(prec))
    }

    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Exact(r) => Coeff::Exact(r.clone()),
            Coeff::Numeric(c) => Coeff::Numeric(c.clone().conj()),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Coeff::Exact(_) => true,
            Coeff::Numeric(c) => {
                let prec = c.prec().0;
                Float::with_val(prec, c.imag().abs_ref()) <= zero_tolerance(prec)
            }
        }
    }

    /// Magnitude as an `f64`, for diagnostics and ordering heuristics.
    /// `(true, -c)` for a negative rational, `(false, c)` otherwise.
    pub fn sign_split(&self) -> (bool, Coeff) {
        match self {
            Coeff::Exact(r) if *r < 0 => (true, Coeff::Exact(Rational::from(-r))),
            _ => (false, self.clone()),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        match self {
            Coeff::Exact(r) => r.to_f64().abs(),
            Coeff::Numeric(c) => Float::with_val(c.prec().0, c.abs_ref()).to_f64(),
        }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        match self {
            Coeff::Exact(r) => Coeff::Exact(Rational::from(r.pow(e))),
            Coeff::Numeric(c) => Coeff::Numeric(Complex::with_val(c.prec().0, c.pow(e))),
        }
    }

    pub fn inv(&self) -> Coeff {
        &Coeff::one() / self
    }

    /// Deterministic total order: real part, then imaginary part.
    pub fn canonical_cmp(&self, other: &Coeff) -> Ordering {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a.cmp(b),
            _ => {
                let prec = self.precision().max(other.precision()).unwrap_or(DEFAULT_PRECISION);
                let (a, b) = (self.to_complex(prec), other.to_complex(prec));
                let tol = zero_tolerance(prec);
                let dre = Float::with_val(prec, a.real() - b.real());
                if Float::with_val(prec, dre.abs_ref()) > tol {
                    return dre.cmp0().unwrap_or(Ordering::Equal);
                }
                let dim = Float::with_val(prec, a.imag() - b.imag());
                if Float::with_val(prec, dim.abs_ref()) > tol {
                    return dim.cmp0().unwrap_or(Ordering::Equal);
                }
                Ordering::Equal
            }
        }
    }

    /// Tries to recognise a numeric value as a rational with denominator at
    /// most `max_den`. Only the continued-fraction convergents are tried; the
    /// caller must confirm the candidate exactly.
    pub fn rational_candidates(&self, max_den: &Integer) -> Vec<Rational> {
        let c = match self {
            Coeff::Exact(r) => return vec![r.clone()],
            Coeff::Numeric(c) => c,
        };
        if !self.is_real() {
            return Vec::new();
        }
        let Some(mut x) = c.real().to_rational() else {
            return Vec::new();
        };
        // convergents h/k of the continued fraction of x
        let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
        let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
        let mut out = Vec::new();
        for _ in 0..64 {
            let a = x.clone().floor().into_numer_denom().0;
            let h2 = Integer::from(&a * &h1) + &h0;
            let k2 = Integer::from(&a * &k1) + &k0;
            if k2 > *max_den {
                break;
            }
            out.push(Rational::from((h2.clone(), k2.clone())));
            h0 = std::mem::replace(&mut h1, h2);
            k0 = std::mem::replace(&mut k1, k2);
            let frac = x.clone() - Rational::from(a);
            if frac.cmp0() == Ordering::Equal {
                break;
            }
            x = frac.recip();
        }
        out
    }
}

fn numeric_prec(a: &Coeff, b: &Coeff) -> u32 {
    a.precision().max(b.precision()).unwrap_or(DEFAULT_PRECISION)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &'a Coeff) -> Coeff {
                match (self, rhs) {
                    (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(Rational::from(a $op b)),
                    _ => {
                        let prec = numeric_prec(self, rhs);
                        let a = self.to_complex(prec);
                        let b = rhs.to_complex(prec);
                        Coeff::Numeric(Complex::with_val(prec, &a $op &b))
                    }
                }
            }
        }
        impl $trait for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, rhs: &'a Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division by a zero coefficient");
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(Rational::from(a / b)),
            _ => {
                let prec = numeric_prec(self, rhs);
                let a = self.to_complex(prec);
                let b = rhs.to_complex(prec);
                Coeff::Numeric(Complex::with_val(prec, &a / &b))
            }
        }
    }
}

impl Div for Coeff {
    type Output = Coeff;
    fn div(self, rhs: Coeff) -> Coeff {
        &self / &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::Exact(Rational::from(-a)),
            Coeff::Numeric(c) => Coeff::Numeric(Complex::with_val(c.prec().0, -c)),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

/// Equality is exact for rationals and tolerance-based once a numeric value
/// is involved.
impl PartialEq for Coeff {
    fn eq(&self, other: &Coeff) -> bool {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::int(v)
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Self {
        Coeff::Exact(r)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(r) => write!(f, "{r}"),
            Coeff::Numeric(c) => {
                let digits = f.precision().unwrap_or(12);
                write!(
                    f,
                    "({},{})",
                    c.real().to_string_radix(10, Some(digits)),
                    c.imag().to_string_radix(10, Some(digits))
                )
            }
        }
    }
}

/// `e^{iπ·num/den}` at `prec` bits.
pub fn unit_root(num: i64, den: i64, prec: u32) -> Complex {
    let pi = Float::with_val(prec, Constant::Pi);
    let angle = Float::with_val(prec, pi * num) / den;
    Complex::with_val(prec, (Float::new(prec), angle)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_in_lowest_terms() {
        let a = Coeff::ratio(2, 4);
        let b = Coeff::ratio(-1, 6);
        let s = &a + &b;
        assert_eq!(s.as_rational().unwrap(), &Rational::from((1, 3)));
        let q = &a / &b;
        assert_eq!(q.as_rational().unwrap(), &Rational::from(-3));
    }

    #[test]
    fn numeric_zero_uses_precision_tolerance() {
        let tiny = Coeff::Numeric(Complex::with_val(256, (1e-50, 0)));
        assert!(tiny.is_zero());
        let small = Coeff::Numeric(Complex::with_val(256, (1e-30, 0)));
        assert!(!small.is_zero());
    }

    #[test]
    fn mixing_exact_and_numeric_promotes() {
        let a = Coeff::ratio(1, 3);
        let b = Coeff::numeric(0.0, 1.0, 128);
        let p = &a * &b;
        assert_eq!(p.precision(), Some(128));
        assert!(!p.is_real());
        assert!(p.conj() == -&p);
    }

    #[test]
    fn rational_reconstruction_finds_simple_fraction() {
        let third = Coeff::Numeric(Complex::with_val(256, &Rational::from((-7, 3))));
        let cands = third.rational_candidates(&Integer::from(100));
        assert!(cands.contains(&Rational::from((-7, 3))));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = Coeff::numeric(1.0, -1.0, 128);
        let b = Coeff::numeric(1.0, 1.0, 128);
        let c = Coeff::int(2);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
    }
}
