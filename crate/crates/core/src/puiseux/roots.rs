//! Roots of univariate characteristic polynomials with multiplicities.

use std::cmp::Ordering;

use rug::float::Round;
use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::polycore::{Coeff, MultiPoly};

const GUARD_BITS: u32 = 64;
const MAX_ITERATIONS: usize = 2000;

/// A root and its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Coeff,
    pub multiplicity: usize,
}

/// Roots of `Σ coeffs[k] c^k`, sorted canonically. Exact input is split
/// into square-free parts first; rational roots are returned exactly.
pub fn roots(coeffs: &[Coeff], prec: u32) -> Result<Vec<Root>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(Coeff::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = if coeffs.iter().all(Coeff::is_exact) {
        exact_roots(&coeffs, prec)
    } else {
        numeric_roots(&coeffs, prec)?
    };
    out.sort_by(|a, b| a.value.canonical_cmp(&b.value));
    Ok(out)
}

fn to_poly(coeffs: &[Coeff]) -> MultiPoly {
    let mut p = MultiPoly::zero(1);
    for (k, c) in coeffs.iter().enumerate() {
        p.add_term(vec![0, k as u32], c.clone());
    }
    p
}

fn from_poly(p: &MultiPoly) -> Vec<Coeff> {
    let d = p.degree_in(1) as usize;
    (0..=d).map(|k| p.coeff_of(&[0, k as u32])).collect()
}

/// Yun's square-free decomposition: `(factor, multiplicity)` pairs.
fn square_free(f: &MultiPoly) -> Vec<(MultiPoly, usize)> {
    let df = f.derivative(1);
    let a0 = crate::polycore::gcd(f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(1);
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree_in(1) > 0 {
        let a = crate::polycore::gcd(&b, &d);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        if a.degree_in(1) > 0 {
            out.push((a, i));
        }
        d = &nc - &nb.derivative(1);
        b = nb;
        i += 1;
    }
    out
}

fn exact_roots(coeffs: &[Coeff], prec: u32) -> Vec<Root> {
    let mut out = Vec::new();
    for (factor, mult) in square_free(&to_poly(coeffs)) {
        let factor = factor.integer_primitive();
        let fc = from_poly(&factor);
        let lc = fc.last().unwrap().as_rational().unwrap().numer().clone().abs();
        for z in aberth(&fc, prec + GUARD_BITS) {
            out.push(Root { value: recognise(&fc, z, &lc, prec), multiplicity: mult });
        }
    }
    out
}

fn eval_exact(fc: &[Coeff], x: &Coeff) -> Coeff {
    fc.iter().rev().fold(Coeff::zero(), |acc, c| &(&acc * x) + c)
}

/// Returns the exact rational root near `z` when there is one.
fn recognise(fc: &[Coeff], z: Complex, lc: &Integer, prec: u32) -> Coeff {
    let num = Coeff::Numeric(Complex::with_val(prec, &z));
    if fc.len() == 2 {
        return &(-&fc[0]) / &fc[1];
    }
    let scale = Float::with_val(prec, z.abs_ref()).max(&Float::with_val(prec, 1));
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32))) * scale;
    for q in num.rational_candidates(lc) {
        // a convergent may be a different root of the same factor
        let near = Float::with_val(prec, (Complex::with_val(prec, &z) - Float::with_val(prec, &q)).abs_ref());
        if near > tol {
            continue;
        }
        let cand = Coeff::Exact(q);
        if eval_exact(fc, &cand).is_zero() {
            return cand;
        }
    }
    num
}

fn to_complex_vec(coeffs: &[Coeff], prec: u32) -> Vec<Complex> {
    coeffs.iter().map(|c| c.to_complex(prec)).collect()
}

/// Simultaneous Aberth–Ehrlich iteration for all roots.
fn aberth(coeffs: &[Coeff], prec: u32) -> Vec<Complex> {
    let a = to_complex_vec(coeffs, prec);
    let d = a.len() - 1;
    if d == 1 {
        return vec![-Complex::with_val(prec, &a[0] / &a[1])];
    }
    let lead = Float::with_val(prec, a[d].abs_ref());
    let mut radius = Float::with_val(prec, 0);
    for (k, c) in a.iter().enumerate().take(d) {
        let r = Float::with_val(prec, c.abs_ref()) / &lead;
        let r = r.root((d - k) as u32);
        if r > radius {
            radius = r;
        }
    }
    if radius == 0 {
        radius = Float::with_val(prec, 1);
    }
    let tau = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let angle = Float::with_val(prec, &tau * k as u32) / d as u32 + 0.4f64;
            let w = Complex::with_val(prec, (Float::new(prec), angle)).exp();
            w * &radius
        })
        .collect();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 16)));
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = Float::with_val(prec, 0);
        for k in 0..d {
            let (p, dp) = horner(&a, &z[k], prec);
            if p.is_zero() {
                continue;
            }
            let ratio = Complex::with_val(prec, &p / &dp);
            let mut sum = Complex::new(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = Complex::with_val(prec, &z[k] - zj);
                    sum += diff.recip();
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &ratio * &sum);
            let w = ratio / denom;
            let size = Float::with_val(prec, w.abs_ref());
            let scale = Float::with_val(prec, z[k].abs_ref()).max(&Float::with_val(prec, 1));
            let rel = size / scale;
            if rel > max_step {
                max_step = rel;
            }
            z[k] -= w;
        }
        if max_step < eps {
            break;
        }
    }
    z
}

fn horner(a: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    for c in a.iter().rev() {
        dp = Complex::with_val(prec, &dp * z) + &p;
        p = Complex::with_val(prec, &p * z) + c;
    }
    (p, dp)
}

fn numeric_roots(coeffs: &[Coeff], prec: u32) -> Result<Vec<Root>> {
    let z = aberth(coeffs, prec);
    let cluster_tol = Float::with_val(prec, Float::i_exp(1, -((prec / 4) as i32)));
    let sep_tol = Float::with_val(prec, Float::i_exp(1, -((prec / 8) as i32)));
    let n = z.len();
    let dist = |i: usize, j: usize| -> Float {
        let d = Complex::with_val(prec, &z[i] - &z[j]);
        let scale = Float::with_val(prec, z[i].abs_ref()).max(&Float::with_val(prec, 1));
        Float::with_val(prec, d.abs_ref()) / scale
    };
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if dist(i, j) <= cluster_tol {
                let (a, b) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == b {
                        *l = a;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if label[i] != label[j] {
                let d = dist(i, j);
                if d < sep_tol {
                    return Err(Error::RootSeparation { distance: d.to_f64_round(Round::Nearest) });
                }
            }
        }
    }
    let mut out: Vec<Root> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..n {
        if seen.contains(&label[i]) {
            continue;
        }
        seen.push(label[i]);
        let members: Vec<usize> = (0..n).filter(|&j| label[j] == label[i]).collect();
        let mut sum = Complex::new(prec);
        for &j in &members {
            sum += &z[j];
        }
        let mean = sum / members.len() as u32;
        out.push(Root { value: Coeff::Numeric(mean), multiplicity: members.len() });
    }
    Ok(out)
}

/// Sorting helper exposed for callers that compare roots.
pub fn compare_roots(a: &Root, b: &Root) -> Ordering {
    a.value.canonical_cmp(&b.value)
}
