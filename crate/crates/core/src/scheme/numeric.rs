//! Numeric cross-checks: Newton's method on the original system started at
//! the value of a branch.

use num_rational::Rational64;
use rug::float::Round;
use rug::{Complex, Float};

use crate::polycore::{MultiPoly, Order, PolySystem, PuiseuxJet};

const MAX_NEWTON_STEPS: usize = 200;

/// One evaluation of a branch against a nearby exact root.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSample {
    pub lambda: f64,
    /// Largest componentwise distance between the root and the jet value.
    pub distance: f64,
    /// Largest residual of the equations at the refined root.
    pub residual: f64,
    pub converged: bool,
}

fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64_round(Round::Nearest)
}

/// Values of the components at `λ`; the principal branch of `λ^{1/τ}` is
/// used, which is the real root for `λ > 0`.
pub fn branch_value(components: &[PuiseuxJet], lambda: f64, prec: u32) -> Vec<Complex> {
    if lambda > 0.0 {
        let l = Float::with_val(prec, lambda);
        components.iter().map(|j| j.eval_positive(&l, prec)).collect()
    } else {
        let l = Complex::with_val(prec, (lambda, 0));
        components.iter().map(|j| j.eval_complex(&l, prec)).collect()
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<Complex>>, mut b: Vec<Complex>, prec: u32) -> Option<Vec<Complex>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            let (x, y) = (Float::with_val(prec, a[i][col].abs_ref()), Float::with_val(prec, a[j][col].abs_ref()));
            x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = Complex::with_val(prec, &a[row][col] / &a[col][col]);
            for k in col..n {
                let t = Complex::with_val(prec, &factor * &a[col][k]);
                a[row][k] -= t;
            }
            let t = Complex::with_val(prec, &factor * &b[col]);
            b[row] -= t;
        }
    }
    let mut x = vec![Complex::new(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= Complex::with_val(prec, &a[row][k] * &x[k]);
        }
        x[row] = acc / &a[row][row];
    }
    Some(x)
}

/// Newton iteration for the system at fixed `λ`.
pub fn newton_refine(
    system: &PolySystem,
    lambda: &Complex,
    start: &[Complex],
    prec: u32,
) -> (Vec<Complex>, bool) {
    let n = system.nvars();
    let eqs = system.equations();
    let jac: Vec<Vec<MultiPoly>> = eqs.iter().map(|f| (1..=n).map(|v| f.derivative(v)).collect()).collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32 * 3 / 4)));
    let mut x = start.to_vec();
    for _ in 0..MAX_NEWTON_STEPS {
        let f: Vec<Complex> = eqs.iter().map(|e| e.eval_complex(lambda, &x, prec)).collect();
        let j: Vec<Vec<Complex>> =
            jac.iter().map(|row| row.iter().map(|d| d.eval_complex(lambda, &x, prec)).collect()).collect();
        let Some(step) = solve_linear(j, f, prec) else {
            return (x, false);
        };
        let mut size = Float::with_val(prec, 0);
        for (xi, si) in x.iter_mut().zip(&step) {
            *xi -= si;
            let s = Float::with_val(prec, si.abs_ref());
            if s > size {
                size = s;
            }
        }
        if size < tol {
            return (x, true);
        }
    }
    (x, false)
}

/// Refines the branch value at each `λ` and measures the distance.
pub fn numeric_check(system: &PolySystem, components: &[PuiseuxJet], lambdas: &[f64], prec: u32) -> Vec<NumericSample> {
    lambdas
        .iter()
        .map(|&lambda| {
            let start = branch_value(components, lambda, prec);
            let l = Complex::with_val(prec, (lambda, 0));
            let (root, converged) = newton_refine(system, &l, &start, prec);
            let distance = root
                .iter()
                .zip(&start)
                .map(|(a, b)| abs_f64(&Complex::with_val(prec, a - b)))
                .fold(0.0, f64::max);
            let residual = system
                .equations()
                .iter()
                .map(|e| abs_f64(&e.eval_complex(&l, &root, prec)))
                .fold(0.0, f64::max);
            NumericSample { lambda, distance, residual, converged }
        })
        .collect()
}

/// Error-order check: with `e = T + 1/τ`, fits `C = err(λ₁)/λ₁^e` and
/// requires `err(λ₂) ≤ slack · C · λ₂^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceCheck {
    pub exponent: f64,
    pub samples: Vec<NumericSample>,
    pub constant: f64,
    pub pass: bool,
}

pub fn convergence_check(
    system: &PolySystem,
    components: &[PuiseuxJet],
    lambdas: (f64, f64),
    slack: f64,
    prec: u32,
) -> ConvergenceCheck {
    let samples = numeric_check(system, components, &[lambdas.0, lambdas.1], prec);
    let ram = components.iter().fold(1u32, |acc, j| num_integer::lcm(acc, j.ram()));
    let trunc = components.iter().map(|j| j.trunc()).min().unwrap_or(Order::Infinite);
    let converged = samples.iter().all(|s| s.converged);
    let Order::At(t) = trunc else {
        // exact branches: the jet is the root itself
        let pass = converged && samples.iter().all(|s| s.distance <= 1e-30);
        return ConvergenceCheck { exponent: f64::INFINITY, samples, constant: 0.0, pass };
    };
    let e = t + Rational64::new(1, ram as i64);
    let exponent = *e.numer() as f64 / *e.denom() as f64;
    let constant = samples[0].distance / lambdas.0.powf(exponent);
    let bound = slack * constant * lambdas.1.powf(exponent);
    let pass = converged && samples[1].distance <= bound.max(1e-60);
    ConvergenceCheck { exponent, samples, constant, pass }
}
