//! Input systems, λ-power normalization and linear regularization.

use rug::Complex;

use super::coeff::Coeff;
use super::jet::PuiseuxJet;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// A list of equations in `λ` and the unknowns `x_1..x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    nvars: usize,
    equations: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(equations: Vec<MultiPoly>) -> Result<Self> {
        let nvars = equations
            .first()
            .map(MultiPoly::nvars)
            .ok_or_else(|| Error::Input("empty system".into()))?;
        let mut prec = None;
        for (j, f) in equations.iter().enumerate() {
            if f.nvars() != nvars {
                return Err(Error::Input(format!(
                    "equation {} has {} unknowns, expected {nvars}",
                    j + 1,
                    f.nvars()
                )));
            }
            if f.is_zero() {
                return Err(Error::ZeroEquation);
            }
            if let Some(q) = f.precision() {
                match prec {
                    Some(p) if p != q => return Err(Error::PrecisionMismatch(p, q)),
                    _ => prec = Some(q),
                }
            }
        }
        Ok(PolySystem { nvars, equations })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn is_exact(&self) -> bool {
        self.equations.iter().all(MultiPoly::is_exact)
    }

    pub fn is_real(&self) -> bool {
        self.equations.iter().all(MultiPoly::is_real)
    }

    pub fn precision(&self) -> Option<u32> {
        self.equations.iter().find_map(MultiPoly::precision)
    }

    /// Whether every equation vanishes at `λ = 0, x = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.equations.iter().all(|f| f.constant_term().is_zero())
    }
}

/// Splits `f = λ^k g` with `g` not divisible by `λ`.
pub fn normalize_lambda(f: &MultiPoly) -> Result<(MultiPoly, u32)> {
    let k = f.lambda_valuation().ok_or(Error::ZeroEquation)?;
    Ok((f.unshift_lambda(k), k))
}

/// The substitution `x_i = v_i + a_i v_var` (`i ≠ var`), `x_var = v_var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    var: usize,
    /// `shifts[i]` for unknown `i`; index 0 and `var` are unused.
    shifts: Vec<i64>,
}

impl LinearMap {
    pub fn identity(nvars: usize, var: usize) -> Self {
        LinearMap { var, shifts: vec![0; nvars + 1] }
    }

    pub fn new(var: usize, shifts: Vec<i64>) -> Self {
        assert!(var >= 1 && var < shifts.len());
        let mut shifts = shifts;
        shifts[0] = 0;
        shifts[var] = 0;
        LinearMap { var, shifts }
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn nvars(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn shift(&self, i: usize) -> i64 {
        self.shifts[i]
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(|&a| a == 0)
    }

    /// The matrix `L` with `x = L v`, rows and columns indexed by unknowns.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.nvars();
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if i == j {
                            1
                        } else if j == self.var {
                            self.shifts[i]
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `f(λ, L v)` as a polynomial in `v`.
    pub fn apply_poly(&self, f: &MultiPoly) -> MultiPoly {
        let n = f.nvars();
        let mut out = f.clone();
        for i in 1..=n {
            let a = self.shifts.get(i).copied().unwrap_or(0);
            if a != 0 {
                let value =
                    &MultiPoly::var(n, i) + &MultiPoly::var(n, self.var).scale(&Coeff::int(a));
                out = out.substitute(i, &value);
            }
        }
        out
    }

    /// `u = L v` for jets indexed by unknown (slot 0 ignored).
    pub fn apply_jets(&self, v: &[PuiseuxJet]) -> Vec<PuiseuxJet> {
        self.map_jets(v, 1)
    }

    /// `v = L⁻¹ u`.
    pub fn invert_jets(&self, u: &[PuiseuxJet]) -> Vec<PuiseuxJet> {
        self.map_jets(u, -1)
    }

    fn map_jets(&self, v: &[PuiseuxJet], sign: i64) -> Vec<PuiseuxJet> {
        let top = v[self.var].clone();
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                let a = self.shifts.get(i).copied().unwrap_or(0) * sign;
                if a == 0 {
                    x.clone()
                } else {
                    x.add(&top.scale(&Coeff::int(a)))
                }
            })
            .collect()
    }

    /// `u = L v` on complex points indexed by unknown (slot 0 ignored).
    pub fn apply_point(&self, v: &[Complex], sign: i64) -> Vec<Complex> {
        let top = v[self.var].clone();
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                let a = self.shifts.get(i).copied().unwrap_or(0) * sign;
                if a == 0 {
                    x.clone()
                } else {
                    Complex::with_val(x.prec().0, &top * a) + x
                }
            })
            .collect()
    }
}

/// Small integers in schedule order: 0, 1, −1, 2, −2, …
fn schedule_value(k: u64) -> i64 {
    if k == 0 {
        0
    } else if k % 2 == 1 {
        k.div_ceil(2) as i64
    } else {
        -((k / 2) as i64)
    }
}

/// Tuples over `{0, ±1, …, ±m}` of maximal absolute value exactly `m`, in
/// lexicographic schedule order.
fn tuples_at_radius(len: usize, m: u64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (0..=2 * m).map(schedule_value).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        let t: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if m == 0 || t.iter().any(|a| a.unsigned_abs() == m) {
            out.push(t);
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn certified(system: &[MultiPoly], var: usize) -> bool {
    system
        .iter()
        .all(|f| !f.at_lambda_zero().restrict_to(var).is_zero())
}

const MAX_RADIUS: u64 = 8;

/// Finds a substitution after which every `f_j(0, …, 0, x_var) ≢ 0`.
pub fn regularize(system: &PolySystem, var: usize) -> Result<(PolySystem, LinearMap)> {
    let n = system.nvars();
    if var == 0 || var > n {
        return Err(Error::Input(format!("unknown x{var} out of range")));
    }
    let others: Vec<usize> = (1..=n).filter(|&i| i != var).collect();
    for m in 0..=MAX_RADIUS {
        for t in tuples_at_radius(others.len(), m) {
            let mut shifts = vec![0; n + 1];
            for (&i, a) in others.iter().zip(&t) {
                shifts[i] = *a;
            }
            let map = LinearMap::new(var, shifts);
            let eqs: Vec<MultiPoly> =
                system.equations().iter().map(|f| map.apply_poly(f)).collect();
            if certified(&eqs, var) {
                return Ok((PolySystem::new(eqs)?, map));
            }
        }
    }
    Err(Error::RegularizationFailed { var })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn normalize_examples() {
        let f = MultiPoly::from_int_terms(1, &[(1, &[2, 1]), (1, &[3, 0])]);
        let (g, k) = normalize_lambda(&f).unwrap();
        assert_eq!(k, 2);
        assert_eq!(g, MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (1, &[1, 0])]));
        let f = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        assert_eq!(normalize_lambda(&f).unwrap(), (f.clone(), 0));
        let f = MultiPoly::from_int_terms(1, &[(1, &[3, 0])]);
        assert_eq!(normalize_lambda(&f).unwrap(), (MultiPoly::one(1), 3));
        assert_eq!(normalize_lambda(&MultiPoly::zero(1)), Err(Error::ZeroEquation));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = MultiPoly::from_int_terms(2, &[(3, &[2, 1, 0]), (-1, &[4, 0, 2])]);
        let (g, _) = normalize_lambda(&f).unwrap();
        assert_eq!(normalize_lambda(&g).unwrap(), (g.clone(), 0));
    }

    #[test]
    fn regularize_examples() {
        let s = PolySystem::new(vec![MultiPoly::from_int_terms(2, &[(1, &[0, 1, 1])])]).unwrap();
        let (r, map) = regularize(&s, 2).unwrap();
        assert_eq!(map.shift(1), 1);
        assert_eq!(
            r.equations()[0],
            MultiPoly::from_int_terms(2, &[(1, &[0, 0, 2]), (1, &[0, 1, 1])])
        );

        let s = PolySystem::new(vec![MultiPoly::from_int_terms(2, &[(1, &[0, 0, 2]), (-1, &[1, 0, 0])])])
            .unwrap();
        let (r, map) = regularize(&s, 2).unwrap();
        assert!(map.is_identity());
        assert_eq!(r, s);

        let s = PolySystem::new(vec![MultiPoly::from_int_terms(2, &[(1, &[0, 1, 0]), (-1, &[1, 0, 0])])])
            .unwrap();
        let (r, _) = regularize(&s, 2).unwrap();
        assert_eq!(
            r.equations()[0],
            MultiPoly::from_int_terms(2, &[(1, &[0, 1, 0]), (1, &[0, 0, 1]), (-1, &[1, 0, 0])])
        );
    }

    #[test]
    fn schedule_order() {
        let v: Vec<i64> = (0..5).map(schedule_value).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2]);
        assert_eq!(tuples_at_radius(2, 0), vec![vec![0, 0]]);
        assert_eq!(tuples_at_radius(2, 1)[0], vec![0, 1]);
    }

    #[test]
    fn regularize_preserves_values() {
        let prec = 128;
        let f = MultiPoly::from_int_terms(
            3,
            &[(1, &[0, 1, 1, 0]), (2, &[1, 0, 0, 1]), (-1, &[0, 2, 0, 1]), (1, &[2, 0, 0, 0])],
        );
        let g = MultiPoly::from_int_terms(3, &[(1, &[0, 0, 1, 1]), (-1, &[1, 1, 0, 0])]);
        let h = MultiPoly::from_int_terms(3, &[(1, &[0, 1, 0, 0]), (1, &[0, 0, 1, 2])]);
        let s = PolySystem::new(vec![f, g, h]).unwrap();
        let (r, map) = regularize(&s, 3).unwrap();
        let lam = Complex::with_val(prec, (0.3, -0.1));
        let u: Vec<Complex> = [0.0, 0.7, -1.3, 0.45]
            .iter()
            .map(|&x| Complex::with_val(prec, (x, 0.2)))
            .collect();
        let v = map.apply_point(&u, -1);
        for (a, b) in s.equations().iter().zip(r.equations()) {
            let d = Complex::with_val(
                prec,
                a.eval_complex(&lam, &u[1..], prec) - b.eval_complex(&lam, &v[1..], prec),
            );
            assert!(Float::with_val(prec, d.abs_ref()) < 1e-30);
        }
    }
}
