//! Resultants, GCD degree reports and resultant systems over trees.

use crate::error::{Error, Result};
use crate::polycore::{gcd, normalize_lambda, Coeff, MultiPoly, PolySystem, UniView};
use crate::scheme::Tree;

/// The univariate polynomial from a view, with its scalar content removed.
fn split_scalar_content(p: &MultiPoly) -> (Coeff, MultiPoly) {
    let q = p.integer_primitive();
    let (_, lp) = p.leading_term().expect("nonzero");
    let (_, lq) = q.leading_term().expect("nonzero");
    (lp / lq, q)
}

fn lc(p: &MultiPoly, var: usize) -> MultiPoly {
    UniView::new(p, var).leading().clone()
}

fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if b.is_constant() {
        let c = b.constant_term();
        return Some(a.scale(&c.inv()));
    }
    a.div_exact(b)
}

/// `Res_var(p, q)` by the subresultant PRS; the Sylvester matrix carries
/// `p`'s coefficients in its first `deg q` rows.
pub fn resultant(p: &UniView, q: &UniView) -> Result<MultiPoly> {
    assert_eq!(p.var, q.var, "views must share the distinguished unknown");
    let var = p.var;
    for v in [p, q] {
        if v.degree() == 0 {
            return Err(Error::ConstantInEliminatedVariable { var });
        }
    }
    match subresultant(&p.reassemble(), &q.reassemble(), var) {
        Some(r) => Ok(r),
        None => sylvester_resultant(p, q),
    }
}

/// Convenience form of [`resultant`] on whole polynomials.
pub fn resultant_in(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    resultant(&UniView::new(p, var), &UniView::new(q, var))
}

/// Subresultant PRS; `None` when an exact division fails (possible only
/// with numeric coefficients).
fn subresultant(a: &MultiPoly, b: &MultiPoly, var: usize) -> Option<MultiPoly> {
    let nvars = a.nvars();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = Coeff::one();
    if a.degree_in(var) < b.degree_in(var) {
        if a.degree_in(var) % 2 == 1 && b.degree_in(var) % 2 == 1 {
            s = Coeff::int(-1);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (ca, pa) = split_scalar_content(&a);
    let (cb, pb) = split_scalar_content(&b);
    let t = &ca.pow(b.degree_in(var)) * &cb.pow(a.degree_in(var));
    let (mut a, mut b) = (pa, pb);
    let mut g = MultiPoly::one(nvars);
    let mut h = MultiPoly::one(nvars);
    loop {
        let (da, db) = (a.degree_in(var), b.degree_in(var));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b, var);
        a = b;
        b = exact_div(&r, &(&g * &h.pow(delta)))?;
        g = lc(&a, var);
        h = if delta == 0 {
            h
        } else {
            exact_div(&g.pow(delta), &h.pow(delta - 1))?
        };
        if b.is_zero() {
            return Some(MultiPoly::zero(nvars));
        }
        if !b.involves(var) {
            break;
        }
    }
    let da = a.degree_in(var);
    let lb = b;
    let h = if da == 0 {
        h
    } else {
        exact_div(&lb.pow(da), &h.pow(da - 1))?
    };
    Some(h.scale(&(&s * &t)))
}

/// `Res_var(p, q)` as the determinant of the Sylvester matrix, by
/// fraction-free Bareiss elimination.
pub fn sylvester_resultant(p: &UniView, q: &UniView) -> Result<MultiPoly> {
    let var = p.var;
    let (m, n) = (p.degree(), q.degree());
    if m == 0 || n == 0 {
        return Err(Error::ConstantInEliminatedVariable { var });
    }
    let nv = p.nvars();
    let size = m + n;
    let zero = MultiPoly::zero(nv);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = p.coeffs[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = q.coeffs[n - k].clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det(mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let size = mat.len();
    let nv = mat[0][0].nvars();
    let mut sign = Coeff::one();
    let mut prev = MultiPoly::one(nv);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return MultiPoly::zero(nv),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    mat[size - 1][size - 1].scale(&sign)
}

/// Degree of the GCD in the distinguished unknown over the fraction field of
/// the remaining variables.
#[derive(Clone, Debug, PartialEq)]
pub struct GcdReport {
    pub degree: u32,
    /// Primitive GCD, present iff `degree > 0`.
    pub witness: Option<MultiPoly>,
    /// Number of roots of the witness near zero: the order of
    /// `witness(0, …, 0, x_var)` at `x_var = 0`.
    pub small_degree: u32,
}

pub fn gcd_report(polys: &[UniView]) -> Result<GcdReport> {
    if polys.len() < 2 {
        return Err(Error::Input("gcd_report needs at least two polynomials".into()));
    }
    let var = polys[0].var;
    if polys.iter().any(|p| p.var != var) {
        return Err(Error::Input("views must share the distinguished unknown".into()));
    }
    let full: Vec<MultiPoly> = polys.iter().map(UniView::reassemble).collect();
    let mut g = MultiPoly::zero(full[0].nvars());
    for f in &full {
        g = gcd(&g, f);
    }
    if g.is_zero() || !g.involves(var) {
        return Ok(GcdReport { degree: 0, witness: None, small_degree: 0 });
    }
    let mut w = g.primitive_part_in(var).integer_primitive();
    if lc(&w, var).integer_primitive() != lc(&w, var) {
        w = -&w;
    }
    for f in &full {
        if !f.prem(&w, var).is_zero() {
            return Err(Error::Input("gcd witness failed pseudo-division check".into()));
        }
    }
    let degree = w.degree_in(var);
    let axis = w.restrict_to(var);
    let small_degree = if axis.is_zero() {
        degree
    } else {
        axis.valuation_in(var).unwrap_or(0)
    };
    Ok(GcdReport { degree, witness: Some(w), small_degree })
}

fn edge_resultant(system: &PolySystem, var: usize, edge: (usize, usize)) -> Result<MultiPoly> {
    let eqs = system.equations();
    let (a, b) = edge;
    let r = resultant_in(&eqs[a - 1], &eqs[b - 1], var)?;
    if r.is_zero() {
        return Err(Error::DegenerateEdge { level: var, edge });
    }
    let (g, _) = normalize_lambda(&r)?;
    Ok(g.integer_primitive().truncate_vars(var - 1))
}

/// One resultant per tree edge, eliminating `x_var`.
pub fn tree_resultant_system(system: &PolySystem, tree: &Tree, var: usize) -> Result<PolySystem> {
    if tree.n() != system.len() {
        return Err(Error::InvalidTree(format!(
            "tree on {} vertices for {} equations",
            tree.n(),
            system.len()
        )));
    }
    resultant_system(system, tree.edges(), var)
}

/// All pairwise resultants, eliminating `x_var`.
pub fn classical_resultant_system(system: &PolySystem, var: usize) -> Result<PolySystem> {
    let n = system.len();
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    resultant_system(system, &pairs, var)
}

fn resultant_system(system: &PolySystem, edges: &[(usize, usize)], var: usize) -> Result<PolySystem> {
    if system.len() < 2 {
        return Err(Error::Input("elimination needs at least two equations".into()));
    }
    let eqs = edges
        .iter()
        .map(|&e| edge_resultant(system, var, e))
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(eqs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(f: &MultiPoly, var: usize) -> UniView {
        UniView::new(f, var)
    }

    #[test]
    fn resultant_examples() {
        // x - λ, x - λ^2
        let p = MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (-1, &[1, 0])]);
        let q = MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (-1, &[2, 0])]);
        let r = resultant_in(&p, &q, 1).unwrap();
        assert_eq!(r, MultiPoly::from_int_terms(1, &[(1, &[1, 0]), (-1, &[2, 0])]));
        assert!(resultant_in(&p, &p, 1).unwrap().is_zero());
        // x^2 - λ, x - 1
        let p = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let q = MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (-1, &[0, 0])]);
        let r = resultant_in(&p, &q, 1).unwrap();
        assert_eq!(r, MultiPoly::from_int_terms(1, &[(1, &[0, 0]), (-1, &[1, 0])]));
    }

    #[test]
    fn constant_in_eliminated_variable() {
        let p = MultiPoly::from_int_terms(1, &[(1, &[1, 0])]);
        let q = MultiPoly::from_int_terms(1, &[(1, &[0, 1])]);
        assert_eq!(
            resultant_in(&p, &q, 1),
            Err(Error::ConstantInEliminatedVariable { var: 1 })
        );
    }

    #[test]
    fn prs_matches_sylvester_on_trivariate() {
        let p = MultiPoly::from_int_terms(
            2,
            &[(2, &[0, 1, 3]), (-1, &[1, 0, 2]), (3, &[0, 2, 1]), (1, &[2, 0, 0])],
        );
        let q = MultiPoly::from_int_terms(2, &[(1, &[0, 0, 2]), (-5, &[1, 1, 1]), (1, &[0, 3, 0])]);
        for var in 1..=2 {
            let a = resultant(&uni(&p, var), &uni(&q, var)).unwrap();
            let b = sylvester_resultant(&uni(&p, var), &uni(&q, var)).unwrap();
            assert_eq!(a, b, "var {var}");
            let c = resultant(&uni(&q, var), &uni(&p, var)).unwrap();
            let sign = (p.degree_in(var) * q.degree_in(var)) % 2;
            assert_eq!(if sign == 1 { -&c } else { c }, a);
        }
    }

    #[test]
    fn gcd_report_examples() {
        let a = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[2, 0])]);
        let b = MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (-1, &[1, 0])]);
        let g = gcd_report(&[uni(&a, 1), uni(&b, 1)]).unwrap();
        assert_eq!(g.degree, 1);
        assert_eq!(g.witness, Some(b.clone()));

        let a = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let b = MultiPoly::from_int_terms(1, &[(1, &[0, 1]), (1, &[1, 0])]);
        let g = gcd_report(&[uni(&a, 1), uni(&b, 1)]).unwrap();
        assert_eq!((g.degree, g.witness), (0, None));

        let g = gcd_report(&[uni(&a, 1), uni(&a, 1)]).unwrap();
        assert_eq!(g.degree, 2);
        assert_eq!(g.witness, Some(a));
    }
}
