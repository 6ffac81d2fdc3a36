//! Eliminating an unknown with resultants, and the GCD degree report.

use smallsol::elimination::{gcd_report, resultant_in, sylvester_resultant};
use smallsol::{MultiPoly, UniView};

fn main() -> smallsol::Result<()> {
    // p = x2^2 - λ x1, q = x2 - x1 - λ, eliminate x2
    let p = MultiPoly::from_int_terms(2, &[(1, &[0, 0, 2]), (-1, &[1, 1, 0])]);
    let q = MultiPoly::from_int_terms(2, &[(1, &[0, 0, 1]), (-1, &[0, 1, 0]), (-1, &[1, 0, 0])]);
    let r = resultant_in(&p, &q, 2)?;
    let s = sylvester_resultant(&UniView::new(&p, 2), &UniView::new(&q, 2))?;
    println!("Res = {r}");
    println!("agrees with the Sylvester determinant: {}", (&r - &s).is_zero());

    let a = &p * &q;
    let b = &q * &MultiPoly::from_int_terms(2, &[(1, &[0, 0, 1]), (1, &[1, 0, 0])]);
    let g = gcd_report(&[UniView::new(&a, 2), UniView::new(&b, 2)])?;
    println!("gcd degree in x2: {}, small roots: {}", g.degree, g.small_degree);
    Ok(())
}
