//! Branches of a single equation f(λ, x) = 0 from the Newton polygon.

use num_rational::Rational64;
use smallsol::puiseux::puiseux_branches;
use smallsol::MultiPoly;

fn main() -> smallsol::Result<()> {
    // (x - λ)^2 - λ^3
    let f = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-2, &[1, 1]), (1, &[2, 0]), (-1, &[3, 0])]);
    for b in puiseux_branches(&f, Rational64::from_integer(6), 256)? {
        let cert = b.certificate.as_ref().map(|c| format!("defined from order {}", c.order));
        println!("x = {}  ({})", b.jet, cert.unwrap_or_else(|| "not simple".into()));
    }
    Ok(())
}
