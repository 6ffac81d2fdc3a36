//! Certified jets of the small solutions of a square system.

use num_rational::Rational64;
use smallsol::scheme::{solve_effective, SolveOptions};
use smallsol::{MultiPoly, PolySystem};

fn main() -> smallsol::Result<()> {
    // x1 - x2^2 - λ = 0, x2 - x1^2 - λ = 0
    let f1 = MultiPoly::from_int_terms(2, &[(1, &[0, 1, 0]), (-1, &[0, 0, 2]), (-1, &[1, 0, 0])]);
    let f2 = MultiPoly::from_int_terms(2, &[(1, &[0, 0, 1]), (-1, &[0, 2, 0]), (-1, &[1, 0, 0])]);
    let system = PolySystem::new(vec![f1, f2])?;
    let report = solve_effective(&system, &SolveOptions { order: Rational64::from_integer(5), ..Default::default() })?;
    println!("status: {}", report.status.as_str());
    for b in &report.branches {
        for (i, c) in b.components.iter().enumerate() {
            println!("x{} = {c}", i + 1);
        }
        let res: Vec<String> = b.residuals.iter().map(|r| r.to_string()).collect();
        println!("residual valuations: {}, {}", res.join(" "), b.real_class);
    }
    Ok(())
}
