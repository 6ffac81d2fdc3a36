//! Real and complex branches on each half-axis of λ.

use smallsol::scheme::{solve_effective, SolveOptions};
use smallsol::{MultiPoly, PolySystem};

fn main() -> smallsol::Result<()> {
    let x2_eq_x1: &[(i64, &[u32])] = &[(1, &[0, 0, 1]), (-1, &[0, 1, 0])];
    let cases: [(&str, &[(i64, &[u32])]); 3] = [
        ("x1^2 = λ^2", &[(1, &[0, 2, 0]), (-1, &[2, 0, 0])]),
        ("x1^2 = λ", &[(1, &[0, 2, 0]), (-1, &[1, 0, 0])]),
        ("x1^2 = -λ^2", &[(1, &[0, 2, 0]), (1, &[2, 0, 0])]),
    ];
    for (name, first) in cases {
        let system = PolySystem::new(vec![MultiPoly::from_int_terms(2, first), MultiPoly::from_int_terms(2, x2_eq_x1)])?;
        for b in solve_effective(&system, &SolveOptions::default())?.branches {
            println!("{name}: x1 = {}  {}", b.components[0], b.real_class);
        }
    }
    Ok(())
}
