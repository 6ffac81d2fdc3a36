//! GCD degree tests separating finite, empty and positive-dimensional cases.

use smallsol::scheme::detect_families;
use smallsol::{MultiPoly, PolySystem};

fn main() -> smallsol::Result<()> {
    let cases: [(&str, [&[(i64, &[u32])]; 2]); 3] = [
        ("x2 - x1, x2 + x1 - λ", [&[(1, &[0, 0, 1]), (-1, &[0, 1, 0])], &[(1, &[0, 0, 1]), (1, &[0, 1, 0]), (-1, &[1, 0, 0])]]),
        ("x2^2 - λ, x2^2 - 2λ", [&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 2]), (-2, &[1, 0, 0])]]),
        ("x2 (x2 - λ), x2 (x2 - x1)", [&[(1, &[0, 0, 2]), (-1, &[1, 0, 1])], &[(1, &[0, 0, 2]), (-1, &[0, 1, 1])]]),
    ];
    for (name, eqs) in cases {
        let system = PolySystem::new(eqs.iter().map(|t| MultiPoly::from_int_terms(2, t)).collect())?;
        let r = detect_families(&system)?;
        let degs: Vec<String> = r.levels.iter().map(|(k, g)| format!("d{k}={}", g.degree)).collect();
        println!("{name}: {} [{}]", r.verdict, degs.join(" "));
    }
    Ok(())
}
