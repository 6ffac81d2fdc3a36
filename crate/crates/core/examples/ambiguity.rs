//! Two slice equations sharing two jets below the target order: the solver
//! reports the witnesses instead of picking one.

use num_rational::Rational64;
use smallsol::cli::SystemFile;
use smallsol::scheme::{solve_effective, DiscardReason, SolveOptions};

fn main() -> smallsol::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/ambiguous.sys")).unwrap();
    let system = SystemFile::parse(&text, 256)?.system()?;
    let report = solve_effective(&system, &SolveOptions { order: Rational64::from_integer(6), ..Default::default() })?;
    println!("status: {} (exit {})", report.status.as_str(), report.status.exit_code());
    for d in &report.discards {
        if let DiscardReason::Ambiguous(r) = &d.reason {
            println!("level {}: {} common jets at order {}", r.level, r.witnesses.len(), r.t);
            for w in &r.witnesses {
                println!("  {w}");
            }
        }
    }
    Ok(())
}
