mod common;

use common::{jets_match, planted};
use num_rational::Rational64;
use smallsol::scheme::{solve_effective, SolveOptions, SolveStatus, Strategy};

fn order() -> Rational64 {
    Rational64::from_integer(6)
}

#[test]
fn planted_branches_are_recovered() {
    for seed in 0..20 {
        let p = planted(seed);
        let r = solve_effective(&p.system, &SolveOptions { order: order(), ..Default::default() }).unwrap();
        assert_eq!(r.status, SolveStatus::Emitted, "seed {seed}: {:?}", r.discards);
        assert_eq!(r.branches.len(), p.branches.len(), "seed {seed}");
        for want in &p.branches {
            let found = r
                .branches
                .iter()
                .any(|b| b.components.iter().zip(want).all(|(c, w)| jets_match(c, w, order(), 0.0)));
            assert!(found, "seed {seed}: missing {want:?}");
        }
    }
}

#[test]
fn chains_agree_on_planted_systems() {
    for seed in [1, 3, 4] {
        let p = planted(seed);
        let first = solve_effective(&p.system, &SolveOptions { order: order(), ..Default::default() }).unwrap();
        let all = solve_effective(
            &p.system,
            &SolveOptions { order: order(), strategy: Strategy::AllChains, ..Default::default() },
        )
        .unwrap();
        assert_eq!(first.branches.len(), all.branches.len(), "seed {seed}");
        for (a, b) in first.branches.iter().zip(&all.branches) {
            assert!(a.components.iter().zip(&b.components).all(|(x, y)| x.same_as(y)));
        }
    }
}
