//! Shared fixtures: a corpus of systems with known small solutions and a
//! generator of systems with planted branches.
#![allow(dead_code)]

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallsol::{Coeff, MultiPoly, PolySystem, PuiseuxJet};

pub const PREC: u32 = 256;

pub fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

/// `c λ^k` with `n` unknowns.
pub fn lam(n: usize, k: u32, c: i64) -> MultiPoly {
    let mut e = vec![0; n + 1];
    e[0] = k;
    MultiPoly::monomial(n, e, Coeff::int(c))
}

pub fn int(n: usize, c: i64) -> MultiPoly {
    MultiPoly::constant(n, Coeff::int(c))
}

pub fn sys(eqs: Vec<MultiPoly>) -> PolySystem {
    PolySystem::new(eqs).unwrap()
}

/// Polynomial jet `Σ c_k λ^k`.
pub fn poly_jet(coeffs: &[i64]) -> PuiseuxJet {
    PuiseuxJet::from_poly(&coeffs.iter().map(|&c| Coeff::int(c)).collect::<Vec<_>>())
}

pub struct CorpusEntry {
    pub name: String,
    pub system: PolySystem,
    pub order: Rational64,
}

fn entry(name: &str, system: PolySystem, order: i64) -> CorpusEntry {
    CorpusEntry { name: name.into(), system, order: Rational64::from_integer(order) }
}

/// Systems with isolated small solutions, including planted ones.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let (x1, x2) = (x(2, 1), x(2, 2));
    out.push(entry("squares", sys(vec![&x1.pow(2) - &lam(2, 2, 1), &x2 - &x1]), 3));
    out.push(entry("half powers", sys(vec![&x2.pow(2) - &lam(2, 1, 1), &x2 - &x1]), 3));
    out.push(entry("linear", sys(vec![&(&x1 + &x2) - &lam(2, 1, 1), &x1 - &x2]), 3));
    out.push(entry(
        "quadratic swap",
        sys(vec![&(&x2 - &x1.pow(2)) - &lam(2, 1, 1), &(&x1 - &x2.pow(2)) - &lam(2, 1, 1)]),
        6,
    ));
    let i = MultiPoly::constant(2, Coeff::i(PREC));
    out.push(entry(
        "complex coefficients",
        sys(vec![&x1.pow(2) + &lam(2, 2, 1), &(&x2 - &x1) - &(&i * &lam(2, 2, 1))]),
        4,
    ));
    let y = x(1, 1);
    out.push(entry(
        "binomial series",
        sys(vec![&y.pow(2) - &(&lam(1, 2, 1) + &lam(1, 3, 1))]),
        6,
    ));
    out.push(entry("catalan", sys(vec![&(&y - &lam(1, 1, 1)) - &y.pow(2)]), 6));
    out.push(entry("split cusp", sys(vec![&(&y - &lam(1, 1, 1)).pow(2) - &lam(1, 3, 1)]), 6));
    let n = 3;
    let (z1, z2, z3) = (x(n, 1), x(n, 2), x(n, 3));
    let d1 = &z1 - &lam(n, 1, 1);
    let d2 = &z2 - &lam(n, 2, 1);
    let d3 = &z3 + &lam(n, 1, 1);
    out.push(entry(
        "three unknowns",
        sys(vec![&d1 + &(&d2 * &z3), &d2 + &d1.pow(2), &d3 + &(&z1 * &d2)]),
        4,
    ));
    for seed in 0..20 {
        let p = planted(seed);
        out.push(CorpusEntry { name: format!("planted {seed}"), system: p.system, order: Rational64::from_integer(6) });
    }
    out
}

/// A system together with the complete set of its small solutions.
pub struct Planted {
    pub system: PolySystem,
    pub branches: Vec<Vec<PuiseuxJet>>,
}

fn elementary(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut inv = m.clone();
    for _ in 0..2 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let c = rng.gen_range(-3i64..=3);
        // m <- E m with row a += c row b; inv <- inv E^{-1}, column b -= c column a
        for k in 0..n {
            m[a][k] += c * m[b][k];
            inv[k][b] -= c * inv[k][a];
        }
    }
    (m, inv)
}

/// Planted system number `seed`: `n ∈ {2, 3}` unknowns, two or three
/// simple polynomial branches. In coordinates `y = M⁻¹x` the system is
/// `g_1 = Π_b (y_1 − φ_b(λ))`, `g_k = y_k − h_k(λ, y_1)`; the equations are
/// `(C + E) g` with `C` unimodular and `E` vanishing at the origin, so the
/// small solutions are exactly the planted ones.
pub fn planted(seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
    let n = if seed % 2 == 0 { 2 } else { 3 };
    let m_branches = if n == 2 { 2 + (seed % 4 == 0) as usize } else { 2 };
    let mut leads: Vec<i64> = Vec::new();
    while leads.len() < m_branches {
        let c = rng.gen_range(-9i64..=9);
        if c != 0 && !leads.contains(&c) {
            leads.push(c);
        }
    }
    let phis: Vec<Vec<i64>> = leads.iter().map(|&c| vec![0, c, rng.gen_range(-5i64..=5)]).collect();
    // h_k = a λ + b y1 + c y1^2 + d λ y1
    let hs: Vec<[i64; 4]> = (2..=n)
        .map(|_| {
            [rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4), rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)]
        })
        .collect();
    let (mm, minv) = elementary(&mut rng, n);
    let (cc, _) = elementary(&mut rng, n);

    let y: Vec<MultiPoly> = (0..n)
        .map(|i| {
            (0..n).fold(MultiPoly::zero(n), |acc, j| &acc + &x(n, j + 1).scale(&Coeff::int(minv[i][j])))
        })
        .collect();
    let lam_poly = |coeffs: &[i64]| {
        coeffs.iter().enumerate().fold(MultiPoly::zero(n), |acc, (k, &c)| &acc + &lam(n, k as u32, c))
    };
    let mut g = vec![phis.iter().fold(int(n, 1), |acc, phi| &acc * &(&y[0] - &lam_poly(phi)))];
    for (k, h) in hs.iter().enumerate() {
        let hk = &(&(&lam(n, 1, h[0]) + &y[0].scale(&Coeff::int(h[1]))) + &y[0].pow(2).scale(&Coeff::int(h[2])))
            + &(&lam(n, 1, h[3]) * &y[0]);
        g.push(&y[k + 1] - &hk);
    }
    let eqs: Vec<MultiPoly> = (0..n)
        .map(|i| {
            (0..n).fold(MultiPoly::zero(n), |acc, j| {
                let mut coef = int(n, cc[i][j]);
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(-2i64..=2);
                    let pert = if rng.gen_bool(0.5) {
                        lam(n, 1, c)
                    } else {
                        x(n, rng.gen_range(1..=n)).scale(&Coeff::int(c))
                    };
                    coef = &coef + &pert;
                }
                &acc + &(&coef * &g[j])
            })
        })
        .collect();

    let branches = phis
        .iter()
        .map(|phi| {
            let y1 = poly_jet(phi);
            let mut ys = vec![y1.clone()];
            for h in &hs {
                let v = poly_jet(&[0, h[0]])
                    .add(&y1.scale(&Coeff::int(h[1])))
                    .add(&y1.pow(2).scale(&Coeff::int(h[2])))
                    .add(&poly_jet(&[0, h[3]]).mul(&y1));
                ys.push(v);
            }
            (0..n)
                .map(|i| {
                    (0..n).fold(PuiseuxJet::exact_zero(), |acc, j| acc.add(&ys[j].scale(&Coeff::int(mm[i][j]))))
                })
                .collect()
        })
        .collect();
    Planted { system: sys(eqs), branches }
}

/// Whether two jets agree through `order` to within `tol` on numeric
/// coefficients and exactly on rational ones.
pub fn jets_match(a: &PuiseuxJet, b: &PuiseuxJet, order: Rational64, tol: f64) -> bool {
    let mut exps: Vec<Rational64> = a.terms().chain(b.terms()).map(|(e, _)| e).filter(|e| *e <= order).collect();
    exps.sort();
    exps.dedup();
    exps.iter().all(|&e| {
        let (ca, cb) = (a.coeff_at(e), b.coeff_at(e));
        if ca.is_exact() && cb.is_exact() {
            ca == cb
        } else {
            (&ca - &cb).abs_f64() <= tol
        }
    })
}
