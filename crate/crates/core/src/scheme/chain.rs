//! The descending chain of systems `S_n, S_{n-1}, …, S_1`.
//!
//! `S_k` lives in level-`k` coordinates `u = (u_1..u_k)`. It is regularized
//! in `u_k` by `u = L_k v`, giving `S̃_k(v) = S_k(L_k v)`, and the tree
//! resultants of `S̃_k` in `v_k` form `S_{k-1}` in `(v_1..v_{k-1})`.

use crate::elimination::tree_resultant_system;
use crate::error::{Error, Result};
use crate::polycore::{normalize_lambda, regularize, LinearMap, PolySystem};

use super::trees::{Tree, TreeChain};

#[derive(Clone, Debug)]
pub struct ChainLevel {
    /// Number of unknowns at this level.
    pub k: usize,
    pub system: PolySystem,
    pub map: LinearMap,
    pub regularized: PolySystem,
    /// Tree eliminating `v_k`; absent at level one.
    pub tree: Option<Tree>,
}

#[derive(Clone, Debug)]
pub struct BuiltChain {
    pub chain: TreeChain,
    /// The input system, untouched.
    pub original: PolySystem,
    /// `levels[k - 1]` is level `k`; shorter than `n` when some level has an
    /// equation that does not vanish at the origin.
    pub levels: Vec<ChainLevel>,
    /// Level at which an equation is nonzero at the origin, so that no small
    /// solutions exist.
    pub no_small_at: Option<usize>,
}

impl BuiltChain {
    pub fn n(&self) -> usize {
        self.original.nvars()
    }

    pub fn level(&self, k: usize) -> &ChainLevel {
        &self.levels[k - 1]
    }

    pub fn is_complete(&self) -> bool {
        self.no_small_at.is_none()
    }
}

/// Divides every equation by its λ-power.
pub fn normalize_system(system: &PolySystem) -> Result<PolySystem> {
    PolySystem::new(
        system
            .equations()
            .iter()
            .map(|f| normalize_lambda(f).map(|(g, _)| g.integer_primitive()))
            .collect::<Result<_>>()?,
    )
}

/// Builds the chain of systems for the trees of `chain`.
pub fn build_chain(system: &PolySystem, chain: &TreeChain) -> Result<BuiltChain> {
    let n = system.nvars();
    if system.len() != n {
        return Err(Error::Input(format!(
            "{} equations in {n} unknowns; the solver needs a square system",
            system.len()
        )));
    }
    if chain.n() != n {
        return Err(Error::InvalidTree(format!("chain for {} unknowns, system has {n}", chain.n())));
    }
    let mut current = normalize_system(system)?;
    let mut levels: Vec<ChainLevel> = Vec::with_capacity(n);
    let mut no_small_at = None;
    for k in (1..=n).rev() {
        if !current.vanishes_at_origin() {
            no_small_at = Some(k);
            break;
        }
        let (regularized, map) = regularize(&current, k)?;
        let tree = (k >= 2).then(|| chain.at_level(k).clone());
        let next = match &tree {
            Some(t) => Some(tree_resultant_system(&regularized, t, k)?),
            None => None,
        };
        levels.push(ChainLevel { k, system: current.clone(), map, regularized, tree });
        if let Some(s) = next {
            current = s;
        }
    }
    levels.reverse();
    Ok(BuiltChain { chain: chain.clone(), original: system.clone(), levels, no_small_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::MultiPoly;

    fn sys(eqs: &[&[(i64, &[u32])]]) -> PolySystem {
        PolySystem::new(eqs.iter().map(|t| MultiPoly::from_int_terms(2, t)).collect()).unwrap()
    }

    #[test]
    fn chain_ends_with_scalar_equation() {
        // {x2^2 - λ, x2 - x1}
        let s = sys(&[&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 1]), (-1, &[0, 1, 0])]]);
        let c = build_chain(&s, &TreeChain::first(2).unwrap()).unwrap();
        assert!(c.is_complete());
        let last = &c.level(1).system.equations()[0];
        let want = MultiPoly::from_int_terms(1, &[(1, &[0, 2]), (-1, &[1, 0])]);
        assert!(*last == want || *last == -&want);
    }

    #[test]
    fn shared_factor_is_a_degenerate_edge() {
        // {x2 (x2 - λ), x2 (x2 - x1)}
        let s = sys(&[&[(1, &[0, 0, 2]), (-1, &[1, 0, 1])], &[(1, &[0, 0, 2]), (-1, &[0, 1, 1])]]);
        let e = build_chain(&s, &TreeChain::first(2).unwrap()).unwrap_err();
        assert_eq!(e, Error::DegenerateEdge { level: 2, edge: (1, 2) });
    }

    #[test]
    fn nonvanishing_equation_stops_the_chain() {
        // {x2^2 - λ, x2^2 - 2λ}: the resultant is a power of λ only
        let s = sys(&[&[(1, &[0, 0, 2]), (-1, &[1, 0, 0])], &[(1, &[0, 0, 2]), (-2, &[1, 0, 0])]]);
        let c = build_chain(&s, &TreeChain::first(2).unwrap()).unwrap();
        assert_eq!(c.no_small_at, Some(1));
    }
}
