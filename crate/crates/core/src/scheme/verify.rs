//! Residuals of the original equations along a branch.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::polycore::{compose, Assignment, Order, PolySystem, PuiseuxJet};

/// What is known about `f_j(λ, x(λ))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Identically zero.
    Zero,
    /// Zero through this order; the valuation exceeds it.
    Through(Rational64),
    /// Nonzero with this valuation.
    Leading(Rational64),
}

impl Residual {
    pub fn of(jet: &PuiseuxJet) -> Self {
        match (jet.valuation(), jet.trunc()) {
            (Some(v), _) => Residual::Leading(v),
            (None, Order::Infinite) => Residual::Zero,
            (None, Order::At(t)) => Residual::Through(t),
        }
    }

    /// Whether the valuation is known to exceed `order`.
    pub fn exceeds(&self, order: Rational64) -> bool {
        match *self {
            Residual::Zero => true,
            Residual::Through(t) => t >= order,
            Residual::Leading(v) => v > order,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Zero => write!(f, "inf"),
            Residual::Through(t) => write!(f, ">{t}"),
            Residual::Leading(v) => write!(f, "{v}"),
        }
    }
}

/// Residuals of every equation at the components `x_1..x_n`.
pub fn residuals(system: &PolySystem, components: &[PuiseuxJet]) -> Result<Vec<Residual>> {
    let assignment: Assignment = components.iter().enumerate().map(|(i, j)| (i + 1, j.clone())).collect();
    system
        .equations()
        .iter()
        .map(|f| compose(f, &assignment).map(|r| Residual::of(&r)))
        .collect()
}

/// Residuals, failing unless every one vanishes beyond `order`.
pub fn verify_residuals(system: &PolySystem, components: &[PuiseuxJet], order: Rational64) -> Result<Vec<Residual>> {
    let res = residuals(system, components)?;
    for (j, r) in res.iter().enumerate() {
        if !r.exceeds(order) {
            let valuation = match *r {
                Residual::Through(t) => t,
                Residual::Leading(v) => v,
                Residual::Zero => unreachable!(),
            };
            return Err(Error::VerificationFailed { equation: j + 1, valuation, order });
        }
    }
    Ok(res)
}
