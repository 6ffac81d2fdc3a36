//! Whether a branch is real on the half-axes λ > 0 and λ < 0.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::polycore::{Order, PuiseuxJet};
use crate::puiseux::SimplicityCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealClass {
    RealPositive,
    RealNegative,
    RealBoth,
    Complex,
    Undetermined,
}

impl RealClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RealClass::RealPositive => "real-positive",
            RealClass::RealNegative => "real-negative",
            RealClass::RealBoth => "real-both",
            RealClass::Complex => "complex",
            RealClass::Undetermined => "undetermined",
        }
    }

    pub fn is_real_somewhere(&self) -> bool {
        matches!(self, RealClass::RealPositive | RealClass::RealNegative | RealClass::RealBoth)
    }
}

impl fmt::Display for RealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RealClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "real-positive" => RealClass::RealPositive,
            "real-negative" => RealClass::RealNegative,
            "real-both" => RealClass::RealBoth,
            "complex" => RealClass::Complex,
            "undetermined" => RealClass::Undetermined,
            _ => return Err(Error::Input(format!("unknown real class {s}"))),
        })
    }
}

/// Terms deciding realness: every term up to the largest defining order,
/// plus the leading term.
fn deciding_terms(jet: &PuiseuxJet, order: Option<Rational64>) -> Vec<usize> {
    jet.terms()
        .enumerate()
        .filter(|(i, (e, _))| *i == 0 || order.map_or(true, |d| *e <= d))
        .map(|(i, _)| i)
        .collect()
}

fn real_on_axes(jet: &PuiseuxJet, idx: &[usize], prec: u32) -> (bool, bool) {
    let terms: Vec<_> = jet.terms().map(|(e, c)| (e, c.clone())).collect();
    let neg = jet.negative_axis_coeffs(prec);
    let pos_ok = idx.iter().all(|&i| terms[i].1.is_real());
    let neg_ok = idx.iter().all(|&i| neg[i].1.is_real());
    (pos_ok, neg_ok)
}

/// Classifies a branch from its components and the certificates of the
/// jets that fixed them. For real input the terms up to the largest
/// defining order decide; for non-real input every known term is checked
/// and a real-looking branch stays undetermined.
pub fn classify_realness(
    components: &[PuiseuxJet],
    certs: &[SimplicityCertificate],
    input_real: bool,
    prec: u32,
) -> Result<RealClass> {
    let order = if input_real {
        Some(certs.iter().map(|c| c.order).max().unwrap_or_else(|| Rational64::from_integer(0)))
    } else {
        None
    };
    let (mut pos, mut neg) = (true, true);
    for (i, jet) in components.iter().enumerate() {
        if let Some(d) = order {
            if jet.trunc() < Order::At(d) {
                return Err(Error::ExtendFirst { component: i + 1 });
            }
        }
        let (p, n) = real_on_axes(jet, &deciding_terms(jet, order), prec);
        pos &= p;
        neg &= n;
    }
    Ok(match (pos, neg) {
        (false, false) => RealClass::Complex,
        _ if !input_real => RealClass::Undetermined,
        (true, true) => RealClass::RealBoth,
        (true, false) => RealClass::RealPositive,
        (false, true) => RealClass::RealNegative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Coeff;

    const P: u32 = 256;

    fn cert() -> SimplicityCertificate {
        SimplicityCertificate {
            r: 0,
            alpha: Coeff::one(),
            alpha_order: Rational64::from_integer(0),
            order: Rational64::from_integer(1),
        }
    }

    #[test]
    fn examples() {
        let lam = PuiseuxJet::monomial(Coeff::one(), 1, 1);
        assert_eq!(
            classify_realness(&[lam.clone(), lam], &[cert()], true, P).unwrap(),
            RealClass::RealBoth
        );
        let root = PuiseuxJet::monomial(Coeff::one(), 1, 2);
        assert_eq!(
            classify_realness(&[root.clone(), root], &[cert()], true, P).unwrap(),
            RealClass::RealPositive
        );
        let imag = PuiseuxJet::monomial(Coeff::i(P), 1, 1);
        assert_eq!(classify_realness(&[imag], &[cert()], true, P).unwrap(), RealClass::Complex);
        // i λ^{1/2} is real for λ < 0
        let neg = PuiseuxJet::monomial(Coeff::i(P), 1, 2);
        assert_eq!(classify_realness(&[neg], &[cert()], true, P).unwrap(), RealClass::RealNegative);
    }

    #[test]
    fn short_component_must_be_extended() {
        let short = PuiseuxJet::new(1, vec![(1, Coeff::one())], Order::At(Rational64::new(1, 2)));
        assert_eq!(
            classify_realness(&[short], &[cert()], true, P),
            Err(Error::ExtendFirst { component: 1 })
        );
    }
}
