//! The plain-text system file.
//!
//! ```text
//! # comment
//! variables: l x1 x2
//! truncation: exact input
//! equation:
//!   1 0 0 2
//!   -1 1 0 0
//! equation:
//!   1 0 0 1
//!   (-1,0) 0 1 0
//! ```
//!
//! The first variable plays the role of λ. Each term line is a coefficient
//! followed by one exponent per variable. Coefficients are integers,
//! fractions `p/q`, terminating decimals, or complex pairs `(re,im)` of
//! those; a pair with nonzero imaginary part becomes a numeric coefficient.

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::polycore::{Coeff, MultiPoly, PolySystem};

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    /// `variables[0]` is the parameter.
    pub variables: Vec<String>,
    pub equations: Vec<MultiPoly>,
    /// Free-form provenance of any truncation of the input.
    pub truncation: Option<String>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with 1-based columns; a parenthesised group
/// is one token.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if bytes[i] == b'(' {
            while i < bytes.len() && bytes[i] != b')' {
                i += 1;
            }
            i = (i + 1).min(bytes.len());
        } else {
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
        }
        out.push((start + 1, &text[start..i]));
    }
    out
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let num: Integer = digits.parse().ok()?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Some(Rational::from((num, den)));
    }
    let r: Rational = s.parse().ok()?;
    Some(r)
}

/// Parses one coefficient token.
pub fn parse_coeff(s: &str, prec: u32) -> std::result::Result<Coeff, String> {
    if let Some(inner) = s.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or("unclosed complex pair")?;
        let (re, im) = inner.split_once(',').ok_or("complex pair needs two parts")?;
        let re = parse_rational(re).ok_or_else(|| format!("bad real part '{}'", re.trim()))?;
        let im = parse_rational(im).ok_or_else(|| format!("bad imaginary part '{}'", im.trim()))?;
        if im == 0 {
            return Ok(Coeff::Exact(re));
        }
        return Ok(Coeff::Numeric(Complex::with_val(
            prec,
            (Float::with_val(prec, &re), Float::with_val(prec, &im)),
        )));
    }
    parse_rational(s).map(Coeff::Exact).ok_or_else(|| format!("bad coefficient '{s}'"))
}

impl SystemFile {
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let mut variables: Option<Vec<String>> = None;
        let mut truncation = None;
        let mut equations: Vec<MultiPoly> = Vec::new();
        let mut open = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let indent = body.len() - body.trim_start().len();
            let trimmed = body.trim();
            if let Some(rest) = trimmed.strip_prefix("variables:") {
                if variables.is_some() {
                    return Err(err(line, indent + 1, "variables declared twice"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.len() < 2 {
                    return Err(err(line, indent + 1, "need the parameter and at least one unknown"));
                }
                variables = Some(names);
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("truncation:") {
                truncation = Some(rest.trim().to_string());
                continue;
            }
            let Some(names) = &variables else {
                return Err(err(line, indent + 1, "expected 'variables:' first"));
            };
            let n = names.len() - 1;
            if trimmed == "equation:" {
                equations.push(MultiPoly::zero(n));
                open = true;
                continue;
            }
            if !open {
                return Err(err(line, indent + 1, "term outside an 'equation:' block"));
            }
            let toks = tokens(body);
            let (col, ctext) = toks[0];
            let c = parse_coeff(ctext, prec).map_err(|m| err(line, col, m))?;
            if toks.len() - 1 != names.len() {
                let col = toks.get(names.len() + 1).map_or(body.trim_end().len() + 1, |t| t.0);
                return Err(err(
                    line,
                    col,
                    format!("expected {} exponents, found {}", names.len(), toks.len() - 1),
                ));
            }
            let mut exps = Vec::with_capacity(names.len());
            for &(col, t) in &toks[1..] {
                exps.push(t.parse::<u32>().map_err(|_| err(line, col, format!("bad exponent '{t}'")))?);
            }
            let eq = equations.last_mut().expect("open equation");
            if let (Some(p), Some(q)) = (eq.precision(), c.precision()) {
                if p != q {
                    return Err(err(line, col, "mixed coefficient precisions"));
                }
            }
            eq.add_term(exps, c);
        }
        let variables = variables.ok_or_else(|| err(1, 1, "missing 'variables:' line"))?;
        if equations.is_empty() {
            return Err(err(text.lines().count().max(1), 1, "no equations"));
        }
        Ok(SystemFile { variables, equations, truncation })
    }

    pub fn unknowns(&self) -> &[String] {
        &self.variables[1..]
    }

    /// The system; rejects non-square input.
    pub fn system(&self) -> Result<PolySystem> {
        let n = self.variables.len() - 1;
        if self.equations.len() != n {
            return Err(Error::Input(format!(
                "{} equations in {n} unknowns: only determined systems (as many equations as unknowns) are supported",
                self.equations.len()
            )));
        }
        PolySystem::new(self.equations.clone())
    }

    /// Text form accepted by [`SystemFile::parse`]; exact systems only.
    pub fn render(&self) -> String {
        let mut out = format!("variables: {}\n", self.variables.join(" "));
        if let Some(t) = &self.truncation {
            out.push_str(&format!("truncation: {t}\n"));
        }
        for eq in &self.equations {
            out.push_str("equation:\n");
            for (e, c) in eq.terms() {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("  {c} {}\n", exps.join(" ")));
            }
        }
        out
    }
}
