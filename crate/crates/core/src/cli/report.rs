//! Text and machine-readable reports.

use std::fmt::Write as _;

use num_rational::Rational64;
use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{Coeff, Order, PuiseuxJet};
use crate::scheme::{
    DiscardReason, FamilyReport, FamilyVerdict, NumericSample, RegularityStatus, SolutionBranch, SolveReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffDoc {
    Exact { value: String },
    Numeric { re: String, im: String, prec: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: String,
    pub coeff: CoeffDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetDoc {
    pub ramification: u32,
    /// `"inf"` for an exact jet.
    pub trunc: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub variable: String,
    #[serde(flatten)]
    pub jet: JetDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub level: usize,
    pub status: RegularityStatus,
    pub t: String,
    pub shortcut: bool,
    pub defining_number: usize,
    pub defining_order: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub ramification: u32,
    pub real_class: String,
    pub components: Vec<ComponentDoc>,
    pub residuals: Vec<String>,
    pub levels: Vec<LevelDoc>,
    pub chains: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetSetDoc {
    pub equation: usize,
    pub t: String,
    pub jets: Vec<JetDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscardDoc {
    pub level: usize,
    pub kind: String,
    pub message: String,
    pub base: JetDoc,
    pub witnesses: Vec<JetDoc>,
    pub jet_sets: Vec<JetSetDoc>,
    pub chain: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainErrorDoc {
    pub chain: Vec<Vec<usize>>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GcdLevelDoc {
    pub level: usize,
    pub degree: u32,
    pub small_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub verdict: String,
    pub level: Option<usize>,
    pub levels: Vec<GcdLevelDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub lambda: f64,
    pub distance: f64,
    pub residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericDoc {
    /// 1-based index into `branches`.
    pub branch: usize,
    pub samples: Vec<SampleDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub variables: Vec<String>,
    pub order: String,
    pub precision: u32,
    pub status: String,
    pub exit_code: i32,
    pub branches: Vec<BranchDoc>,
    pub discards: Vec<DiscardDoc>,
    pub chain_errors: Vec<ChainErrorDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub families: Option<FamilyDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<Vec<NumericDoc>>,
}

pub fn coeff_doc(c: &Coeff) -> CoeffDoc {
    match c {
        Coeff::Exact(r) => CoeffDoc::Exact { value: r.to_string() },
        Coeff::Numeric(z) => CoeffDoc::Numeric {
            re: z.real().to_string_radix(10, None),
            im: z.imag().to_string_radix(10, None),
            prec: z.prec().0,
        },
    }
}

fn bad(what: &str, s: &str) -> Error {
    Error::Input(format!("malformed {what} '{s}' in report"))
}

pub fn coeff_from_doc(d: &CoeffDoc) -> Result<Coeff> {
    match d {
        CoeffDoc::Exact { value } => value.parse::<Rational>().map(Coeff::Exact).map_err(|_| bad("rational", value)),
        CoeffDoc::Numeric { re, im, prec } => {
            let re = Float::parse(re).map_err(|_| bad("float", re))?;
            let im = Float::parse(im).map_err(|_| bad("float", im))?;
            Ok(Coeff::Numeric(Complex::with_val(*prec, (re, im))))
        }
    }
}

pub fn parse_rational64(s: &str) -> Result<Rational64> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    match (n.trim().parse::<i64>(), d.trim().parse::<i64>()) {
        (Ok(n), Ok(d)) if d != 0 => Ok(Rational64::new(n, d)),
        _ => Err(bad("exponent", s)),
    }
}

pub fn jet_doc(j: &PuiseuxJet) -> JetDoc {
    JetDoc {
        ramification: j.ram(),
        trunc: match j.trunc() {
            Order::Infinite => "inf".into(),
            Order::At(t) => t.to_string(),
        },
        terms: j.terms().map(|(e, c)| TermDoc { exponent: e.to_string(), coeff: coeff_doc(c) }).collect(),
    }
}

pub fn jet_from_doc(d: &JetDoc) -> Result<PuiseuxJet> {
    let trunc = if d.trunc == "inf" { Order::Infinite } else { Order::At(parse_rational64(&d.trunc)?) };
    let terms = d
        .terms
        .iter()
        .map(|t| Ok((parse_rational64(&t.exponent)?, coeff_from_doc(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PuiseuxJet::from_rational_terms(terms, trunc))
}

fn branch_doc(b: &SolutionBranch, names: &[String]) -> BranchDoc {
    BranchDoc {
        ramification: b.ram(),
        real_class: b.real_class.as_str().into(),
        components: b
            .components
            .iter()
            .zip(names)
            .map(|(j, v)| ComponentDoc { variable: v.clone(), jet: jet_doc(j) })
            .collect(),
        residuals: b.residuals.iter().map(|r| r.to_string()).collect(),
        levels: b
            .levels
            .iter()
            .map(|l| LevelDoc {
                level: l.report.level,
                status: l.report.status,
                t: l.report.t.to_string(),
                shortcut: l.report.shortcut,
                defining_number: l.certificate.r,
                defining_order: l.certificate.order.to_string(),
            })
            .collect(),
        chains: b.chains.clone(),
    }
}

/// Family verdict in document form.
pub fn family_doc(f: &FamilyReport) -> FamilyDoc {
    let level = match f.verdict {
        FamilyVerdict::Family { level } => Some(level),
        _ => None,
    };
    FamilyDoc {
        verdict: match f.verdict {
            FamilyVerdict::Finite => "finite",
            FamilyVerdict::NoSmallSolutions => "no-small-solutions",
            FamilyVerdict::Family { .. } => "family",
        }
        .into(),
        level,
        levels: f
            .levels
            .iter()
            .map(|(k, r)| GcdLevelDoc { level: *k, degree: r.degree, small_degree: r.small_degree })
            .collect(),
    }
}

pub fn numeric_doc(branch: usize, samples: &[NumericSample]) -> NumericDoc {
    NumericDoc {
        branch,
        samples: samples
            .iter()
            .map(|s| SampleDoc { lambda: s.lambda, distance: s.distance, residual: s.residual, converged: s.converged })
            .collect(),
    }
}

impl ReportDoc {
    pub fn new(report: &SolveReport, variables: &[String], prec: u32, exit_code: i32, status: &str) -> Self {
        let names = &variables[1..];
        ReportDoc {
            schema_version: SCHEMA_VERSION,
            variables: variables.to_vec(),
            order: report.order.to_string(),
            precision: prec,
            status: status.into(),
            exit_code,
            branches: report.branches.iter().map(|b| branch_doc(b, names)).collect(),
            discards: report
                .discards
                .iter()
                .map(|d| {
                    let (witnesses, jet_sets) = match &d.reason {
                        DiscardReason::Ambiguous(r) | DiscardReason::Empty(r) => (
                            r.witnesses.iter().map(jet_doc).collect(),
                            r.jet_sets
                                .iter()
                                .map(|s| JetSetDoc {
                                    equation: s.equation,
                                    t: s.t.to_string(),
                                    jets: s.jets.iter().map(jet_doc).collect(),
                                })
                                .collect(),
                        ),
                        _ => (Vec::new(), Vec::new()),
                    };
                    DiscardDoc {
                        level: d.level,
                        kind: d.reason.kind().into(),
                        message: d.reason.to_string(),
                        base: jet_doc(&d.base),
                        witnesses,
                        jet_sets,
                        chain: d.chain.clone(),
                    }
                })
                .collect(),
            chain_errors: report
                .chain_errors
                .iter()
                .map(|(c, e)| ChainErrorDoc { chain: c.clone(), message: e.to_string() })
                .collect(),
            families: None,
            numeric: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("report: {e}")))
    }

    /// Component jets of every branch.
    pub fn branch_jets(&self) -> Result<Vec<Vec<PuiseuxJet>>> {
        self.branches
            .iter()
            .map(|b| b.components.iter().map(|c| jet_from_doc(&c.jet)).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status: {} (exit {})", self.status, self.exit_code);
        let _ = writeln!(out, "order: {}  precision: {} bits", self.order, self.precision);
        for (i, b) in self.branches.iter().enumerate() {
            let _ = writeln!(out, "\nbranch {}: ramification {}, {}", i + 1, b.ramification, b.real_class);
            for c in &b.components {
                let jet = jet_from_doc(&c.jet).map(|j| j.to_string()).unwrap_or_default();
                let _ = writeln!(out, "  {} = {}", c.variable, jet);
            }
            let _ = writeln!(out, "  residual valuations: {}", b.residuals.join(" "));
            for l in &b.levels {
                let _ = writeln!(
                    out,
                    "  level {}: {:?}{} at t = {}, defining number {} (order {})",
                    l.level,
                    l.status,
                    if l.shortcut { " by shortcut" } else { "" },
                    l.t,
                    l.defining_number,
                    l.defining_order
                );
            }
            let chains: Vec<String> = b.chains.iter().map(|c| format!("{c:?}")).collect();
            let _ = writeln!(out, "  chains: {}", chains.join(" "));
        }
        for d in &self.discards {
            let base = jet_from_doc(&d.base).map(|j| j.to_string()).unwrap_or_default();
            let _ = writeln!(out, "\ndiscarded at level {} ({}): {}", d.level, d.kind, d.message);
            let _ = writeln!(out, "  base root: {base}");
            for w in &d.witnesses {
                let w = jet_from_doc(w).map(|j| j.to_string()).unwrap_or_default();
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        for e in &self.chain_errors {
            let _ = writeln!(out, "\nchain {:?}: {}", e.chain, e.message);
        }
        if let Some(f) = &self.families {
            let _ = writeln!(out, "\nfamilies: {}{}", f.verdict, f.level.map(|l| format!(" at level {l}")).unwrap_or_default());
            for l in &f.levels {
                let _ = writeln!(out, "  level {}: gcd degree {}, small degree {}", l.level, l.degree, l.small_degree);
            }
        }
        if let Some(ns) = &self.numeric {
            let _ = writeln!(out, "\nnumeric check:");
            for n in ns {
                for s in &n.samples {
                    let _ = writeln!(
                        out,
                        "  branch {} at λ = {:e}: distance {:.3e}, residual {:.3e}{}",
                        n.branch,
                        s.lambda,
                        s.distance,
                        s.residual,
                        if s.converged { "" } else { " (no convergence)" }
                    );
                }
            }
        }
        out
    }
}
