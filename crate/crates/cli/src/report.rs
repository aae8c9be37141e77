//! Report documents. Every rational is written as a `p/q` string and field
//! order is fixed by declaration order, so identical inputs give
//! byte-identical output.

use serde::Serialize;
use subdiv_core::refine::{BoundCheck, ContractionTrace};
use subdiv_core::{
    AnalysisReport, AuditRow, LaurentPolynomial, Rational, SeSoClass, SmoothnessReport, Verdict,
};

use crate::document::{format_rational, MaskDocument};

pub const TOOL: &str = "subdiv";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn r(value: &Rational) -> String {
    format_rational(value)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub mask: MaskDocument,
    pub max_iter: u32,
    pub analysis: AnalysisSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<SmoothnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSection>,
}

impl ReportDocument {
    pub fn new(command: &'static str, mask: MaskDocument, report: &AnalysisReport) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            mask,
            max_iter: report.max_iter,
            analysis: AnalysisSection::from_report(report),
            audit: None,
            smoothness: None,
            trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolDocument {
    pub offset: i64,
    pub coefficients: Vec<String>,
}

impl From<&LaurentPolynomial> for SymbolDocument {
    fn from(p: &LaurentPolynomial) -> Self {
        Self {
            offset: p.lowest_degree(),
            coefficients: p.coefficients().iter().map(r).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictSection {
    pub kind: &'static str,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contractivity_number: Option<u32>,
}

impl VerdictSection {
    fn from_report(report: &AnalysisReport) -> Self {
        let (mu, number) = match &report.verdict {
            Verdict::Convergent {
                mu,
                contractivity_number,
            } => (Some(r(mu)), Some(*contractivity_number)),
            _ => (None, None),
        };
        Self {
            kind: report.verdict.kind(),
            method: report.rule.name(),
            mu,
            contractivity_number: number,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferenceSection {
    pub symbol: SymbolDocument,
    pub q_at_minus_1: String,
    pub s_e: String,
    pub s_o: String,
    pub q_nonnegative: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelValue {
    pub level: u32,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisSection {
    pub algorithm: &'static str,
    pub verdict: VerdictSection,
    pub a_at_1: String,
    pub a_at_minus_1: String,
    pub necessary_conditions: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<DifferenceSection>,
    pub loop_iterations: u32,
    pub norms_per_level: Vec<LevelValue>,
    pub binary_coset_norms: Vec<LevelValue>,
}

impl AnalysisSection {
    pub fn from_report(report: &AnalysisReport) -> Self {
        let difference = match (
            &report.difference_symbol,
            &report.q_at_minus_one,
            &report.s_e,
            &report.s_o,
            report.q_nonnegative,
        ) {
            (Some(q), Some(qm), Some(se), Some(so), Some(nonneg)) => Some(DifferenceSection {
                symbol: q.into(),
                q_at_minus_1: r(qm),
                s_e: r(se),
                s_o: r(so),
                q_nonnegative: nonneg,
            }),
            _ => None,
        };
        Self {
            algorithm: report.algorithm.name(),
            verdict: VerdictSection::from_report(report),
            a_at_1: r(&report.a_at_one),
            a_at_minus_1: r(&report.a_at_minus_one),
            necessary_conditions: difference.is_some(),
            difference,
            loop_iterations: report.loop_iterations(),
            norms_per_level: report
                .levels
                .iter()
                .map(|l| LevelValue {
                    level: l.level,
                    value: r(&l.operator_norm),
                })
                .collect(),
            binary_coset_norms: report
                .levels
                .iter()
                .map(|l| LevelValue {
                    level: l.level,
                    value: r(&l.binary_coset_norm),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRowDocument {
    pub level: u32,
    pub binary_coset_norm: String,
    pub operator_norm: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeSoDocument {
    pub s_e: String,
    pub s_o: String,
    pub in_unit_interval: bool,
    pub both_half: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub lower_bound: Vec<AuditRowDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se_so: Option<SeSoDocument>,
}

impl AuditSection {
    pub fn skipped(reason: String) -> Self {
        Self {
            skipped: Some(reason),
            lower_bound: Vec::new(),
            se_so: None,
        }
    }

    pub fn new(rows: &[AuditRow], class: &SeSoClass) -> Self {
        Self {
            skipped: None,
            lower_bound: rows
                .iter()
                .map(|row| AuditRowDocument {
                    level: row.level,
                    binary_coset_norm: r(&row.binary_coset_norm),
                    operator_norm: r(&row.operator_norm),
                    pass: row.passed,
                })
                .collect(),
            se_so: Some(SeSoDocument {
                s_e: r(&class.s_e),
                s_o: r(&class.s_o),
                in_unit_interval: class.in_unit_interval,
                both_half: class.both_half,
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderDocument {
    pub order: u32,
    pub symbol: SymbolDocument,
    pub verdict: VerdictSection,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessSection {
    pub criterion: &'static str,
    pub multiplicity: u32,
    pub certified_order: u32,
    pub per_order: Vec<OrderDocument>,
}

impl From<&SmoothnessReport> for SmoothnessSection {
    fn from(report: &SmoothnessReport) -> Self {
        Self {
            criterion: "sufficient condition: convergence of the scheme with symbol 2^n q_n",
            multiplicity: report.multiplicity,
            certified_order: report.certified_order,
            per_order: report
                .per_order
                .iter()
                .map(|check| OrderDocument {
                    order: check.order,
                    symbol: (&check.symbol).into(),
                    verdict: VerdictSection::from_report(&check.report),
                    certified: check.certified(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub level: u32,
    pub delta_norm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundDocument {
    pub mu: String,
    pub contractivity_number: u32,
    pub passed: bool,
    pub violations: Vec<u32>,
}

impl From<&BoundCheck> for BoundDocument {
    fn from(check: &BoundCheck) -> Self {
        Self {
            mu: r(&check.mu),
            contractivity_number: check.contractivity_number,
            passed: check.passed(),
            violations: check.violations.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceSection {
    pub levels: Vec<TraceRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_check: Option<BoundDocument>,
}

impl From<&ContractionTrace> for TraceSection {
    fn from(trace: &ContractionTrace) -> Self {
        Self {
            levels: trace
                .levels
                .iter()
                .map(|l| TraceRow {
                    level: l.level,
                    delta_norm: r(&l.delta_norm),
                    ratio: l.ratio.as_ref().map(r),
                })
                .collect(),
            bound_check: trace.bound_check.as_ref().map(Into::into),
        }
    }
}
