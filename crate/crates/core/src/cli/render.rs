use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::identities::{IdentityReport, Params, Side, SuiteConfig, SuiteSummary, Variant, Verdict};
use crate::kernel::decimal::{digits_for_bits, format_ball, rational_to_sci, rational_to_string};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_HEADER: &str = "identity_id,params,variant,lhs_mid,lhs_rad,rhs_mid,rhs_rad,verdict,gap,terms_used,prec_bits";

/// Serialized form of a [`SuiteConfig`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub prec_bits: u32,
    pub eps: String,
    pub m_grid: Vec<u32>,
    pub thm23_m_grid: Vec<u32>,
    pub n_grid: Vec<u32>,
    pub z_grid: Vec<String>,
    pub eq25_grid: Vec<(u32, String, String)>,
    pub eq28_n_grid: Vec<u32>,
    pub eq28_z_grid: Vec<String>,
    pub lemma_count: u32,
    pub seed: u64,
    pub only: Option<String>,
    pub variant: Option<Variant>,
    pub term_cap: u64,
}

impl From<&SuiteConfig> for ConfigDoc {
    fn from(c: &SuiteConfig) -> ConfigDoc {
        let rats = |v: &[BigRational]| v.iter().map(rational_to_string).collect();
        ConfigDoc {
            prec_bits: c.prec_bits,
            eps: c.eps.clone(),
            m_grid: c.m_grid.clone(),
            thm23_m_grid: c.thm23_m_grid.clone(),
            n_grid: c.n_grid.clone(),
            z_grid: rats(&c.z_grid),
            eq25_grid: c.eq25_grid.iter().map(|(n, a, z)| (*n, rational_to_string(a), rational_to_string(z))).collect(),
            eq28_n_grid: c.eq28_n_grid.clone(),
            eq28_z_grid: rats(&c.eq28_z_grid),
            lemma_count: c.lemma_count,
            seed: c.seed,
            only: c.only.clone(),
            variant: c.variant,
            term_cap: c.term_cap,
        }
    }
}

/// One report row with every number as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub identity_id: String,
    pub params: Params,
    pub variant: Variant,
    pub lhs_mid: String,
    pub lhs_rad: String,
    pub rhs_mid: String,
    pub rhs_rad: String,
    pub verdict: Verdict,
    pub gap: String,
    pub terms_used: u64,
    pub prec_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub tool_version: String,
    pub config: ConfigDoc,
    pub rows: Vec<ReportRow>,
    pub summary: SuiteSummary,
}

fn side_strings(side: &Side, bits: u32) -> (String, String) {
    match side {
        Side::Ball(b) => format_ball(b, Some(digits_for_bits(u64::from(bits.max(32))))),
        Side::Exact(r) => (rational_to_string(r), "0".to_string()),
        Side::Missing => ("nan".to_string(), "inf".to_string()),
    }
}

impl From<&IdentityReport> for ReportRow {
    fn from(r: &IdentityReport) -> ReportRow {
        let (lhs_mid, lhs_rad) = side_strings(&r.lhs, r.prec_bits);
        let (rhs_mid, rhs_rad) = side_strings(&r.rhs, r.prec_bits);
        let exact = matches!(r.lhs, Side::Exact(_));
        let gap = match &r.gap {
            None => "nan".to_string(),
            Some(g) if exact => rational_to_string(g),
            Some(g) => rational_to_sci(g, 6).0,
        };
        ReportRow {
            identity_id: r.identity_id.clone(),
            params: r.params.clone(),
            variant: r.variant,
            lhs_mid,
            lhs_rad,
            rhs_mid,
            rhs_rad,
            verdict: r.verdict,
            gap,
            terms_used: r.terms_used,
            prec_bits: r.prec_bits,
        }
    }
}

impl ReportDoc {
    pub fn new(config: &SuiteConfig, rows: &[IdentityReport], summary: SuiteSummary) -> ReportDoc {
        ReportDoc {
            tool_version: TOOL_VERSION.to_string(),
            config: ConfigDoc::from(config),
            rows: rows.iter().map(ReportRow::from).collect(),
            summary,
        }
    }
}

pub fn params_text(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn to_json(doc: &ReportDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_csv(doc: &ReportDoc) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &doc.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.identity_id,
            params_text(&r.params),
            r.variant,
            r.lhs_mid,
            r.lhs_rad,
            r.rhs_mid,
            r.rhs_rad,
            r.verdict,
            r.gap,
            r.terms_used,
            r.prec_bits
        );
    }
    out
}

pub fn to_markdown(doc: &ReportDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# abelzeta report (version {})\n", doc.tool_version);
    let _ = writeln!(out, "Precision {} bits, eps {}.\n", doc.config.prec_bits, doc.config.eps);
    out.push_str("| identity_id | params | variant | lhs | rhs | verdict | gap | terms_used | prec_bits |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for r in &doc.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} ± {} | {} ± {} | {} | {} | {} | {} |",
            r.identity_id,
            params_text(&r.params),
            r.variant,
            r.lhs_mid,
            r.lhs_rad,
            r.rhs_mid,
            r.rhs_rad,
            r.verdict,
            r.gap,
            r.terms_used,
            r.prec_bits
        );
    }
    if !doc.summary.is_empty() {
        out.push_str("\n| identity_id | rows | pass | fail | inconclusive | validated variants | status |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for (id, s) in &doc.summary {
            let variants: Vec<&str> = s.validated_variants.iter().map(|v| v.as_str()).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                id,
                s.rows,
                s.pass,
                s.fail,
                s.inconclusive,
                variants.join(", "),
                s.status
            );
        }
    }
    out
}
