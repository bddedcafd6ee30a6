use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalogue::{
    check_eq211, check_eq22, check_eq25, check_eq28, goldbach, lemma21_batch, prop11, telescope, thm22, thm23,
    EvalOptions,
};
use super::report::{IdentityReport, Params, Variant, Verdict};
use crate::kernel::{Mag, Precision};

pub const IDENTITY_IDS: [&str; 10] =
    ["goldbach", "telescope", "thm22", "thm23", "prop11", "eq22", "eq25", "eq28", "eq211", "lemma21"];

/// Grids and tolerances for a suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub prec_bits: u32,
    pub eps: String,
    pub m_grid: Vec<u32>,
    pub thm23_m_grid: Vec<u32>,
    pub n_grid: Vec<u32>,
    pub z_grid: Vec<BigRational>,
    pub eq25_grid: Vec<(u32, BigRational, BigRational)>,
    pub eq28_n_grid: Vec<u32>,
    pub eq28_z_grid: Vec<BigRational>,
    pub lemma_count: u32,
    pub seed: u64,
    /// Identity-id glob; `None` runs everything.
    pub only: Option<String>,
    /// Restrict to one variant; single-form identities are unaffected.
    pub variant: Option<Variant>,
    pub term_cap: u64,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        let mut eq25_grid = Vec::new();
        for n in 1..=3 {
            for a in [q(1, 1), q(3, 2)] {
                for z in [q(1, 4), q(1, 2)] {
                    eq25_grid.push((n, a.clone(), z));
                }
            }
        }
        SuiteConfig {
            prec_bits: 256,
            eps: "1e-40".to_string(),
            m_grid: (1..=8).collect(),
            thm23_m_grid: (1..=3).collect(),
            n_grid: (1..=3).collect(),
            z_grid: vec![q(1, 64), q(1, 4), q(1, 2), q(3, 4)],
            eq25_grid,
            eq28_n_grid: (1..=6).collect(),
            eq28_z_grid: vec![q(1, 2), q(1, 3), q(2, 3)],
            lemma_count: 1000,
            seed: 0,
            only: None,
            variant: None,
            term_cap: crate::abel::DEFAULT_TERM_CAP,
        }
    }
}

impl SuiteConfig {
    pub fn options(&self) -> crate::Result<EvalOptions> {
        let prec = Precision::new(self.prec_bits)?;
        let eps = Mag::parse_lower(&self.eps)
            .filter(|m| !m.is_zero())
            .ok_or_else(|| crate::Error::Invalid(format!("eps must be a positive decimal, got {:?}", self.eps)))?;
        Ok(EvalOptions { term_cap: self.term_cap, ..EvalOptions::new(prec, eps) })
    }

    pub fn selects(&self, id: &str) -> bool {
        self.only.as_deref().is_none_or(|pat| glob_match(pat, id))
    }

    fn variants(&self) -> Vec<Variant> {
        match self.variant {
            Some(v) => vec![v],
            None => Variant::ALL.to_vec(),
        }
    }
}

/// `*` matches any run, `?` one character; comma separates alternatives.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    pattern.split(',').any(|p| glob_one(p.trim().as_bytes(), text.as_bytes()))
}

fn glob_one(p: &[u8], t: &[u8]) -> bool {
    match (p.first(), t.first()) {
        (None, None) => true,
        (Some(b'*'), _) => glob_one(&p[1..], t) || (!t.is_empty() && glob_one(p, &t[1..])),
        (Some(b'?'), Some(_)) => glob_one(&p[1..], &t[1..]),
        (Some(a), Some(b)) if a == b => glob_one(&p[1..], &t[1..]),
        _ => false,
    }
}

/// Per-identity tallies plus the variants that passed every row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub validated_variants: Vec<Variant>,
    /// `validated` when some variant passed every row, else `unresolved`.
    pub status: String,
}

pub type SuiteSummary = BTreeMap<String, IdentitySummary>;

pub fn summarize(rows: &[IdentityReport]) -> SuiteSummary {
    let mut out = SuiteSummary::new();
    for id in IDENTITY_IDS {
        let mine: Vec<&IdentityReport> = rows.iter().filter(|r| r.identity_id == id).collect();
        if mine.is_empty() {
            continue;
        }
        let count = |v: Verdict| mine.iter().filter(|r| r.verdict == v).count();
        let validated_variants: Vec<Variant> = Variant::ALL
            .into_iter()
            .filter(|v| {
                let rows: Vec<_> = mine.iter().filter(|r| r.variant == *v).collect();
                !rows.is_empty() && rows.iter().all(|r| r.verdict == Verdict::Pass)
            })
            .collect();
        let status = if validated_variants.is_empty() { "unresolved" } else { "validated" };
        out.insert(
            id.to_string(),
            IdentitySummary {
                rows: mine.len(),
                pass: count(Verdict::Pass),
                fail: count(Verdict::Fail),
                inconclusive: count(Verdict::Inconclusive),
                validated_variants,
                status: status.to_string(),
            },
        );
    }
    out
}

type Job = Box<dyn Fn(&EvalOptions) -> IdentityReport + Send + Sync>;

fn bad_row(id: &str, params: Params, variant: Variant, err: crate::Error, opts: &EvalOptions) -> IdentityReport {
    let side = err.best_ball().cloned().map_or(super::Side::Missing, super::Side::Ball);
    IdentityReport::inconclusive(id, params, variant, side, super::Side::Missing, 0, opts.prec.bits())
}

fn jobs(config: &SuiteConfig) -> Vec<Job> {
    let mut out: Vec<Job> = Vec::new();
    let variants = config.variants();
    let sel = |id: &str| config.selects(id);
    if sel("goldbach") {
        out.push(Box::new(goldbach));
    }
    if sel("telescope") {
        for p in [0u32, 1] {
            out.push(Box::new(move |o| {
                telescope(p, o).unwrap_or_else(|e| bad_row("telescope", Params::new(), Variant::AsPrinted, e, o))
            }));
        }
    }
    for &v in &variants {
        if sel("thm22") {
            for &m in &config.m_grid {
                out.push(Box::new(move |o| thm22(m, v, o)));
            }
        }
        if sel("prop11") {
            for &m in &config.m_grid {
                out.push(Box::new(move |o| prop11(m, v, o)));
            }
        }
        if sel("thm23") {
            for &m in &config.thm23_m_grid {
                for &n in &config.n_grid {
                    out.push(Box::new(move |o| thm23(m, n, v, o)));
                }
            }
        }
        if sel("eq22") {
            for z in &config.z_grid {
                let z = z.clone();
                out.push(Box::new(move |o| {
                    check_eq22(&z, v, o).unwrap_or_else(|e| bad_row("eq22", Params::new(), v, e, o))
                }));
            }
        }
        if sel("eq28") {
            for &n in &config.eq28_n_grid {
                for z in &config.eq28_z_grid {
                    let z = z.clone();
                    out.push(Box::new(move |o| {
                        check_eq28(n, &z, v).unwrap_or_else(|e| bad_row("eq28", Params::new(), v, e, o))
                    }));
                }
            }
        }
    }
    // single-form identities
    if config.variant.is_none_or(|v| v == Variant::AsPrinted) {
        if sel("eq25") {
            for (n, a, z) in &config.eq25_grid {
                let (n, a, z) = (*n, a.clone(), z.clone());
                out.push(Box::new(move |o| {
                    check_eq25(n, &a, &z, o).unwrap_or_else(|e| bad_row("eq25", Params::new(), Variant::AsPrinted, e, o))
                }));
            }
        }
        if sel("eq211") {
            for &n in &config.n_grid {
                for z in &config.z_grid {
                    let z = z.clone();
                    out.push(Box::new(move |o| {
                        check_eq211(n, &z, o).unwrap_or_else(|e| bad_row("eq211", Params::new(), Variant::AsPrinted, e, o))
                    }));
                }
            }
        }
        if sel("lemma21") && config.lemma_count > 0 {
            let (seed, count) = (config.seed, config.lemma_count);
            out.push(Box::new(move |_| lemma21_batch(seed, count)));
        }
    }
    out
}

/// Run every selected identity. Rows are computed in parallel on the current
/// rayon pool and returned in canonical order.
pub fn run_suite(config: &SuiteConfig) -> crate::Result<Vec<IdentityReport>> {
    let opts = config.options()?;
    let mut rows: Vec<IdentityReport> = jobs(config).par_iter().map(|job| job(&opts)).collect();
    rows.sort_by(|a, b| a.canonical_cmp(b));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn globbing() {
        assert!(glob_match("thm*", "thm22"));
        assert!(glob_match("eq2?", "eq22"));
        assert!(!glob_match("eq2?", "eq211"));
        assert!(glob_match("goldbach,eq28", "eq28"));
        assert!(glob_match("*", "lemma21"));
    }

    #[test]
    fn empty_grids_give_no_rows() {
        let config = SuiteConfig {
            m_grid: vec![],
            thm23_m_grid: vec![],
            n_grid: vec![],
            z_grid: vec![],
            eq25_grid: vec![],
            eq28_n_grid: vec![],
            eq28_z_grid: vec![],
            lemma_count: 0,
            only: Some("thm*,prop11,eq*,lemma21".into()),
            ..SuiteConfig::default()
        };
        assert!(run_suite(&config).unwrap().is_empty());
    }

    #[test]
    fn goldbach_only_run() {
        let config = SuiteConfig { only: Some("goldbach".into()), ..SuiteConfig::default() };
        let rows = run_suite(&config).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].verdict, Verdict::Pass);
        let summary = summarize(&rows);
        assert_eq!(summary["goldbach"].status, "validated");
    }

    #[test]
    fn eq28_rows_are_sorted_and_exact() {
        let config = SuiteConfig { only: Some("eq28".into()), ..SuiteConfig::default() };
        let rows = run_suite(&config).unwrap();
        assert_eq!(rows.len(), 36);
        for w in rows.windows(2) {
            assert!(w[0].canonical_cmp(&w[1]).is_lt());
        }
        let summary = summarize(&rows);
        assert_eq!(summary["eq28"].validated_variants, vec![Variant::CorrectedCandidate]);
    }
}
