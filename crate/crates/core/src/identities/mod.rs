mod catalogue;
mod report;
mod suite;

pub use catalogue::{
    check_eq211, check_eq22, check_eq25, check_eq28, eq28_rhs, euler_operator_value, g_coefficient, goldbach,
    lemma21_batch, prop11, prop11_rhs, random_poly, telescope, thm22, thm22_lhs, thm22_rhs, thm23, thm23_lhs,
    thm23_rhs, EvalOptions, GCoefficient,
};
pub use report::{compare_params, params, IdentityReport, ParamValue, Params, Side, Variant, Verdict};
pub use suite::{glob_match, run_suite, summarize, IdentitySummary, SuiteConfig, SuiteSummary, IDENTITY_IDS};
