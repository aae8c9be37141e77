//! Exact convergence and smoothness analysis of binary, univariate, linear
//! subdivision schemes.
//!
//! A scheme is given by a finite mask `a`; its symbol is the Laurent
//! polynomial `a(z) = sum_i a_i z^i`. Decisions compare exact rationals
//! against 1 and 1/2, so no floating point enters any verdict.
//!
//! ```
//! use subdiv_core::{analyze_improved, Scheme, Verdict, rat};
//!
//! let report = analyze_improved(&Scheme::four_point(), 8);
//! assert_eq!(
//!     report.verdict,
//!     Verdict::Convergent { mu: rat(5, 8), contractivity_number: 1 }
//! );
//! ```

pub mod analyzer;
pub mod error;
pub mod laurent;
pub mod random;
pub mod refine;
pub mod scheme;
pub mod smoothness;

pub use analyzer::{
    analyze_baseline, analyze_improved, classify_se_so, lower_bound_audit, Algorithm,
    AnalysisReport, AuditRow, DecisionRule, LevelNorms, SeSoClass, Verdict, DEFAULT_MAX_ITER,
};
pub use error::{Error, Result};
pub use laurent::{int, rat, LaurentPolynomial, Rational};
pub use refine::{
    apply, apply_with_stride, basic_limit_samples, contraction_trace, delta, polyline,
    refine_to_level, ContractionTrace, GridSequence,
};
pub use scheme::{
    binary_coset_norm, even_odd_sums, operator_norm, symbol_from_mask, Mask, NecessaryConditions,
    Scheme,
};
pub use smoothness::{certify_smoothness, one_plus_z_multiplicity, OrderCheck, SmoothnessReport};
