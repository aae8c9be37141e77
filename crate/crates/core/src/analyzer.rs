//! Convergence decisions for binary linear schemes.
//!
//! [`analyze_baseline`] searches for the first level `L` with
//! `||S_q^L|| < 1`. [`analyze_improved`] runs two cheap tests on the
//! difference symbol before that search: `|q(-1)| > 1` rules convergence out,
//! and non-negative coefficients of `q` give `mu = max(S_e, S_o)` at `L = 1`.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::laurent::{int, rat, LaurentPolynomial, Rational};
use crate::scheme::{self, even_odd_sums, Scheme};

/// Iteration budget used when the caller does not pick one.
pub const DEFAULT_MAX_ITER: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `||S_q^L|| = mu < 1` at contractivity number `L`.
    Convergent {
        mu: Rational,
        contractivity_number: u32,
    },
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Convergent { .. } => "convergent",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_convergent(&self) -> bool {
        matches!(self, Verdict::Convergent { .. })
    }

    pub fn mu(&self) -> Option<&Rational> {
        match self {
            Verdict::Convergent { mu, .. } => Some(mu),
            _ => None,
        }
    }

    pub fn contractivity_number(&self) -> Option<u32> {
        match self {
            Verdict::Convergent {
                contractivity_number,
                ..
            } => Some(*contractivity_number),
            _ => None,
        }
    }
}

/// Which test produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecisionRule {
    NecessaryConditionFailed,
    QMinusOneExceedsOne,
    NonnegativeShortcut,
    IterativeNormContraction,
    IterationBudgetExhausted,
}

impl DecisionRule {
    pub fn name(self) -> &'static str {
        match self {
            DecisionRule::NecessaryConditionFailed => "necessary-condition",
            DecisionRule::QMinusOneExceedsOne => "q-minus-one",
            DecisionRule::NonnegativeShortcut => "nonnegative-shortcut",
            DecisionRule::IterativeNormContraction => "iterative-norm",
            DecisionRule::IterationBudgetExhausted => "budget-exhausted",
        }
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Baseline,
    Improved,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Improved => "improved",
        }
    }
}

/// Norms examined at one level of the iterative search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelNorms {
    pub level: u32,
    /// Max over residues mod `2^L` of absolute coefficient sums of `q^L`.
    pub operator_norm: Rational,
    /// Max of the even and odd absolute coefficient sums of `q^L`.
    pub binary_coset_norm: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub algorithm: Algorithm,
    pub max_iter: u32,
    pub verdict: Verdict,
    pub rule: DecisionRule,
    pub a_at_one: Rational,
    pub a_at_minus_one: Rational,
    /// The remaining fields are `None` when the necessary conditions fail and
    /// no difference symbol exists.
    pub difference_symbol: Option<LaurentPolynomial>,
    pub q_at_minus_one: Option<Rational>,
    pub s_e: Option<Rational>,
    pub s_o: Option<Rational>,
    pub q_nonnegative: Option<bool>,
    pub levels: Vec<LevelNorms>,
}

impl AnalysisReport {
    /// Number of iterations of the norm loop that ran.
    pub fn loop_iterations(&self) -> u32 {
        self.levels.len() as u32
    }
}

/// Classic iterative test: first `L <= max_iter` with `||S_q^L|| < 1`.
pub fn analyze_baseline(scheme: &Scheme, max_iter: u32) -> AnalysisReport {
    analyze(scheme, max_iter, Algorithm::Baseline)
}

/// Iterative test preceded by the `|q(-1)| > 1` and non-negative `q`
/// shortcuts.
pub fn analyze_improved(scheme: &Scheme, max_iter: u32) -> AnalysisReport {
    analyze(scheme, max_iter, Algorithm::Improved)
}

fn analyze(scheme: &Scheme, max_iter: u32, algorithm: Algorithm) -> AnalysisReport {
    assert!(max_iter >= 1, "iteration budget must be at least 1");
    let conditions = scheme.check_necessary_conditions();
    let mut report = AnalysisReport {
        algorithm,
        max_iter,
        verdict: Verdict::Divergent,
        rule: DecisionRule::NecessaryConditionFailed,
        a_at_one: conditions.value_at_one.clone(),
        a_at_minus_one: conditions.value_at_minus_one.clone(),
        difference_symbol: None,
        q_at_minus_one: None,
        s_e: None,
        s_o: None,
        q_nonnegative: None,
        levels: Vec::new(),
    };
    if !conditions.passed() {
        return report;
    }

    let q = scheme
        .difference_symbol()
        .expect("a(-1) = 0 makes the symbol divisible by 1 + z");
    let q_at_minus_one = q.evaluate(&int(-1)).expect("nonzero argument");
    let (s_e, s_o) = even_odd_sums(&q).expect("a(1) = 2 gives q(1) = 1");
    let nonnegative = q.is_nonnegative();
    report.q_at_minus_one = Some(q_at_minus_one.clone());
    report.s_e = Some(s_e.clone());
    report.s_o = Some(s_o.clone());
    report.q_nonnegative = Some(nonnegative);

    if algorithm == Algorithm::Improved {
        if q_at_minus_one.abs() > Rational::one() {
            report.rule = DecisionRule::QMinusOneExceedsOne;
            report.difference_symbol = Some(q);
            return report;
        }
        let mu = (&s_e).max(&s_o).clone();
        // With a zero coset sum (e.g. q = 1) there is no contraction, so the
        // shortcut only fires when max(S_e, S_o) < 1.
        if nonnegative && mu < Rational::one() {
            report.verdict = Verdict::Convergent {
                mu,
                contractivity_number: 1,
            };
            report.rule = DecisionRule::NonnegativeShortcut;
            report.difference_symbol = Some(q);
            return report;
        }
    }

    let (levels, verdict) = norm_search(&q, max_iter);
    report.levels = levels;
    report.rule = match verdict {
        Verdict::Convergent { .. } => DecisionRule::IterativeNormContraction,
        _ => DecisionRule::IterationBudgetExhausted,
    };
    report.verdict = verdict;
    report.difference_symbol = Some(q);
    report
}

/// Iterates `q_(L+1)(z) = q(z) q_L(z^2)` until `||S_q^L|| < 1` or the budget
/// runs out.
fn norm_search(q: &LaurentPolynomial, max_iter: u32) -> (Vec<LevelNorms>, Verdict) {
    let mut levels = Vec::with_capacity(max_iter as usize);
    let mut power = q.clone();
    for level in 1..=max_iter {
        let operator_norm = scheme::norm_of_power(&power, level);
        let binary_coset_norm = scheme::max_of(power.coset_abs_sums(2));
        let contracts = operator_norm < Rational::one();
        levels.push(LevelNorms {
            level,
            operator_norm: operator_norm.clone(),
            binary_coset_norm,
        });
        if contracts {
            return (
                levels,
                Verdict::Convergent {
                    mu: operator_norm,
                    contractivity_number: level,
                },
            );
        }
        if level < max_iter {
            power = q * &power.upsample(2);
        }
    }
    (levels, Verdict::Inconclusive)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub level: u32,
    pub binary_coset_norm: Rational,
    /// Recorded for comparison; the lower bound is not asserted on it for
    /// `L >= 2`.
    pub operator_norm: Rational,
    pub passed: bool,
}

/// Checks `max(sum |q^L_even|, sum |q^L_odd|) >= 1/2` for `L = 1..=max_level`.
pub fn lower_bound_audit(q: &LaurentPolynomial, max_level: u32) -> Result<Vec<AuditRow>> {
    require_unit_sum(q)?;
    let half = rat(1, 2);
    let mut rows = Vec::with_capacity(max_level as usize);
    let mut power = q.clone();
    for level in 1..=max_level {
        if level > 1 {
            power = q * &power.upsample(2);
        }
        let binary = scheme::max_of(power.coset_abs_sums(2));
        rows.push(AuditRow {
            level,
            passed: binary >= half,
            operator_norm: scheme::norm_of_power(&power, level),
            binary_coset_norm: binary,
        });
    }
    Ok(rows)
}

fn require_unit_sum(q: &LaurentPolynomial) -> Result<()> {
    let at_one = q.evaluate(&int(1))?;
    if at_one.is_one() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "difference symbol must satisfy q(1) = 1, got {at_one}"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeSoClass {
    pub s_e: Rational,
    pub s_o: Rational,
    pub in_unit_interval: bool,
    pub both_half: bool,
    /// Whether `(1 + z)^2` divides `a(z)`.
    pub double_root: bool,
}

/// Where `S_e` and `S_o` fall; `both_half` holds exactly when `-1` is at least
/// a double root of the symbol.
pub fn classify_se_so(scheme: &Scheme) -> Result<SeSoClass> {
    let conditions = scheme.check_necessary_conditions();
    if let Some(reason) = conditions.failure_reason() {
        return Err(Error::PreconditionViolated(reason));
    }
    let q = scheme.difference_symbol()?;
    let (s_e, s_o) = even_odd_sums(&q)?;
    let unit = |x: &Rational| !x.is_negative() && *x <= Rational::one();
    let half = rat(1, 2);
    let both_half = s_e == half && s_o == half;
    let double_root = q.divide_by_one_plus_z().is_ok();
    assert_eq!(
        both_half, double_root,
        "S_e = S_o = 1/2 must coincide with a double root at -1"
    );
    Ok(SeSoClass {
        in_unit_interval: unit(&s_e) && unit(&s_o),
        both_half,
        double_root,
        s_e,
        s_o,
    })
}
