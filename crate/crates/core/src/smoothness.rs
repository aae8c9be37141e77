//! Sufficient-condition smoothness certification.
//!
//! If `a(z) = (1+z)^n q_n(z)` and the scheme with symbol `2^n q_n(z)` (which
//! refines n-th divided differences) converges, the limits of `S_a` are `C^n`.
//! Orders are checked in sequence and certification stops at the first order
//! whose scheme is not shown convergent. A failed check means "not
//! certified", not "not smooth".

use num_traits::{One, Zero};

use crate::analyzer::{analyze_improved, AnalysisReport};
use crate::error::{Error, Result};
use crate::laurent::{int, LaurentPolynomial, Rational};
use crate::scheme::Scheme;

/// Largest `n` with `(1+z)^n` dividing `a` exactly.
pub fn one_plus_z_multiplicity(a: &LaurentPolynomial) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::PreconditionViolated(
            "multiplicity of -1 is undefined for the zero polynomial".into(),
        ));
    }
    let mut n = 0;
    let mut rest = a.clone();
    while let Ok(next) = rest.divide_by_one_plus_z() {
        rest = next;
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: u32,
    /// `2^n q_n(z)`.
    pub symbol: LaurentPolynomial,
    pub report: AnalysisReport,
}

impl OrderCheck {
    pub fn certified(&self) -> bool {
        self.report.verdict.is_convergent()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub multiplicity: u32,
    /// Largest `n` such that every order `1..=n` was certified.
    pub certified_order: u32,
    pub per_order: Vec<OrderCheck>,
}

/// Checks orders `n = 1, 2, ...` while `n < multiplicity` (and `n <=
/// max_order` when given).
///
/// The base scheme must itself be shown convergent by the improved analysis.
pub fn certify_smoothness(
    scheme: &Scheme,
    max_iter: u32,
    max_order: Option<u32>,
) -> Result<SmoothnessReport> {
    let base = analyze_improved(scheme, max_iter);
    if !base.verdict.is_convergent() {
        return Err(Error::PreconditionViolated(format!(
            "base scheme is not certified convergent ({} via {})",
            base.verdict.kind(),
            base.rule
        )));
    }
    let multiplicity = one_plus_z_multiplicity(scheme.symbol())?;
    let limit = match max_order {
        Some(cap) => cap.min(multiplicity.saturating_sub(1)),
        None => multiplicity.saturating_sub(1),
    };

    let mut per_order = Vec::new();
    let mut certified_order = 0;
    let mut quotient = scheme.symbol().clone();
    let mut scale = Rational::one();
    for order in 1..=limit {
        quotient = quotient
            .divide_by_one_plus_z()
            .expect("order is below the multiplicity");
        scale *= int(2);
        let symbol = quotient.scale(&scale);
        let report = analyze_improved(&Scheme::from_symbol(symbol.clone())?, max_iter);
        let check = OrderCheck {
            order,
            symbol,
            report,
        };
        let passed = check.certified();
        per_order.push(check);
        if !passed {
            break;
        }
        certified_order = order;
    }
    debug_assert!(multiplicity == 0 || certified_order < multiplicity);
    Ok(SmoothnessReport {
        multiplicity,
        certified_order,
        per_order,
    })
}

/// Whether `symbol` meets `a(1) = 2` and, if `vanishing`, `a(-1) = 0`.
pub fn meets_necessary_conditions(symbol: &LaurentPolynomial, vanishing: bool) -> bool {
    let at_one = symbol.evaluate(&int(1)).expect("nonzero argument");
    let at_minus_one = symbol.evaluate(&int(-1)).expect("nonzero argument");
    at_one == int(2) && (!vanishing || at_minus_one.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::Verdict;

    fn poly(lo: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_integers(lo, c)
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            one_plus_z_multiplicity(Scheme::spline(3).symbol()).unwrap(),
            4
        );
        assert_eq!(one_plus_z_multiplicity(&poly(0, &[2, 1, -1])).unwrap(), 1);
        assert_eq!(one_plus_z_multiplicity(&poly(0, &[3, -1])).unwrap(), 0);
        assert!(one_plus_z_multiplicity(&LaurentPolynomial::zero()).is_err());
    }

    #[test]
    fn cubic_spline_certifies_two() {
        let report = certify_smoothness(&Scheme::spline(3), 8, None).unwrap();
        assert_eq!(report.multiplicity, 4);
        assert_eq!(report.certified_order, 2);
        assert_eq!(report.per_order.len(), 3);
        assert_eq!(
            report.per_order[0].symbol,
            Scheme::spline(2).symbol().clone()
        );
        assert_eq!(
            report.per_order[1].symbol,
            Scheme::spline(1).symbol().clone()
        );
        assert_eq!(report.per_order[2].symbol, LaurentPolynomial::one_plus_z());
        assert_eq!(report.per_order[2].report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn linear_spline_certifies_nothing() {
        let report = certify_smoothness(&Scheme::spline(1), 8, None).unwrap();
        assert_eq!(report.multiplicity, 2);
        assert_eq!(report.certified_order, 0);
        assert_eq!(report.per_order.len(), 1);
    }

    #[test]
    fn four_point_is_at_least_c1() {
        let report = certify_smoothness(&Scheme::four_point(), 8, None).unwrap();
        assert!(report.certified_order >= 1);
        let q = Scheme::four_point().difference_symbol().unwrap();
        assert_eq!(report.per_order[0].symbol, q.scale(&int(2)));
    }

    #[test]
    fn max_order_caps_the_chain() {
        let report = certify_smoothness(&Scheme::spline(5), 8, Some(1)).unwrap();
        assert_eq!(report.certified_order, 1);
        assert_eq!(report.per_order.len(), 1);
    }

    #[test]
    fn divergent_base_is_rejected() {
        let scheme = Scheme::from_symbol(poly(0, &[2, 1, -1])).unwrap();
        assert!(matches!(
            certify_smoothness(&scheme, 8, None),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn certified_symbols_meet_their_own_conditions() {
        let report = certify_smoothness(&Scheme::spline(5), 8, None).unwrap();
        for check in &report.per_order {
            assert!(meets_necessary_conditions(
                &check.symbol,
                check.order < report.multiplicity
            ));
        }
    }
}
