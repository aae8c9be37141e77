//! Masks, schemes and the norm quantities both convergence procedures use.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{int, rat, LaurentPolynomial, Rational};

/// Finite mask `a_offset, a_(offset+1), ...` of a binary scheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mask {
    offset: i64,
    coefficients: Vec<Rational>,
}

impl Mask {
    /// Builds a mask, trimming zero coefficients at either end and shifting
    /// the offset accordingly. Fails if every coefficient is zero.
    pub fn new(offset: i64, coefficients: Vec<Rational>) -> Result<Self> {
        let poly = LaurentPolynomial::new(offset, coefficients);
        Self::from_symbol(&poly)
    }

    pub fn from_symbol(symbol: &LaurentPolynomial) -> Result<Self> {
        if symbol.is_zero() {
            return Err(Error::EmptyMask);
        }
        Ok(Self {
            offset: symbol.lowest_degree(),
            coefficients: symbol.coefficients().to_vec(),
        })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `a(z) = sum_i a_i z^i`.
    pub fn symbol(&self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.offset, self.coefficients.clone())
    }
}

/// Values of the symbol at `z = 1` and `z = -1`, and whether they meet the
/// necessary conditions `a(1) = 2`, `a(-1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryConditions {
    pub value_at_one: Rational,
    pub value_at_minus_one: Rational,
}

impl NecessaryConditions {
    pub fn sum_is_two(&self) -> bool {
        self.value_at_one == int(2)
    }

    pub fn vanishes_at_minus_one(&self) -> bool {
        self.value_at_minus_one.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.sum_is_two() && self.vanishes_at_minus_one()
    }

    /// Human-readable reason for a failure, `None` when both hold.
    pub fn failure_reason(&self) -> Option<String> {
        match (self.sum_is_two(), self.vanishes_at_minus_one()) {
            (true, true) => None,
            (false, true) => Some(format!("a(1) = {} instead of 2", self.value_at_one)),
            (true, false) => Some(format!("a(-1) = {} instead of 0", self.value_at_minus_one)),
            (false, false) => Some(format!(
                "a(1) = {} instead of 2 and a(-1) = {} instead of 0",
                self.value_at_one, self.value_at_minus_one
            )),
        }
    }
}

/// A binary univariate linear subdivision scheme `S_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    mask: Mask,
    symbol: LaurentPolynomial,
}

impl Scheme {
    pub fn new(mask: Mask) -> Self {
        let symbol = symbol_from_mask(&mask);
        Self { mask, symbol }
    }

    pub fn from_symbol(symbol: LaurentPolynomial) -> Result<Self> {
        Ok(Self::new(Mask::from_symbol(&symbol)?))
    }

    /// B-spline scheme of degree `m`, symbol `(1+z)^(m+1) / 2^m`.
    pub fn spline(degree: u32) -> Self {
        let symbol = LaurentPolynomial::one_plus_z_pow(degree + 1).scale(&Rational::new(
            1.into(),
            num_traits::pow(2.into(), degree as usize),
        ));
        Self::from_symbol(symbol).expect("spline symbols are nonzero")
    }

    /// Dubuc-Deslauriers four-point scheme with tension 1/16.
    pub fn four_point() -> Self {
        let mask = [-1, 0, 9, 16, 9, 0, -1]
            .iter()
            .map(|&c| rat(c, 16))
            .collect();
        Self::new(Mask::new(-3, mask).expect("nonzero mask"))
    }

    /// Lazy scheme `1 + z`: duplicates every value.
    pub fn lazy() -> Self {
        Self::from_symbol(LaurentPolynomial::one_plus_z()).expect("nonzero")
    }

    pub fn mask(&self) -> &Mask {
        &self.mask
    }

    pub fn symbol(&self) -> &LaurentPolynomial {
        &self.symbol
    }

    pub fn check_necessary_conditions(&self) -> NecessaryConditions {
        NecessaryConditions {
            value_at_one: self.symbol.evaluate(&int(1)).expect("nonzero argument"),
            value_at_minus_one: self.symbol.evaluate(&int(-1)).expect("nonzero argument"),
        }
    }

    /// `q(z) = a(z) / (1 + z)`, the symbol of the difference scheme.
    pub fn difference_symbol(&self) -> Result<LaurentPolynomial> {
        self.symbol.divide_by_one_plus_z()
    }
}

pub fn symbol_from_mask(mask: &Mask) -> LaurentPolynomial {
    mask.symbol()
}

/// `||S_q^L||`: the largest absolute coefficient sum of `q^L` over residue
/// classes mod `2^L`.
pub fn operator_norm(q: &LaurentPolynomial, levels: u32) -> Rational {
    norm_of_power(&q.symbol_power(levels), levels)
}

/// Operator norm of a precomputed `q^L` at level `L`.
pub(crate) fn norm_of_power(power: &LaurentPolynomial, levels: u32) -> Rational {
    max_of(power.coset_abs_sums(1u64 << levels))
}

/// Larger of the even and odd absolute coefficient sums of `q^L`.
///
/// Coincides with [`operator_norm`] only at `L = 1`.
pub fn binary_coset_norm(q: &LaurentPolynomial, levels: u32) -> Rational {
    max_of(q.symbol_power(levels).coset_abs_sums(2))
}

pub(crate) fn max_of(values: Vec<Rational>) -> Rational {
    values.into_iter().max().expect("at least one coset")
}

/// Signed even and odd coefficient sums `(S_e, S_o)` of a difference symbol.
///
/// Requires `q(1) = 1`; the result is checked against the closed forms
/// `(1 + q(-1)) / 2` and `(1 - q(-1)) / 2`.
pub fn even_odd_sums(q: &LaurentPolynomial) -> Result<(Rational, Rational)> {
    let at_one = q.evaluate(&int(1))?;
    if !at_one.is_one() {
        return Err(Error::PreconditionViolated(format!(
            "difference symbol must satisfy q(1) = 1, got {at_one}"
        )));
    }
    let mut sums = q.coset_signed_sums(2).into_iter();
    let (s_e, s_o) = (sums.next().unwrap(), sums.next().unwrap());
    let at_minus_one = q.evaluate(&int(-1))?;
    let half = rat(1, 2);
    assert_eq!(s_e, (Rational::one() + &at_minus_one) * &half);
    assert_eq!(s_o, (Rational::one() - &at_minus_one) * &half);
    Ok((s_e, s_o))
}
