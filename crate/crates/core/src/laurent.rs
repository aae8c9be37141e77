//! Exact Laurent polynomials over the rationals.
//!
//! Symbols of subdivision schemes, their difference symbols and the iterated
//! symbols `q(z) q(z^2) ... q(z^(2^(L-1)))` all live here. Coefficients are
//! stored densely between the lowest and highest nonzero degree and every
//! constructor canonicalizes, so derived `PartialEq` is structural equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building small rationals in code and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    lowest_degree: i64,
    coefficients: Vec<Rational>,
}

impl LaurentPolynomial {
    /// Builds `sum_j coefficients[j] z^(lowest_degree + j)` and trims zero
    /// coefficients from both ends.
    pub fn new(lowest_degree: i64, coefficients: Vec<Rational>) -> Self {
        let mut poly = Self {
            lowest_degree,
            coefficients,
        };
        poly.canonicalize();
        poly
    }

    pub fn from_integers(lowest_degree: i64, coefficients: &[i64]) -> Self {
        Self::new(
            lowest_degree,
            coefficients.iter().map(|&c| int(c)).collect(),
        )
    }

    pub fn zero() -> Self {
        Self {
            lowest_degree: 0,
            coefficients: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Self::new(0, vec![value])
    }

    pub fn monomial(coefficient: Rational, degree: i64) -> Self {
        Self::new(degree, vec![coefficient])
    }

    /// The polynomial `1 + z`.
    pub fn one_plus_z() -> Self {
        Self::from_integers(0, &[1, 1])
    }

    /// `(1 + z)^n`, built by repeated multiplication.
    pub fn one_plus_z_pow(n: u32) -> Self {
        let base = Self::one_plus_z();
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    fn canonicalize(&mut self) {
        let Some(first) = self.coefficients.iter().position(|c| !c.is_zero()) else {
            *self = Self::zero();
            return;
        };
        let last = self
            .coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("a nonzero coefficient exists");
        self.coefficients.truncate(last + 1);
        self.coefficients.drain(..first);
        self.lowest_degree += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree of the first stored coefficient. Zero for the zero polynomial.
    pub fn lowest_degree(&self) -> i64 {
        self.lowest_degree
    }

    /// Degree of the last stored coefficient; `None` for the zero polynomial.
    pub fn highest_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lowest_degree + self.coefficients.len() as i64 - 1)
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Iterates over `(degree, coefficient)` pairs, including interior zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(j, c)| (self.lowest_degree + j as i64, c))
    }

    /// Coefficient of `z^degree` (zero outside the stored window).
    pub fn coefficient(&self, degree: i64) -> Rational {
        let idx = degree - self.lowest_degree;
        if idx < 0 {
            return Rational::zero();
        }
        self.coefficients
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(
            self.lowest_degree,
            self.coefficients.iter().map(|c| c * factor).collect(),
        )
    }

    /// Exact value at `x`. Fails only when `x = 0` and the polynomial has a
    /// negative-degree term.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if x.is_zero() {
            if self.lowest_degree < 0 {
                return Err(Error::ZeroArgument);
            }
            return Ok(self.coefficient(0));
        }
        // Horner from the top, then scale by x^lowest_degree.
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        Ok(acc * pow_signed(x, self.lowest_degree))
    }

    /// Returns `p(z^factor)`.
    pub fn upsample(&self, factor: u64) -> Self {
        assert!(factor >= 1, "upsampling factor must be at least 1");
        if self.is_zero() || factor == 1 {
            return self.clone();
        }
        let len = (self.coefficients.len() - 1) * factor as usize + 1;
        let mut coefficients = vec![Rational::zero(); len];
        for (j, c) in self.coefficients.iter().enumerate() {
            coefficients[j * factor as usize] = c.clone();
        }
        Self::new(self.lowest_degree * factor as i64, coefficients)
    }

    /// Exact quotient `q` with `(1 + z) q = self`.
    ///
    /// Synthetic division from the top degree down; the leftover at the lowest
    /// degree is the remainder and must vanish.
    pub fn divide_by_one_plus_z(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coefficients.len();
        if n == 1 {
            return Err(Error::NotDivisible {
                remainder: self.coefficients[0].clone(),
            });
        }
        // q has degrees lowest..=highest-1, i.e. n-1 coefficients.
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for j in (1..n).rev() {
            let c = &self.coefficients[j] - &carry;
            quotient[j - 1] = c.clone();
            carry = c;
        }
        let remainder = &self.coefficients[0] - &carry;
        if !remainder.is_zero() {
            return Err(Error::NotDivisible { remainder });
        }
        Ok(Self::new(self.lowest_degree, quotient))
    }

    /// `q(z) q(z^2) ... q(z^(2^(levels-1)))`, the symbol of `levels` steps of
    /// the scheme with symbol `q`.
    pub fn symbol_power(&self, levels: u32) -> Self {
        assert!(levels >= 1, "symbol power needs at least one level");
        let mut power = self.clone();
        for _ in 1..levels {
            power = self * &power.upsample(2);
        }
        power
    }

    /// Entry `r` is `sum_j |p_(r + m j)|` for `0 <= r < m`.
    pub fn coset_abs_sums(&self, modulus: u64) -> Vec<Rational> {
        self.coset_sums(modulus, |c| c.abs())
    }

    /// Entry `r` is `sum_j p_(r + m j)`. For `m = 2` this is `[S_e, S_o]`.
    pub fn coset_signed_sums(&self, modulus: u64) -> Vec<Rational> {
        self.coset_sums(modulus, Rational::clone)
    }

    fn coset_sums(&self, modulus: u64, map: impl Fn(&Rational) -> Rational) -> Vec<Rational> {
        assert!(modulus >= 1, "coset modulus must be at least 1");
        let m = modulus as i64;
        let mut sums = vec![Rational::zero(); modulus as usize];
        for (degree, c) in self.terms() {
            if !c.is_zero() {
                sums[degree.rem_euclid(m) as usize] += map(c);
            }
        }
        sums
    }
}

/// `x^exp` for any integer exponent; `x` must be nonzero when `exp < 0`.
fn pow_signed(x: &Rational, exp: i64) -> Rational {
    let magnitude = num_traits::pow(x.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        magnitude.recip()
    } else {
        magnitude
    }
}

impl Default for LaurentPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lowest_degree.min(rhs.lowest_degree);
        let hi = self.highest_degree().max(rhs.highest_degree()).unwrap();
        let coefficients = (lo..=hi)
            .map(|d| self.coefficient(d) + rhs.coefficient(d))
            .collect();
        LaurentPolynomial::new(lo, coefficients)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            lowest_degree: self.lowest_degree,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coefficients =
            vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                if !b.is_zero() {
                    coefficients[i + j] += a * b;
                }
            }
        }
        LaurentPolynomial::new(self.lowest_degree + rhs.lowest_degree, coefficients)
    }
}

macro_rules! forward_owned_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (degree, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let magnitude = c.abs();
            match degree {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    match degree {
                        1 => f.write_str("z")?,
                        _ => write!(f, "z^{degree}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(lo: i64, coefficients: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_integers(lo, coefficients)
    }

    fn four_point_symbol() -> LaurentPolynomial {
        poly(-3, &[-1, 0, 9, 16, 9, 0, -1]).scale(&rat(1, 16))
    }

    fn four_point_difference() -> LaurentPolynomial {
        poly(-3, &[-1, 1, 8, 8, 1, -1]).scale(&rat(1, 16))
    }

    #[test]
    fn canonical_form_trims_both_ends() {
        let p = poly(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(p.lowest_degree(), 0);
        assert_eq!(p.highest_degree(), Some(1));
        assert_eq!(p, poly(0, &[1, 2]));
        assert!(poly(4, &[0, 0]).is_zero());
        assert_eq!(poly(4, &[0]), LaurentPolynomial::zero());
    }

    #[test]
    fn add_examples() {
        let one_plus_z = poly(0, &[1, 1]);
        assert_eq!(&one_plus_z + &LaurentPolynomial::zero(), one_plus_z);
        assert!((&one_plus_z + &poly(0, &[-1, -1])).is_zero());
        assert_eq!(&poly(-1, &[1, 1]) + &one_plus_z, poly(-1, &[1, 2, 1]));
    }

    #[test]
    fn multiply_examples() {
        let one_plus_z = poly(0, &[1, 1]);
        assert_eq!(&one_plus_z * &one_plus_z, poly(0, &[1, 2, 1]));
        assert_eq!(&one_plus_z * &poly(0, &[2, -1]), poly(0, &[2, 1, -1]));
        assert!((&one_plus_z * &LaurentPolynomial::zero()).is_zero());
        let p = &poly(-2, &[1, 3]) * &poly(1, &[2, 0, 1]);
        assert_eq!(p.lowest_degree(), -1);
    }

    #[test]
    fn upsample_examples() {
        assert_eq!(poly(0, &[1, 1]).upsample(2), poly(0, &[1, 0, 1]));
        let p = four_point_symbol();
        assert_eq!(p.upsample(1), p);
        let sparse = LaurentPolynomial::new(-1, vec![int(1), int(0), int(3)]);
        let up = sparse.upsample(4);
        assert_eq!(up.lowest_degree(), -4);
        assert_eq!(up.coefficient(-4), int(1));
        assert_eq!(up.coefficient(4), int(3));
        assert_eq!(up.terms().filter(|(_, c)| !c.is_zero()).count(), 2);
    }

    #[test]
    fn evaluate_examples() {
        let linear = poly(0, &[1, 2, 1]).scale(&rat(1, 2));
        assert_eq!(linear.evaluate(&int(1)).unwrap(), int(2));
        assert_eq!(linear.evaluate(&int(-1)).unwrap(), int(0));
        assert_eq!(poly(0, &[2, -1]).evaluate(&int(-1)).unwrap(), int(3));
        assert_eq!(four_point_symbol().evaluate(&int(1)).unwrap(), int(2));
        assert_eq!(poly(-1, &[1, 1]).evaluate(&int(2)).unwrap(), rat(3, 2));
    }

    #[test]
    fn evaluate_at_zero() {
        assert_eq!(
            poly(-1, &[1, 1]).evaluate(&int(0)),
            Err(Error::ZeroArgument)
        );
        assert_eq!(poly(0, &[7, 1]).evaluate(&int(0)).unwrap(), int(7));
        assert_eq!(poly(2, &[7, 1]).evaluate(&int(0)).unwrap(), int(0));
    }

    #[test]
    fn divide_examples() {
        let linear = poly(0, &[1, 2, 1]).scale(&rat(1, 2));
        assert_eq!(
            linear.divide_by_one_plus_z().unwrap(),
            poly(0, &[1, 1]).scale(&rat(1, 2))
        );
        assert_eq!(
            four_point_symbol().divide_by_one_plus_z().unwrap(),
            four_point_difference()
        );
        assert_eq!(
            poly(0, &[1, 0, 1]).divide_by_one_plus_z(),
            Err(Error::NotDivisible { remainder: int(2) })
        );
        assert!(matches!(
            poly(3, &[5]).divide_by_one_plus_z(),
            Err(Error::NotDivisible { .. })
        ));
        assert!(LaurentPolynomial::zero()
            .divide_by_one_plus_z()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn symbol_power_examples() {
        let q = poly(0, &[1, 1]).scale(&rat(1, 2));
        assert_eq!(q.symbol_power(1), q);
        assert_eq!(q.symbol_power(2), poly(0, &[1, 1, 1, 1]).scale(&rat(1, 4)));
        assert_eq!(
            LaurentPolynomial::one().symbol_power(5),
            LaurentPolynomial::one()
        );
    }

    #[test]
    fn coset_sum_examples() {
        let q = poly(0, &[1, 1]).scale(&rat(1, 2));
        assert_eq!(q.coset_abs_sums(2), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(
            four_point_difference().coset_abs_sums(2),
            vec![rat(10, 16), rat(10, 16)]
        );
        assert_eq!(LaurentPolynomial::zero().coset_abs_sums(3), vec![int(0); 3]);

        assert_eq!(
            poly(0, &[2, -1]).coset_signed_sums(2),
            vec![int(2), int(-1)]
        );
        assert_eq!(q.coset_signed_sums(2), vec![rat(1, 2), rat(1, 2)]);
        let p = four_point_symbol();
        assert_eq!(p.coset_signed_sums(1), vec![p.evaluate(&int(1)).unwrap()]);
    }

    #[test]
    fn negative_degrees_use_euclidean_residues() {
        // z^-1 lives in the odd coset, z^-2 in the even one.
        let p = poly(-2, &[3, 5]);
        assert_eq!(p.coset_signed_sums(2), vec![int(3), int(5)]);
        assert_eq!(p.coset_signed_sums(4), vec![int(0), int(0), int(3), int(5)]);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(-1, &[1, 0, -2]).to_string(), "z^-1 - 2*z");
        assert_eq!(poly(0, &[2, 1, -1]).to_string(), "2 + z - z^2");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }
}
