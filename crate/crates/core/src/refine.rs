//! Refinement of finitely supported data on dyadic grids.
//!
//! Sequences are zero outside their stored window, so whole-sequence
//! identities such as `delta(S_a f) = S_q delta(f)` hold exactly. Every value
//! carries an `interior` flag that is set when its stencil never reached into
//! the zero extension; boundary-free measurements use only flagged values.

use num_traits::Signed;
use num_traits::{ToPrimitive, Zero};

use crate::laurent::{int, LaurentPolynomial, Rational};
use crate::scheme::Scheme;

/// Level-`k` data `f^k`, with value `i` attached to `t = 2^-k (offset + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSequence {
    level: u32,
    offset: i64,
    values: Vec<Rational>,
    interior: Vec<bool>,
}

impl GridSequence {
    /// Initial data; every stored value counts as interior.
    pub fn new(level: u32, offset: i64, values: Vec<Rational>) -> Self {
        let interior = vec![true; values.len()];
        Self {
            level,
            offset,
            values,
            interior,
        }
    }

    /// The delta sequence: 1 at index 0 of level 0.
    pub fn delta() -> Self {
        Self::new(0, 0, vec![int(1)])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn interior_flags(&self) -> &[bool] {
        &self.interior
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at absolute index `i` (zero outside the window).
    pub fn get(&self, index: i64) -> Rational {
        self.slot(index)
            .map(|s| self.values[s].clone())
            .unwrap_or_else(Rational::zero)
    }

    fn slot(&self, index: i64) -> Option<usize> {
        let s = index - self.offset;
        (s >= 0 && (s as usize) < self.values.len()).then_some(s as usize)
    }

    fn is_interior(&self, index: i64) -> bool {
        self.slot(index).is_some_and(|s| self.interior[s])
    }

    /// Dyadic parameter `2^-level * index`.
    pub fn parameter(&self, index: i64) -> Rational {
        Rational::new(index.into(), num_traits::pow(2.into(), self.level as usize))
    }

    /// Absolute index range of the values flagged interior.
    pub fn interior_window(&self) -> Option<(i64, i64)> {
        let first = self.interior.iter().position(|&b| b)?;
        let last = self.interior.iter().rposition(|&b| b)?;
        Some((self.offset + first as i64, self.offset + last as i64))
    }

    /// Supremum norm over the whole finitely supported sequence.
    pub fn sup_norm(&self) -> Rational {
        self.values
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Supremum norm over interior values only.
    pub fn interior_sup_norm(&self) -> Option<Rational> {
        self.values
            .iter()
            .zip(&self.interior)
            .filter(|(_, &inside)| inside)
            .map(|(v, _)| v.abs())
            .max()
    }
}

/// One refinement step `(S_a f)_i = sum_j a_(i-2j) f_j`.
pub fn apply(scheme: &Scheme, f: &GridSequence) -> GridSequence {
    apply_with_stride(scheme.symbol(), 1, f)
}

/// `(S f)_i = sum_j s_(i - 2^steps j) f_j` for the symbol `s`, advancing the
/// level by `steps`. With `s = q^L` and `steps = L` this equals `L`
/// applications of `S_q`.
pub fn apply_with_stride(symbol: &LaurentPolynomial, steps: u32, f: &GridSequence) -> GridSequence {
    let stride = 1i64 << steps;
    let level = f.level + steps;
    if symbol.is_zero() || f.is_empty() {
        return GridSequence {
            level,
            offset: stride * f.offset,
            values: Vec::new(),
            interior: Vec::new(),
        };
    }
    let lo = symbol.lowest_degree();
    let hi = symbol.highest_degree().expect("nonzero symbol");
    let n = f.len();
    let len = (hi - lo) as usize + 1 + stride as usize * (n - 1);
    let offset = lo + stride * f.offset;

    let mut values = vec![Rational::zero(); len];
    for (j, value) in f.values.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let base = stride as usize * j;
        for (k, c) in symbol.coefficients().iter().enumerate() {
            if !c.is_zero() {
                values[base + k] += c * value;
            }
        }
    }

    let interior = (0..len as i64)
        .map(|s| {
            let i = offset + s;
            let first = (i - hi).div_euclid(stride) + ((i - hi).rem_euclid(stride) != 0) as i64;
            let last = (i - lo).div_euclid(stride);
            (first..=last).all(|j| f.is_interior(j))
        })
        .collect();

    GridSequence {
        level,
        offset,
        values,
        interior,
    }
}

/// `f^k` from `f^0` by `k` refinement steps.
pub fn refine_to_level(scheme: &Scheme, f0: &GridSequence, k: u32) -> GridSequence {
    (0..k).fold(f0.clone(), |f, _| apply(scheme, &f))
}

/// Forward differences of the zero-extended sequence.
///
/// The result has one more value than `f`. The difference `f_(i+1) - f_i` is
/// stored at index `i + 1`, the indexing under which
/// `delta(apply(S_a, f)) = apply(S_q, delta(f))` holds index for index.
pub fn delta(f: &GridSequence) -> GridSequence {
    let n = f.len();
    let values = (0..=n)
        .map(|s| {
            let i = f.offset + s as i64;
            f.get(i) - f.get(i - 1)
        })
        .collect();
    let interior = (0..=n)
        .map(|s| {
            let i = f.offset + s as i64;
            f.is_interior(i) && f.is_interior(i - 1)
        })
        .collect();
    GridSequence {
        level: f.level,
        offset: f.offset,
        values,
        interior,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLevel {
    pub level: u32,
    /// `||delta f^k||` over the full sequence.
    pub delta_norm: Rational,
    /// `||delta f^k|| / ||delta f^(k-1)||`; absent at level 0 or after a zero norm.
    pub ratio: Option<Rational>,
    pub interior_window: Option<(i64, i64)>,
    pub interior_delta_norm: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub mu: Rational,
    pub contractivity_number: u32,
    /// Levels at which `||delta f^k|| > mu^(k / L) max_(l < L) ||delta f^l||`.
    pub violations: Vec<u32>,
}

impl BoundCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionTrace {
    pub levels: Vec<TraceLevel>,
    pub bound_check: Option<BoundCheck>,
}

/// Exact `||delta f^k||` for `k = 0..=k_max`, with the certified bound checked
/// when a contractivity pair `(mu, L)` is supplied.
///
/// The ratios are only meaningful for schemes meeting the necessary
/// conditions.
pub fn contraction_trace(
    scheme: &Scheme,
    f0: &GridSequence,
    k_max: u32,
    certified: Option<(&Rational, u32)>,
) -> ContractionTrace {
    let mut levels: Vec<TraceLevel> = Vec::with_capacity(k_max as usize + 1);
    let mut f = f0.clone();
    for k in 0..=k_max {
        if k > 0 {
            f = apply(scheme, &f);
        }
        let d = delta(&f);
        let delta_norm = d.sup_norm();
        let ratio = levels
            .last()
            .filter(|prev| !prev.delta_norm.is_zero())
            .map(|prev| &delta_norm / &prev.delta_norm);
        levels.push(TraceLevel {
            level: f.level(),
            ratio,
            interior_window: d.interior_window(),
            interior_delta_norm: d.interior_sup_norm(),
            delta_norm,
        });
    }

    let bound_check = certified.map(|(mu, number)| {
        assert!(number >= 1, "contractivity number must be at least 1");
        let start = levels
            .iter()
            .take(number as usize)
            .map(|l| l.delta_norm.clone())
            .max()
            .unwrap_or_else(Rational::zero);
        let violations = levels
            .iter()
            .enumerate()
            .filter(|(k, l)| {
                let bound = num_traits::pow(mu.clone(), *k / number as usize) * &start;
                l.delta_norm > bound
            })
            .map(|(k, _)| k as u32)
            .collect();
        BoundCheck {
            mu: mu.clone(),
            contractivity_number: number,
            violations,
        }
    });

    ContractionTrace {
        levels,
        bound_check,
    }
}

/// Vertices `(t, f_i)` of the level-`k` polygonal line.
pub fn polyline(f: &GridSequence) -> Vec<(Rational, Rational)> {
    f.values
        .iter()
        .enumerate()
        .map(|(s, v)| (f.parameter(f.offset + s as i64), v.clone()))
        .collect()
}

/// Like [`polyline`], with the zero extension closed off by one vertex on
/// each side.
pub fn polyline_with_zero_ends(f: &GridSequence) -> Vec<(Rational, Rational)> {
    if f.is_empty() {
        return Vec::new();
    }
    let mut vertices = Vec::with_capacity(f.len() + 2);
    vertices.push((f.parameter(f.offset - 1), Rational::zero()));
    vertices.extend(polyline(f));
    vertices.push((f.parameter(f.offset + f.len() as i64), Rational::zero()));
    vertices
}

/// Vertices of interior-flagged values only.
pub fn interior_polyline(f: &GridSequence) -> Vec<(Rational, Rational)> {
    polyline(f)
        .into_iter()
        .zip(&f.interior)
        .filter(|(_, &inside)| inside)
        .map(|(v, _)| v)
        .collect()
}

/// `f^k` for `f^0 = delta`: the level-`k` approximation of the basic limit
/// function. Exact at dyadic points for interpolatory schemes.
pub fn basic_limit_samples(scheme: &Scheme, k: u32) -> GridSequence {
    refine_to_level(scheme, &GridSequence::delta(), k)
}

/// Floating-point refinement for large exports. Returns the offset and values
/// at level `level + k`. Never used for verdicts.
pub fn refine_f64(scheme: &Scheme, offset: i64, values: &[f64], k: u32) -> (i64, Vec<f64>) {
    let mask: Vec<f64> = scheme
        .symbol()
        .coefficients()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let lo = scheme.symbol().lowest_degree();
    let mut offset = offset;
    let mut current = values.to_vec();
    for _ in 0..k {
        if current.is_empty() {
            offset *= 2;
            continue;
        }
        let mut next = vec![0.0; mask.len() + 2 * (current.len() - 1)];
        for (j, v) in current.iter().enumerate() {
            for (m, c) in mask.iter().enumerate() {
                next[2 * j + m] += c * v;
            }
        }
        offset = lo + 2 * offset;
        current = next;
    }
    (offset, current)
}
