//! Section counting for `a·ξ + b·f` on `P_C(E)` with `E = ⊕ L_i`.
//!
//! `π_* O_X(a) ⊗ O(b) = S^a E ⊗ O(b)` splits as a sum over
//! `k ∈ Z^r_{≥0}, Σ k_i = a` of line bundles of degree `Σ k_i d_i + b`, so
//! `h^0(X, a·ξ + b·f)` is a sum of curve counts. Only the per-summand curve
//! count is uncertain (it depends on the line bundle, not just its degree),
//! which is why the data type is an interval.
//!
//! This module is the brute-force oracle. It never consults the slope
//! criterion in [`RuledSurface::big_test`].

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::curve_bundle::Curve;
use crate::error::{Error, Result};
use crate::ruled_surface::{NumClass, RuledSurface};
use crate::truncated_power::divided_difference;

/// Certified bounds `lo <= h^0 <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct H0Interval {
    pub lo: u128,
    pub hi: u128,
}

impl H0Interval {
    pub const ZERO: H0Interval = H0Interval { lo: 0, hi: 0 };

    pub fn new(lo: u128, hi: u128) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn exact(n: u128) -> Self {
        Self { lo: n, hi: n }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl Add for H0Interval {
    type Output = H0Interval;
    fn add(self, rhs: H0Interval) -> H0Interval {
        H0Interval::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl fmt::Display for H0Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Bounds on `h^0(C, L)` for a line bundle of the given degree.
///
/// Above `2g - 2` Riemann–Roch is exact. In the special range the lower bound
/// is `χ = d - g + 1` and the upper bound is Clifford's `⌊d/2⌋ + 1`.
pub fn h0_interval_curve(curve: &Curve, degree: i128) -> H0Interval {
    let g = i128::from(curve.genus());
    if degree > 2 * g - 2 {
        return H0Interval::exact((degree - g + 1) as u128);
    }
    if degree < 0 {
        return H0Interval::ZERO;
    }
    if degree == 0 {
        return H0Interval::new(0, 1);
    }
    let lo = (degree - g + 1).max(0) as u128;
    let hi = (degree / 2 + 1) as u128;
    H0Interval::new(lo, hi)
}

/// Visits `Σ k_i d_i` for every `k ∈ Z^r_{≥0}` with `Σ k_i = total`, without
/// materializing the lattice.
fn for_each_lattice_degree(degrees: &[i64], total: u64, visit: &mut impl FnMut(i128)) {
    fn rec(degrees: &[i64], remaining: u64, acc: i128, visit: &mut impl FnMut(i128)) {
        match degrees {
            [] => {}
            [last] => visit(acc + i128::from(remaining) * i128::from(*last)),
            [first, rest @ ..] => {
                for k in 0..=remaining {
                    rec(
                        rest,
                        remaining - k,
                        acc + i128::from(k) * i128::from(*first),
                        visit,
                    );
                }
            }
        }
    }
    rec(degrees, total, 0, visit);
}

/// Number of lattice points `#A = C(a + r - 1, r - 1)`.
pub fn lattice_size(rank: usize, a: u64) -> BigInt {
    binomial(BigInt::from(a + rank as u64 - 1), BigInt::from(rank - 1))
}

/// Interval for `h^0(X, a·ξ + b·f)`, summed over the lattice of weights.
pub fn h0_class_interval(surface: &RuledSurface, class: NumClass) -> H0Interval {
    if class.a < 0 {
        return H0Interval::ZERO;
    }
    if class.is_zero() {
        // the only summand is O_C itself
        return H0Interval::exact(1);
    }
    let curve = surface.curve();
    let b = i128::from(class.b);
    let mut sum = H0Interval::ZERO;
    for_each_lattice_degree(surface.bundle().degrees(), class.a as u64, &mut |deg| {
        sum = sum + h0_interval_curve(curve, deg + b);
    });
    sum
}

/// `lim_m r!·h^0(m·D)/m^r`.
///
/// The sum over the weight lattice is a Riemann sum for the integral of
/// `max(0, Σ x_i d_i + b)` over the simplex `Σ x_i = a`. Rescaling to the
/// standard simplex and applying Hermite–Genocchi turns that integral into
/// `a^{r-1} · [v_1, …, v_r] t_+^r` with vertex values `v_i = a·d_i + b`.
pub fn volume(surface: &RuledSurface, class: NumClass) -> BigRational {
    if class.a <= 0 {
        return BigRational::zero();
    }
    let r = surface.rank();
    let a = BigInt::from(class.a);
    let knots: Vec<BigInt> = surface
        .bundle()
        .degrees()
        .iter()
        .map(|&d| &a * BigInt::from(d) + BigInt::from(class.b))
        .collect();
    let dd = divided_difference(&knots, r as u32);
    dd * BigRational::from_integer(Pow::pow(&a, (r - 1) as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    BigCertified,
    NotBigCertified,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BigCertified => "BIG_CERTIFIED",
            Verdict::NotBigCertified => "NOT_BIG_CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// How [`growth_classify_with`] turns samples into a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GrowthMode {
    /// Compare the samples with the exact volume: a positive volume is
    /// certified when `lo(m_max)` reaches half the predicted count, a zero
    /// volume when `hi` stays under the degree-`(r-1)` ceiling.
    #[default]
    Volume,
    /// Use only the samples: the normalized count `lo(m)/m^r` must hold at
    /// least 3/4 of its value across the last doubling for bigness, and
    /// `hi(m)/m^r` must drop below 3/4 of it for non-bigness.
    Ladder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub samples: Vec<(u64, H0Interval)>,
    pub verdict: Verdict,
    /// `lo(m_max) / m_max^r`.
    #[serde(serialize_with = "ser_rational")]
    pub leading_coefficient: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub volume: BigRational,
}

fn ser_rational<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `m_max, m_max/2, …, 1` in increasing order.
pub fn doubling_ladder(m_max: u64) -> Vec<u64> {
    let mut ladder = Vec::new();
    let mut m = m_max;
    while m >= 1 {
        ladder.push(m);
        m /= 2;
    }
    ladder.reverse();
    ladder
}

/// `(1 + g)·(κ·m + 1)^{r-1}` with `κ = max(a, |b|, 1)`: bounds `hi(m)` for
/// every non-big class, since then all summand degrees are `<= 0` (at most
/// one section each, at most `(a·m + 1)^{r-1}` summands) or `a = 0` and the
/// count is a single curve count of degree `m·b`.
pub fn sub_maximal_ceiling(surface: &RuledSurface, class: NumClass, m: u64) -> BigInt {
    let kappa = class.a.unsigned_abs().max(class.b.unsigned_abs()).max(1);
    let base = BigInt::from(kappa) * BigInt::from(m) + 1;
    (BigInt::from(surface.curve().genus()) + 1) * Pow::pow(base, (surface.rank() - 1) as u32)
}

pub fn growth_classify(
    surface: &RuledSurface,
    class: NumClass,
    m_max: u64,
) -> Result<GrowthReport> {
    growth_classify_with(surface, class, m_max, GrowthMode::Volume)
}

pub fn growth_classify_with(
    surface: &RuledSurface,
    class: NumClass,
    m_max: u64,
    mode: GrowthMode,
) -> Result<GrowthReport> {
    if m_max < 8 {
        return Err(Error::MMaxTooSmall(m_max));
    }
    let ladder = doubling_ladder(m_max);
    let mut samples = Vec::with_capacity(ladder.len());
    for &m in &ladder {
        let t = i64::try_from(m).map_err(|_| Error::Overflow("growth_classify"))?;
        let a = class
            .a
            .checked_mul(t)
            .ok_or(Error::Overflow("growth_classify"))?;
        let b = class
            .b
            .checked_mul(t)
            .ok_or(Error::Overflow("growth_classify"))?;
        samples.push((m, NumClass::new(a, b)));
    }
    let samples: Vec<(u64, H0Interval)> = samples
        .into_par_iter()
        .map(|(m, c)| (m, h0_class_interval(surface, c)))
        .collect();

    let r = surface.rank() as u32;
    let vol = volume(surface, class);
    let (m_top, top) = samples[samples.len() - 1];
    let m_top_r = BigInt::from(m_top).pow(r);
    let leading_coefficient = BigRational::new(BigInt::from(top.lo), m_top_r.clone());

    let under_ceiling = samples
        .iter()
        .all(|&(m, iv)| BigInt::from(iv.hi) <= sub_maximal_ceiling(surface, class, m));

    let verdict = match mode {
        GrowthMode::Volume => {
            if vol.is_positive() {
                let predicted = &vol * BigRational::from_integer(m_top_r)
                    / BigRational::from_integer(factorial(r));
                let half = predicted / BigRational::from_integer(2.into());
                if BigRational::from_integer(top.lo.into()) > half {
                    Verdict::BigCertified
                } else {
                    Verdict::Inconclusive
                }
            } else if under_ceiling {
                Verdict::NotBigCertified
            } else {
                Verdict::Inconclusive
            }
        }
        GrowthMode::Ladder => {
            let (m_prev, prev) = samples[samples.len() - 2];
            let prev_r = BigInt::from(m_prev).pow(r);
            let m_top_r = BigInt::from(m_top).pow(r);
            // q(m) = h(m)/m^r; compare 4·q(m_top) against 3·q(m_prev)
            let scaled_top = |h: u128| BigInt::from(4) * BigInt::from(h) * &prev_r;
            let scaled_prev = |h: u128| BigInt::from(3) * BigInt::from(h) * &m_top_r;
            let grows = top.lo > 0 && scaled_top(top.lo) >= scaled_prev(prev.lo);
            let decays = top.hi == 0 || scaled_top(top.hi) <= scaled_prev(prev.hi);
            match (grows, decays && under_ceiling) {
                (true, false) => Verdict::BigCertified,
                (false, true) => Verdict::NotBigCertified,
                _ => Verdict::Inconclusive,
            }
        }
    };

    Ok(GrowthReport {
        samples,
        verdict,
        leading_coefficient,
        volume: vol,
    })
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
