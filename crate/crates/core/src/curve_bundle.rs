//! Curves, split vector bundles on them, and the slope data attached to a
//! direct sum of line bundles.
//!
//! A split bundle `L_1 ⊕ … ⊕ L_r` is recorded only through the degrees of its
//! summands, which is all the numerical questions in this crate depend on.
//! Everything here is integer or exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// A smooth projective curve, remembered by its genus and the characteristic
/// of the ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    genus: u32,
    characteristic: u64,
}

impl Curve {
    pub fn new(genus: u32, characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(Self {
            genus,
            characteristic,
        })
    }

    /// Curve of genus `genus` in characteristic zero.
    pub fn char_zero(genus: u32) -> Self {
        Self {
            genus,
            characteristic: 0,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// `deg K_C = 2g - 2`.
    pub fn canonical_degree(&self) -> i64 {
        2 * i64::from(self.genus) - 2
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A direct sum of line bundles, stored as the degrees `d_1 >= … >= d_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    /// Builds the bundle from summand degrees in any order.
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyBundle);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees })
    }

    /// Degrees in non-increasing order.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Degree of `det E`.
    pub fn det_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees[0]
    }

    pub fn min_degree(&self) -> i64 {
        self.degrees[self.degrees.len() - 1]
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(self.det_degree().into(), BigInt::from(self.rank()))
    }

    /// Tensor with a line bundle of degree `t`.
    pub fn twist(&self, t: i64) -> Self {
        Self {
            degrees: self.degrees.iter().map(|d| d + t).collect(),
        }
    }

    /// Harder–Narasimhan data. For a split bundle the filtration pieces are
    /// the summands of equal degree, taken from the largest degree down.
    pub fn hn_data(&self) -> HnData {
        let mut blocks: Vec<HnBlock> = Vec::new();
        for &d in &self.degrees {
            match blocks.last_mut() {
                Some(last) if last.degree == d => last.multiplicity += 1,
                _ => blocks.push(HnBlock {
                    degree: d,
                    multiplicity: 1,
                }),
            }
        }
        HnData { blocks }
    }

    /// Rank, degree and slope of `S^n E`.
    pub fn symmetric_power_stats(&self, n: u64) -> SymmetricPowerStats {
        let r = BigInt::from(self.rank());
        let n_big = BigInt::from(n);
        let top: BigInt = &r - 1 + &n_big;
        let rank = binomial(top.clone(), n_big.clone());
        let degree = if top < r {
            BigInt::zero()
        } else {
            binomial(top, r) * BigInt::from(self.det_degree())
        };
        let slope = self.slope() * BigRational::from_integer(n_big);
        SymmetricPowerStats {
            rank,
            degree,
            slope,
        }
    }

    /// Pull back along the `e`-th power of Frobenius: every degree gets
    /// multiplied by `p^e`.
    pub fn frobenius_pullback(&self, curve: &Curve, e: u32) -> Result<Self> {
        if e == 0 {
            return Ok(self.clone());
        }
        if curve.characteristic() == 0 {
            return Err(Error::FrobeniusCharZero);
        }
        let factor = i64::try_from(curve.characteristic())
            .ok()
            .and_then(|p| p.checked_pow(e))
            .ok_or(Error::Overflow("frobenius_pullback"))?;
        let degrees = self
            .degrees
            .iter()
            .map(|d| d.checked_mul(factor))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("frobenius_pullback"))?;
        Ok(Self { degrees })
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// One graded piece of the Harder–Narasimhan filtration: `multiplicity`
/// summands of degree `degree`, so slope equal to `degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HnBlock {
    pub degree: i64,
    pub multiplicity: usize,
}

impl HnBlock {
    pub fn slope(&self) -> BigRational {
        BigRational::from_integer(self.degree.into())
    }
}

/// Blocks are in strictly decreasing slope order and never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HnData {
    blocks: Vec<HnBlock>,
}

impl HnData {
    pub fn blocks(&self) -> &[HnBlock] {
        &self.blocks
    }

    pub fn mu_max(&self) -> BigRational {
        self.blocks[0].slope()
    }

    pub fn mu_min(&self) -> BigRational {
        self.blocks[self.blocks.len() - 1].slope()
    }

    pub fn is_semistable(&self) -> bool {
        self.blocks.len() == 1
    }
}

impl fmt::Display for HnData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("({},{})", b.degree, b.multiplicity))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPowerStats {
    pub rank: BigInt,
    pub degree: BigInt,
    pub slope: BigRational,
}

/// Slope comparison showing `S^{rm} E` is unstable once `-mK_X` has a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstabilityCertificate {
    /// Slope of the line subbundle `O(mK_C) ⊗ (det E)^m`.
    pub sub_slope: BigRational,
    /// Slope of `S^{rm} E`.
    pub ambient_slope: BigRational,
    pub destabilizes: bool,
}

pub fn instability_certificate(
    curve: &Curve,
    bundle: &SplitBundle,
    m: i64,
) -> Result<InstabilityCertificate> {
    if m <= 0 {
        return Err(Error::NonPositiveMultiple(m));
    }
    let m_big = BigInt::from(m);
    let sub = (BigInt::from(curve.canonical_degree()) + BigInt::from(bundle.det_degree())) * &m_big;
    let sub_slope = BigRational::from_integer(sub);
    let rm = bundle.rank() as u64 * m as u64;
    let ambient_slope = bundle.symmetric_power_stats(rm).slope;
    let destabilizes = sub_slope > ambient_slope;
    Ok(InstabilityCertificate {
        sub_slope,
        ambient_slope,
        destabilizes,
    })
}

/// Least `e >= 0` with `p^e (d_1 - d_2) > 2g - 2`, for a rank-2 bundle.
///
/// In characteristic zero only `e = 0` is tried.
pub fn min_destabilizing_e(curve: &Curve, bundle: &SplitBundle) -> Result<Option<u32>> {
    if bundle.rank() != 2 {
        return Err(Error::UnsupportedRank {
            op: "min_destabilizing_e",
            supported: 2,
            rank: bundle.rank(),
        });
    }
    let gap = BigInt::from(bundle.degrees[0]) - BigInt::from(bundle.degrees[1]);
    let threshold = BigInt::from(curve.canonical_degree());
    if gap > threshold {
        return Ok(Some(0));
    }
    let p = curve.characteristic();
    if gap.is_zero() || p == 0 {
        return Ok(None);
    }
    // gap >= 1 and p >= 2, so p^e * gap passes any threshold eventually.
    let p = BigInt::from(p);
    let mut scaled = gap;
    let mut e = 0u32;
    while scaled <= threshold {
        scaled *= &p;
        e += 1;
    }
    Ok(Some(e))
}

/// `p^e` as a big integer, with `p^0 = 1` in every characteristic.
pub fn frobenius_factor(curve: &Curve, e: u32) -> BigInt {
    if e == 0 {
        BigInt::one()
    } else {
        BigInt::from(curve.characteristic()).pow(e)
    }
}
