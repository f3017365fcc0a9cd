//! Numerical classes on `X = P_C(E)` for a split bundle `E`.
//!
//! A class is written `a·ξ + b·f` where `ξ` is the tautological class
//! `O_X(1)` (with `π_* O_X(1) = E`) and `f` is a fiber. The Chow ring
//! relations over a curve are `ξ^r = deg E`, `ξ^{r-1}·f = 1`, `f^2 = 0`.
//!
//! Bigness of `a·ξ + b·f` is decided by the slope criterion
//! `a > 0 && b + a·μ_max(E) > 0`. Note that the sign is chosen so that `-K_X`
//! recovers `(r-1) d_1 - Σ_{i≥2} d_i > 2g - 2`; read literally with `D` on the
//! other side, the criterion `deg D < m μ_max` has the opposite sign.
//!
//! Twists of `-K_X` by a pulled-back line bundle `π^*L_C` (rank 2,
//! `E = L ⊕ M`) are ordinary classes here: `-K_X - π^*L_C` is
//! `(2, 2 - 2g - deg E - deg L_C)` and is big iff
//! `deg L - deg M - deg L_C > 2g - 2`, while `-K_X + π^*L_C` gives
//! `deg L - deg M + deg L_C > 2g - 2`. Pick the class and call [`RuledSurface::big_test`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve_bundle::{Curve, SplitBundle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuledSurface {
    curve: Curve,
    bundle: SplitBundle,
}

impl RuledSurface {
    pub fn new(curve: Curve, bundle: SplitBundle) -> Result<Self> {
        if bundle.rank() < 2 {
            return Err(Error::RankTooSmall(bundle.rank()));
        }
        Ok(Self { curve, bundle })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    /// `K_X = -r·ξ + π^*(K_C + det E)`.
    pub fn canonical_class(&self) -> NumClass {
        NumClass::new(
            -(self.rank() as i64),
            self.curve.canonical_degree() + self.bundle.det_degree(),
        )
    }

    pub fn anticanonical_class(&self) -> NumClass {
        -self.canonical_class()
    }

    /// Top intersection of exactly `r` classes.
    pub fn intersect(&self, classes: &[NumClass]) -> Result<BigInt> {
        let r = self.rank();
        if classes.len() != r {
            return Err(Error::Arity {
                expected: r,
                got: classes.len(),
            });
        }
        // (Π a_j) ξ^r + Σ_j b_j Π_{i≠j} a_i ξ^{r-1} f; two or more fibers vanish.
        let all_a: BigInt = classes.iter().map(|c| BigInt::from(c.a)).product();
        let mut total = all_a * BigInt::from(self.bundle.det_degree());
        for (j, cj) in classes.iter().enumerate() {
            let others: BigInt = classes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, c)| BigInt::from(c.a))
                .product();
            total += others * BigInt::from(cj.b);
        }
        Ok(total)
    }

    /// Rank-2 intersection pairing.
    pub fn pair(&self, x: NumClass, y: NumClass) -> Result<BigInt> {
        self.intersect(&[x, y])
    }

    /// `b + a·μ_max(E)`.
    fn top_margin(&self, class: NumClass) -> BigRational {
        BigRational::from_integer(class.b.into())
            + BigRational::from_integer(class.a.into()) * self.bundle.hn_data().mu_max()
    }

    pub fn big_test(&self, class: NumClass) -> bool {
        class.a > 0 && self.top_margin(class).is_positive()
    }

    /// Closure of the big cone.
    pub fn pseff_test(&self, class: NumClass) -> bool {
        class.a >= 0 && !self.top_margin(class).is_negative()
    }

    /// Nef cone of a ruled surface: nonnegative against the fiber and the
    /// negative section `σ = ξ - d_1·f`.
    pub fn nef_test(&self, class: NumClass) -> Result<bool> {
        if self.rank() != 2 {
            return Err(Error::UnsupportedRank {
                op: "nef_test",
                supported: 2,
                rank: self.rank(),
            });
        }
        let margin = BigRational::from_integer(class.b.into())
            + BigRational::from_integer(class.a.into()) * self.bundle.hn_data().mu_min();
        Ok(class.a >= 0 && !margin.is_negative())
    }

    /// Class of the section cut out by the quotient `E -> L_r`; for rank 2
    /// this is the curve of most negative self-intersection `d_2 - d_1`.
    pub fn negative_section(&self) -> NumClass {
        NumClass::new(1, -self.bundle.max_degree())
    }

    pub fn fiber(&self) -> NumClass {
        NumClass::new(0, 1)
    }
}

impl fmt::Display for RuledSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P(E) over g={} char={} with E degrees ({})",
            self.curve.genus(),
            self.curve.characteristic(),
            self.bundle
        )
    }
}

/// `a·ξ + b·f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumClass {
    pub a: i64,
    pub b: i64,
}

impl NumClass {
    pub const ZERO: NumClass = NumClass { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn scale(self, t: i64) -> Self {
        Self::new(self.a * t, self.b * t)
    }

    /// Same line bundle written against `E ⊗ N` with `deg N = t`: since
    /// `O_{P(E⊗N)}(1) = O_{P(E)}(1) ⊗ π^*N`, the fiber coefficient drops by `a·t`.
    pub fn retwist(self, t: i64) -> Self {
        Self::new(self.a, self.b - self.a * t)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl Add for NumClass {
    type Output = NumClass;
    fn add(self, rhs: NumClass) -> NumClass {
        NumClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for NumClass {
    type Output = NumClass;
    fn sub(self, rhs: NumClass) -> NumClass {
        NumClass::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass::new(-self.a, -self.b)
    }
}

impl Mul<NumClass> for i64 {
    type Output = NumClass;
    fn mul(self, rhs: NumClass) -> NumClass {
        rhs.scale(self)
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Zero for NumClass {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        NumClass::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(g: u32, d: &[i64]) -> RuledSurface {
        RuledSurface::new(Curve::char_zero(g), SplitBundle::new(d.to_vec()).unwrap()).unwrap()
    }

    fn c(a: i64, b: i64) -> NumClass {
        NumClass::new(a, b)
    }

    #[test]
    fn rank_one_rejected() {
        let b = SplitBundle::new(vec![3]).unwrap();
        assert_eq!(
            RuledSurface::new(Curve::char_zero(1), b),
            Err(Error::RankTooSmall(1))
        );
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(surface(1, &[1, 0]).canonical_class(), c(-2, 1));
        assert_eq!(surface(0, &[0, 0]).canonical_class(), c(-2, -2));
        assert_eq!(surface(2, &[5, 0]).canonical_class(), c(-2, 7));
    }

    #[test]
    fn intersection_relations() {
        let s = surface(1, &[1, 0]);
        let xi = c(1, 0);
        let f = c(0, 1);
        assert_eq!(s.pair(xi, xi).unwrap(), 1.into());
        assert_eq!(s.pair(xi, f).unwrap(), 1.into());
        assert_eq!(s.pair(f, f).unwrap(), 0.into());

        let s3 = surface(2, &[1, 0, 0]);
        assert_eq!(s3.intersect(&[xi, xi, xi]).unwrap(), 1.into());
        assert_eq!(s3.intersect(&[xi, xi, f]).unwrap(), 1.into());
        assert_eq!(s3.intersect(&[xi, f, f]).unwrap(), 0.into());
        assert_eq!(
            s3.intersect(&[xi, xi]),
            Err(Error::Arity {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn canonical_self_intersection() {
        for g in 0..=4u32 {
            for d1 in -3..=3 {
                for d2 in -3..=d1 {
                    let s = surface(g, &[d1, d2]);
                    let k = s.canonical_class();
                    assert_eq!(s.pair(k, k).unwrap(), BigInt::from(8 * (1 - g as i64)));
                }
            }
        }
    }

    #[test]
    fn big_examples() {
        let s = surface(2, &[5, 0]);
        assert!(s.big_test(s.anticanonical_class()));
        assert_eq!(s.anticanonical_class(), c(2, -7));

        let s = surface(1, &[1, 0]);
        assert!(!s.big_test(c(1, -1)));
        assert!(!s.big_test(c(0, 5)));

        let s = surface(3, &[4, 0, 0]);
        assert_eq!(s.anticanonical_class(), c(3, -8));
        assert!(s.big_test(s.anticanonical_class()));
    }

    #[test]
    fn pseff_examples() {
        let s = surface(2, &[3, -1]);
        assert!(s.pseff_test(c(1, -3)));
        assert!(!s.big_test(c(1, -3)));
        assert!(s.pseff_test(c(0, 1)));
        assert!(!s.pseff_test(c(-1, 100)));
    }

    #[test]
    fn nef_examples() {
        let s = surface(1, &[1, 0]);
        assert!(s.nef_test(c(1, 0)).unwrap());
        assert!(s.big_test(c(1, 0)));
        assert!(s.nef_test(c(0, 1)).unwrap());
        assert!(!s.big_test(c(0, 1)));

        let sigma = s.negative_section();
        assert_eq!(sigma, c(1, -1));
        assert_eq!(s.pair(sigma, sigma).unwrap(), (-1).into());
        assert!(!s.nef_test(sigma).unwrap());

        assert!(matches!(
            surface(1, &[1, 0, 0]).nef_test(c(1, 0)),
            Err(Error::UnsupportedRank { rank: 3, .. })
        ));
    }

    #[test]
    fn nef_agrees_with_curve_pairings() {
        for d1 in -3..=3 {
            for d2 in -3..=d1 {
                let s = surface(1, &[d1, d2]);
                for a in -3..=3 {
                    for b in -8..=8 {
                        let x = c(a, b);
                        let by_pairing = s.pair(x, s.fiber()).unwrap() >= BigInt::zero()
                            && s.pair(x, s.negative_section()).unwrap() >= BigInt::zero();
                        assert_eq!(s.nef_test(x).unwrap(), by_pairing, "{s} {x}");
                    }
                }
            }
        }
    }
}
