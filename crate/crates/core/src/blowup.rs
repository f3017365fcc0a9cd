//! Iterated point blow-ups of a ruled surface, tracked numerically.
//!
//! Classes on `X̃` live in `Z·ξ ⊕ Z·f ⊕ Z·e_1 ⊕ … ⊕ Z·e_n` where `e_i` is the
//! total transform of the i-th exceptional curve. The `e_i` are orthogonal to
//! the pulled-back lattice and to each other, with `e_i^2 = -1`, and
//! `K_{X̃} = f^*K_X + Σ e_i`.
//!
//! Centers are abstract. A scenario only says whether each center lies on the
//! strict transform of the budget divisor `D`; that incidence is what makes
//! `f^*D - Σ e_i` effective.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::curve_bundle::{Curve, SplitBundle};
use crate::error::{Error, Result};
use crate::ruled_surface::{NumClass, RuledSurface};

/// A class `a·ξ + b·f + Σ c_i e_i` on a blown-up surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtClass {
    pub base: NumClass,
    pub exceptional: Vec<i64>,
}

impl ExtClass {
    pub fn pullback(base: NumClass, n: usize) -> Self {
        Self {
            base,
            exceptional: vec![0; n],
        }
    }

    pub fn exceptional_curve(i: usize, n: usize) -> Self {
        let mut exceptional = vec![0; n];
        exceptional[i] = 1;
        Self {
            base: NumClass::ZERO,
            exceptional,
        }
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        assert_eq!(self.exceptional.len(), other.exceptional.len());
        ExtClass {
            base: self.base + other.base,
            exceptional: self
                .exceptional
                .iter()
                .zip(&other.exceptional)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn neg(&self) -> ExtClass {
        ExtClass {
            base: -self.base,
            exceptional: self.exceptional.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}ξ + {}f", self.base.a, self.base.b)?;
        for (i, c) in self.exceptional.iter().enumerate() {
            if *c != 0 {
                write!(f, " + {}e{}", c, i + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlownUpSurface {
    base: RuledSurface,
    n: usize,
}

impl BlownUpSurface {
    pub fn new(base: RuledSurface) -> Self {
        Self { base, n: 0 }
    }

    pub fn base(&self) -> &RuledSurface {
        &self.base
    }

    pub fn blowups(&self) -> usize {
        self.n
    }

    pub fn blow_up(&self) -> Self {
        Self {
            base: self.base.clone(),
            n: self.n + 1,
        }
    }

    pub fn canonical_class(&self) -> ExtClass {
        ExtClass {
            base: self.base.canonical_class(),
            exceptional: vec![1; self.n],
        }
    }

    /// Intersection pairing on the extended lattice. Needs a surface base.
    pub fn check_class(&self, x: &ExtClass, y: &ExtClass) -> Result<BigInt> {
        if self.base.rank() != 2 {
            return Err(Error::UnsupportedRank {
                op: "check_class",
                supported: 2,
                rank: self.base.rank(),
            });
        }
        for c in [x, y] {
            if c.exceptional.len() != self.n {
                return Err(Error::ExceptionalLength {
                    expected: self.n,
                    got: c.exceptional.len(),
                });
            }
        }
        let base = self.base.pair(x.base, y.base)?;
        let exc: BigInt = x
            .exceptional
            .iter()
            .zip(&y.exceptional)
            .map(|(p, q)| BigInt::from(*p) * BigInt::from(*q))
            .sum();
        Ok(base - exc)
    }

    pub fn canonical_square(&self) -> Result<BigInt> {
        let k = self.canonical_class();
        self.check_class(&k, &k)
    }
}

/// One blow-up in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupStep {
    pub on_strict_transform: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlowupScenario {
    base: RuledSurface,
    budget_class: NumClass,
    steps: Vec<BlowupStep>,
}

impl BlowupScenario {
    pub fn new(base: RuledSurface, budget_class: NumClass, steps: Vec<BlowupStep>) -> Result<Self> {
        if base.rank() != 2 {
            return Err(Error::UnsupportedRank {
                op: "blow-up scenario",
                supported: 2,
                rank: base.rank(),
            });
        }
        if !base.pseff_test(budget_class) {
            return Err(Error::BudgetNotPseudoEffective {
                a: budget_class.a,
                b: budget_class.b,
            });
        }
        Ok(Self {
            base,
            budget_class,
            steps,
        })
    }

    /// Parses the scenario JSON format:
    ///
    /// ```json
    /// {"base": {"genus": 1, "characteristic": 0, "degrees": [3, 0]},
    ///  "budget_class": {"a": 0, "b": 2},
    ///  "steps": [{"on_strict_transform": true}]}
    /// ```
    ///
    /// Every field is required and unknown fields are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.try_into()
    }

    pub fn base(&self) -> &RuledSurface {
        &self.base
    }

    pub fn budget_class(&self) -> NumClass {
        self.budget_class
    }

    pub fn steps(&self) -> &[BlowupStep] {
        &self.steps
    }

    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            base: BaseSpec {
                genus: self.base.curve().genus(),
                characteristic: self.base.curve().characteristic(),
                degrees: self.base.bundle().degrees().to_vec(),
            },
            budget_class: self.budget_class,
            steps: self.steps.clone(),
        }
    }
}

/// On-disk form of a [`BlowupScenario`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub base: BaseSpec,
    pub budget_class: NumClass,
    pub steps: Vec<BlowupStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub genus: u32,
    pub characteristic: u64,
    pub degrees: Vec<i64>,
}

impl TryFrom<ScenarioFile> for BlowupScenario {
    type Error = Error;

    fn try_from(file: ScenarioFile) -> Result<Self> {
        let field = |name: &str, e: Error| Error::Schema(format!("{name}: {e}"));
        let curve = Curve::new(file.base.genus, file.base.characteristic)
            .map_err(|e| field("base.characteristic", e))?;
        let bundle = SplitBundle::new(file.base.degrees).map_err(|e| field("base.degrees", e))?;
        let base = RuledSurface::new(curve, bundle).map_err(|e| field("base.degrees", e))?;
        BlowupScenario::new(base, file.budget_class, file.steps).map_err(|e| match e {
            Error::BudgetNotPseudoEffective { .. } => field("budget_class", e),
            other => field("base.degrees", other),
        })
    }
}

/// `-K_{X̃} = f^*(-K_X - D) + (f^*D - Σ e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// `-K_X - D` on the base; certified when big.
    pub big_part: NumClass,
    /// `f^*D - Σ e_i`; effective when every center is on the strict transform of `D`.
    pub effective_part: ExtClass,
    pub anticanonical: ExtClass,
    pub big_part_is_big: bool,
    /// Indices (0-based) of steps whose center is not on the strict transform.
    pub off_budget_steps: Vec<usize>,
    /// `K^2` after 0, 1, …, n blow-ups.
    pub canonical_squares: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub certified: bool,
    pub witness: Witness,
}

/// Sufficient test for bigness of `-K` after the scenario's blow-ups. A
/// negative answer means "not certified", not "not big".
pub fn certify_big_anticanonical(scenario: &BlowupScenario) -> Result<Certificate> {
    let base = scenario.base();
    let n = scenario.steps().len();
    let big_part = base.anticanonical_class() - scenario.budget_class();
    let big_part_is_big = base.big_test(big_part);
    let off_budget_steps: Vec<usize> = scenario
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.on_strict_transform)
        .map(|(i, _)| i)
        .collect();

    let effective_part = ExtClass {
        base: scenario.budget_class(),
        exceptional: vec![-1; n],
    };
    let mut surface = BlownUpSurface::new(base.clone());
    let mut canonical_squares = vec![surface.canonical_square()?];
    for _ in 0..n {
        surface = surface.blow_up();
        canonical_squares.push(surface.canonical_square()?);
    }
    let anticanonical = surface.canonical_class().neg();
    debug_assert_eq!(
        ExtClass::pullback(big_part, n).add(&effective_part),
        anticanonical
    );

    Ok(Certificate {
        certified: big_part_is_big && off_budget_steps.is_empty(),
        witness: Witness {
            big_part,
            effective_part,
            anticanonical,
            big_part_is_big,
            off_budget_steps,
            canonical_squares,
        },
    })
}
