//! Exact numerics for divisor classes on projective bundles `P_C(E)` over a
//! smooth curve `C`, with `E` a direct sum of line bundles.
//!
//! * [`curve_bundle`]: curves, split bundles, slopes, symmetric powers,
//!   Frobenius pull-backs.
//! * [`ruled_surface`]: classes `a·ξ + b·f`, intersections, big/pseff/nef tests.
//! * [`h0_oracle`]: interval section counts, growth verdicts and volumes,
//!   computed without the slope criterion.
//! * [`blowup`]: point blow-ups and the bigness certificate for `-K`.
//! * [`scan`]: grid comparisons of criterion versus oracle.

pub mod blowup;
pub mod curve_bundle;
mod error;
pub mod h0_oracle;
pub mod ruled_surface;
pub mod scan;
mod truncated_power;

pub use blowup::{
    certify_big_anticanonical, BlownUpSurface, BlowupScenario, BlowupStep, Certificate, ExtClass,
    Witness,
};
pub use curve_bundle::{
    instability_certificate, min_destabilizing_e, Curve, HnBlock, HnData, InstabilityCertificate,
    SplitBundle, SymmetricPowerStats,
};
pub use error::{Error, Result};
pub use h0_oracle::{
    growth_classify, growth_classify_with, h0_class_interval, h0_interval_curve, volume,
    GrowthMode, GrowthReport, H0Interval, Verdict,
};
pub use ruled_surface::{NumClass, RuledSurface};
pub use truncated_power::divided_difference;
