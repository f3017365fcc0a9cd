//! Grid scans comparing the slope criterion with the section-counting oracle.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::curve_bundle::{min_destabilizing_e, Curve, SplitBundle};
use crate::error::{Error, Result};
use crate::h0_oracle::{growth_classify, Verdict};
use crate::ruled_surface::{NumClass, RuledSurface};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassChoice {
    Anticanonical,
    Grid {
        a: RangeInclusive<i64>,
        b: RangeInclusive<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSpec {
    pub genus: RangeInclusive<u32>,
    pub characteristics: Vec<u64>,
    /// One range per summand, `d_1` first; rank 2 or 3.
    pub degree_ranges: Vec<RangeInclusive<i64>>,
    pub class: ClassChoice,
    pub m_max: u64,
    pub out: Option<PathBuf>,
}

fn check_range<T: PartialOrd + std::fmt::Debug>(name: &str, r: &RangeInclusive<T>) -> Result<()> {
    if r.start() > r.end() {
        return Err(Error::InvalidScan(format!("{name} range {r:?} is empty")));
    }
    Ok(())
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        check_range("genus", &self.genus)?;
        if self.characteristics.is_empty() {
            return Err(Error::InvalidScan("characteristic list is empty".into()));
        }
        for &p in &self.characteristics {
            Curve::new(0, p)?;
        }
        if !(2..=3).contains(&self.degree_ranges.len()) {
            return Err(Error::InvalidScan(format!(
                "scans support rank 2 or 3, got {} degree ranges",
                self.degree_ranges.len()
            )));
        }
        for (i, r) in self.degree_ranges.iter().enumerate() {
            check_range(&format!("d{}", i + 1), r)?;
        }
        if let ClassChoice::Grid { a, b } = &self.class {
            check_range("a", a)?;
            check_range("b", b)?;
        }
        if self.m_max < 8 {
            return Err(Error::MMaxTooSmall(self.m_max));
        }
        Ok(())
    }

    /// Non-increasing degree tuples, in lexicographic order.
    fn degree_tuples(&self) -> Vec<Vec<i64>> {
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for range in &self.degree_ranges {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    range.clone().filter_map(move |d| match prefix.last() {
                        Some(&prev) if d > prev => None,
                        _ => {
                            let mut t = prefix.clone();
                            t.push(d);
                            Some(t)
                        }
                    })
                })
                .collect();
        }
        tuples
    }

    fn points(&self) -> Vec<ScanPoint> {
        let tuples = self.degree_tuples();
        let mut points = Vec::new();
        for g in self.genus.clone() {
            for &p in &self.characteristics {
                for degrees in &tuples {
                    match &self.class {
                        ClassChoice::Anticanonical => points.push(ScanPoint {
                            genus: g,
                            characteristic: p,
                            degrees: degrees.clone(),
                            class: None,
                        }),
                        ClassChoice::Grid { a, b } => {
                            for ai in a.clone() {
                                for bi in b.clone() {
                                    points.push(ScanPoint {
                                        genus: g,
                                        characteristic: p,
                                        degrees: degrees.clone(),
                                        class: Some(NumClass::new(ai, bi)),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        points
    }
}

struct ScanPoint {
    genus: u32,
    characteristic: u64,
    degrees: Vec<i64>,
    class: Option<NumClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub genus: u32,
    pub characteristic: u64,
    pub degrees: Vec<i64>,
    pub class: NumClass,
    pub big: bool,
    pub verdict: Verdict,
    pub volume: BigRational,
    /// `None` for rank 3, where the Frobenius search does not apply.
    pub min_e: Option<Option<u32>>,
    pub agree: bool,
}

pub const TSV_HEADER: &str = "genus\tchar\tdegrees\ta\tb\tbig\toracle\tvolume\tmin_e\tagree";

impl ScanRow {
    pub fn to_tsv(&self) -> String {
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        let min_e = match self.min_e {
            Some(Some(e)) => e.to_string(),
            Some(None) => "none".to_string(),
            None => "-".to_string(),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.genus,
            self.characteristic,
            degrees.join(","),
            self.class.a,
            self.class.b,
            self.big,
            self.verdict,
            self.volume,
            min_e,
            self.agree
        )
    }
}

/// Whether an oracle verdict is consistent with the slope criterion.
/// Inconclusive is tolerated only on the boundary, where the volume vanishes.
pub fn verdict_agrees(big: bool, verdict: Verdict, volume: &BigRational) -> bool {
    match verdict {
        Verdict::BigCertified => big,
        Verdict::NotBigCertified => !big,
        Verdict::Inconclusive => volume.is_zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !r.agree).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(TSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_tsv());
            out.push('\n');
        }
        out
    }
}

pub fn run_scan(spec: &ScanSpec) -> Result<ScanTable> {
    spec.validate()?;
    let points = spec.points();
    if points.is_empty() {
        return Err(Error::InvalidScan(
            "degree ranges admit no non-increasing tuple".into(),
        ));
    }
    let rows = points
        .into_par_iter()
        .map(|pt| scan_point(pt, spec.m_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanTable { rows })
}

fn scan_point(pt: ScanPoint, m_max: u64) -> Result<ScanRow> {
    let curve = Curve::new(pt.genus, pt.characteristic)?;
    let bundle = SplitBundle::new(pt.degrees.clone())?;
    let surface = RuledSurface::new(curve, bundle)?;
    let class = pt.class.unwrap_or_else(|| surface.anticanonical_class());
    let big = surface.big_test(class);
    let report = growth_classify(&surface, class, m_max)?;
    let min_e = if surface.rank() == 2 {
        Some(min_destabilizing_e(&curve, surface.bundle())?)
    } else {
        None
    };
    let agree = verdict_agrees(big, report.verdict, &report.volume);
    Ok(ScanRow {
        genus: pt.genus,
        characteristic: pt.characteristic,
        degrees: pt.degrees,
        class,
        big,
        verdict: report.verdict,
        volume: report.volume,
        min_e,
        agree,
    })
}
