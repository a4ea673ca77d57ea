use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::RaySample;
use crate::divisor::fmt_rational;
use crate::error::{domain, Result};
use crate::types::Shape;

/// The shapes whose F-curves cut out the facets of the cross-section for `n = 9`.
pub const FACET_SHAPES: [Shape; 4] = [[6, 1, 1, 1], [3, 2, 2, 2], [5, 2, 1, 1], [4, 2, 2, 1]];

/// One CSV row of the cross-section data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossSectionRow {
    pub level: u32,
    pub weights: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    /// `a3 / (a2 + a3 + a4)`; empty when the sum is not positive.
    pub x: String,
    /// `a4 / (a2 + a3 + a4)`; empty when the sum is not positive.
    pub y: String,
    pub git_flag: bool,
    pub f_6111: String,
    pub f_3222: String,
    pub f_5211: String,
    pub f_4221: String,
    /// Whether `D · F_{6,1,1,1} <= 3 D · F_{5,2,1,1}` holds for this ray.
    pub conjecture_6111_le_3x5211: bool,
}

/// `D · F_{6,1,1,1} <= 3 D · F_{5,2,1,1}` for an `n = 9` sample; `None` for other `n`.
pub fn conjecture_holds(sample: &RaySample) -> Option<bool> {
    let a = sample.facet_value([6, 1, 1, 1])?;
    let b = sample.facet_value([5, 2, 1, 1])?;
    Some(a <= &(b * BigRational::from_integer(BigInt::from(3))))
}

/// Rows for every sample, in the given order.
pub fn cross_section_rows(samples: &[RaySample]) -> Result<Vec<CrossSectionRow>> {
    let mut rows = Vec::with_capacity(samples.len());
    for s in samples {
        if s.source.n() != 9 || s.sym_ray.len() != 3 {
            return domain("the cross-section is defined for n=9 rays");
        }
        let a: Vec<BigRational> = s.sym_ray.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let sum = &a[0] + &a[1] + &a[2];
        let (x, y) = if sum.is_positive() {
            (fmt_rational(&(&a[1] / &sum)), fmt_rational(&(&a[2] / &sum)))
        } else {
            (String::new(), String::new())
        };
        let facet = |shape: Shape| s.facet_value(shape).map(fmt_rational).unwrap_or_default();
        rows.push(CrossSectionRow {
            level: s.source.ell(),
            weights: s.source.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","),
            a2: s.sym_ray[0].to_string(),
            a3: s.sym_ray[1].to_string(),
            a4: s.sym_ray[2].to_string(),
            x,
            y,
            git_flag: s.git_flag,
            f_6111: facet(FACET_SHAPES[0]),
            f_3222: facet(FACET_SHAPES[1]),
            f_5211: facet(FACET_SHAPES[2]),
            f_4221: facet(FACET_SHAPES[3]),
            conjecture_6111_le_3x5211: conjecture_holds(s).unwrap_or(false),
        });
    }
    Ok(rows)
}

/// Writes the cross-section CSV to any writer. Zero rays are left out.
pub fn write_cross_section<W: Write>(samples: &[RaySample], out: W) -> Result<()> {
    let kept: Vec<RaySample> = samples.iter().filter(|s| !s.sym_ray.iter().all(Zero::is_zero)).cloned().collect();
    let mut w = csv::Writer::from_writer(out);
    for row in cross_section_rows(&kept)? {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the cross-section CSV to a file.
pub fn emit_cross_section(samples: &[RaySample], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_cross_section(samples, std::io::BufWriter::new(file))
}
