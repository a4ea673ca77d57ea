//! Sweeps over sl2 weight data: symmetrized rays, pattern checks, the
//! verification reports, and the cross-section data for `n = 9`.

mod emit;
mod patterns;
mod report;
mod verify;

use std::collections::HashSet;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::divisor::{fmt_rational, is_symmetric, symmetric_class};
use crate::error::{domain, Result};
use crate::nefcone::fcurve_value_symmetric;
use crate::types::{fcurve_shapes, Shape, WeightData};

pub use emit::{conjecture_holds, cross_section_rows, emit_cross_section, write_cross_section, CrossSectionRow, FACET_SHAPES};
pub use patterns::{pattern_check, pattern_from_signs, pattern_from_values, Pattern};
pub use report::{Skip, Violation, VerifyReport};
pub use verify::{verify_main_prop, verify_one_ell, verify_theorem_n6, MainPropConfig, OneEllConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub max_level: u32,
    /// Smallest weight enumerated (0 or 1).
    pub weight_floor: u32,
    /// Keep only `Λ >= 2ℓ + 2` and drop the zero class.
    pub require_nontrivial: bool,
    /// Keep only weight data whose divisor is itself `S_n`-invariant.
    pub symmetric_only: bool,
    pub output_path: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(n: usize, max_level: u32) -> Self {
        Self {
            n,
            max_level,
            weight_floor: 1,
            require_nontrivial: false,
            symmetric_only: false,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_level < 1 {
            return domain("max_level must be at least 1");
        }
        if self.weight_floor > 1 {
            return domain("weight_floor must be 0 or 1");
        }
        if !(4..=12).contains(&self.n) {
            return domain(format!("searches support 4 <= n <= 12, got n={}", self.n));
        }
        Ok(())
    }
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_facets<S: Serializer>(v: &[(Shape, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(shape, x)| (shape_name(*shape), fmt_rational(x))))
}

/// `6,1,1,1` style name of a shape.
pub fn shape_name(shape: Shape) -> String {
    shape.map(|x| x.to_string()).join(",")
}

/// One weight datum and the ray of its symmetrization.
#[derive(Clone, Debug, Serialize)]
pub struct RaySample {
    pub source: WeightData,
    /// Primitive coordinates in the `B_j` basis, or all zero.
    #[serde(serialize_with = "ser_ints")]
    pub sym_ray: Vec<BigInt>,
    /// The value of the ray on one F-curve of every shape.
    #[serde(serialize_with = "ser_facets")]
    pub facet_values: Vec<(Shape, BigRational)>,
    /// `Λ = 2ℓ + 2`.
    pub git_flag: bool,
}

impl PartialEq for RaySample {
    fn eq(&self, other: &Self) -> bool {
        self.sym_ray == other.sym_ray
    }
}

impl Eq for RaySample {}

impl RaySample {
    pub fn from_weights(wd: &WeightData) -> Result<Self> {
        let n = wd.n();
        let cls = symmetric_class(wd)?;
        let facet_values = fcurve_shapes(n)
            .into_iter()
            .map(|s| Ok((s, fcurve_value_symmetric(&cls, s)?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            source: wd.clone(),
            sym_ray: cls.primitive(),
            facet_values,
            git_flag: wd.total() == 2 * u64::from(wd.ell()) + 2,
        })
    }

    pub fn facet_value(&self, shape: Shape) -> Option<&BigRational> {
        self.facet_values.iter().find(|(s, _)| *s == shape).map(|(_, v)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.sym_ray.iter().all(|x| x == &BigInt::from(0))
    }

    /// The ray as space-separated integers.
    pub fn ray_text(&self) -> String {
        self.sym_ray.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Nondecreasing tuples in `floor..=ell` of length `n` with even sum, in lexicographic order.
pub fn nondecreasing_weights(n: usize, floor: u32, ell: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if cur.iter().sum::<u32>() % 2 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for w in lo..=hi {
            cur.push(w);
            go(n, w, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if floor <= ell {
        go(n, floor, ell, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Enumerates weight data level by level, symmetrizes each divisor, and keeps
/// the first sample of every distinct ray. The order is by level, then by
/// weights, independently of the number of worker threads.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<RaySample>> {
    cfg.validate()?;
    let mut data = Vec::new();
    for ell in 1..=cfg.max_level {
        for w in nondecreasing_weights(cfg.n, cfg.weight_floor, ell) {
            let wd = WeightData::new(ell, w)?;
            if cfg.require_nontrivial && wd.total() < 2 * u64::from(ell) + 2 {
                continue;
            }
            data.push(wd);
        }
    }
    let samples: Vec<Option<RaySample>> = data
        .par_iter()
        .map(|wd| {
            if cfg.symmetric_only && !is_symmetric(wd)? {
                return Ok(None);
            }
            let s = RaySample::from_weights(wd)?;
            Ok((!(cfg.require_nontrivial && s.is_zero())).then_some(s))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let out: Vec<RaySample> = samples
        .into_iter()
        .flatten()
        .filter(|s| seen.insert(s.sym_ray.clone()))
        .collect();
    if let Some(path) = &cfg.output_path {
        let file = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(file, &out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rays(cfg: &SearchConfig) -> Vec<String> {
        run_search(cfg).unwrap().iter().map(RaySample::ray_text).collect()
    }

    #[test]
    fn enumeration_counts() {
        // nondecreasing 6-tuples over 1..=2 with even sum: the number of 2s is even
        assert_eq!(nondecreasing_weights(6, 1, 2).len(), 4);
        assert_eq!(nondecreasing_weights(4, 0, 1).len(), 3);
        assert!(nondecreasing_weights(3, 1, 0).is_empty());
    }

    #[test]
    fn small_search_contains_known_rays() {
        let found = rays(&SearchConfig::new(6, 2));
        assert!(found.contains(&"2 1".to_string()));
        assert!(found.contains(&"1 3".to_string()));
        let distinct: HashSet<&String> = found.iter().collect();
        assert_eq!(distinct.len(), found.len());
    }

    #[test]
    fn nontrivial_filter() {
        let mut cfg = SearchConfig::new(7, 3);
        cfg.require_nontrivial = true;
        for s in run_search(&cfg).unwrap() {
            assert!(s.source.total() >= 2 * u64::from(s.source.ell()) + 2);
            assert!(!s.is_zero());
        }
    }

    #[test]
    fn symmetric_only_divisors_have_positive_weights() {
        let mut cfg = SearchConfig::new(6, 3);
        cfg.weight_floor = 0;
        cfg.symmetric_only = true;
        for s in run_search(&cfg).unwrap() {
            assert!(s.source.weights().iter().all(|&w| w > 0) || s.is_zero(), "{}", s.source);
        }
    }

    #[test]
    fn validation() {
        assert!(run_search(&SearchConfig::new(6, 0)).is_err());
        let mut cfg = SearchConfig::new(6, 1);
        cfg.weight_floor = 2;
        assert!(run_search(&cfg).is_err());
    }
}
