//! Degrees of four-point bundles and intersection numbers `D · F` with F-curves.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{domain, internal, Result};
use crate::fusion::{rank, rank4_unchecked};
use crate::polytope::{build_q, lattice_point_with_parity};
use crate::types::{FCurve, Level, PointSet, Weight, WeightData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    pub curve: String,
    pub value: u64,
}

/// Degree of the four-point bundle: `r · max(0, (a+b+c+d-2ℓ)/2)`.
pub fn degree4(ell: Level, a: Weight, b: Weight, c: Weight, d: Weight) -> Result<u64> {
    if [a, b, c, d].iter().any(|&w| w > ell.0) {
        return domain(format!("weights must lie in 0..={}", ell.0));
    }
    degree4_unchecked(ell.0, a, b, c, d)
}

#[inline]
fn degree4_unchecked(ell: u32, a: u32, b: u32, c: u32, d: u32) -> Result<u64> {
    let sum = a + b + c + d;
    if sum % 2 == 1 || sum <= 2 * ell {
        return Ok(0);
    }
    Ok(rank4_unchecked(ell, a, b, c, d)? * u64::from((sum - 2 * ell) / 2))
}

/// `rank(λ_I ∪ {μ})` for every `μ` in `0..=ℓ`.
fn block_ranks(ell: Level, block: &[Weight]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(ell.0 as usize + 1);
    let mut w = block.to_vec();
    w.push(0);
    for mu in 0..=ell.0 {
        *w.last_mut().expect("nonempty") = mu;
        out.push(rank(ell, &w)?);
    }
    Ok(out)
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .map_or_else(|| internal("intersection number overflowed 64 bits"), Ok)
}

fn sum_over_mu(ell: u32, r: &[Vec<u64>; 4]) -> Result<u64> {
    let mut total = 0u64;
    for (m1, &r1) in r[0].iter().enumerate() {
        if r1 == 0 {
            continue;
        }
        for (m2, &r2) in r[1].iter().enumerate() {
            if r2 == 0 {
                continue;
            }
            let r12 = checked_mul(r1, r2)?;
            for (m3, &r3) in r[2].iter().enumerate() {
                if r3 == 0 {
                    continue;
                }
                let r123 = checked_mul(r12, r3)?;
                for (m4, &r4) in r[3].iter().enumerate() {
                    if r4 == 0 {
                        continue;
                    }
                    let deg = degree4_unchecked(ell, m1 as u32, m2 as u32, m3 as u32, m4 as u32)?;
                    if deg == 0 {
                        continue;
                    }
                    let term = checked_mul(checked_mul(r123, r4)?, deg)?;
                    total = total
                        .checked_add(term)
                        .map_or_else(|| internal("intersection number overflowed 64 bits"), Ok)?;
                }
            }
        }
    }
    Ok(total)
}

fn check_n(wd: &WeightData, f: &FCurve) -> Result<()> {
    if wd.n() != f.n() {
        return domain(format!(
            "weight data has n={} but the F-curve has n={}",
            wd.n(),
            f.n()
        ));
    }
    Ok(())
}

/// `D(sl2, ℓ, λ) · F_{I1,I2,I3,I4}`.
pub fn intersect_fcurve(wd: &WeightData, f: &FCurve) -> Result<u64> {
    check_n(wd, f)?;
    let ell = wd.level();
    let r = [
        block_ranks(ell, &wd.weights_on(f.parts()[0]))?,
        block_ranks(ell, &wd.weights_on(f.parts()[1]))?,
        block_ranks(ell, &wd.weights_on(f.parts()[2]))?,
        block_ranks(ell, &wd.weights_on(f.parts()[3]))?,
    ];
    sum_over_mu(ell.0, &r)
}

/// Intersection numbers of one divisor with many F-curves.
///
/// The value only depends on the four weight multisets of the blocks, so
/// results are cached on that key. Shares nothing between instances.
pub struct Intersector {
    wd: WeightData,
    blocks: HashMap<Vec<Weight>, Vec<u64>>,
    values: HashMap<[Vec<Weight>; 4], u64>,
}

impl Intersector {
    pub fn new(wd: WeightData) -> Self {
        Self {
            wd,
            blocks: HashMap::new(),
            values: HashMap::new(),
        }
    }

    pub fn weight_data(&self) -> &WeightData {
        &self.wd
    }

    fn block_key(&self, part: PointSet) -> Vec<Weight> {
        let mut w = self.wd.weights_on(part);
        w.sort_unstable();
        w
    }

    pub fn value(&mut self, f: &FCurve) -> Result<u64> {
        check_n(&self.wd, f)?;
        let mut key = f.parts().map(|p| self.block_key(p));
        key.sort();
        if let Some(&v) = self.values.get(&key) {
            return Ok(v);
        }
        let ell = self.wd.level();
        let mut r: [Vec<u64>; 4] = Default::default();
        for (slot, block) in r.iter_mut().zip(&key) {
            if let Some(cached) = self.blocks.get(block) {
                *slot = cached.clone();
            } else {
                let ranks = block_ranks(ell, block)?;
                self.blocks.insert(block.clone(), ranks.clone());
                *slot = ranks;
            }
        }
        let v = sum_over_mu(ell.0, &r)?;
        self.values.insert(key, v);
        Ok(v)
    }

    pub fn values(&mut self, curves: &[FCurve]) -> Result<Vec<u64>> {
        curves.iter().map(|f| self.value(f)).collect()
    }
}

/// Decides `D · F > 0` by looking for a parity-constrained lattice point in `Q`.
pub fn positivity_via_polytope(wd: &WeightData, f: &FCurve) -> Result<bool> {
    check_n(wd, f)?;
    if rank(wd.level(), wd.weights())? == 0 {
        return domain("positivity_via_polytope assumes a nonzero bundle");
    }
    let q = build_q(wd, f)?;
    Ok(lattice_point_with_parity(&q)?.is_some())
}
