//! Ranks of sl2 conformal block bundles.
//!
//! Small cases come from the fusion rules, larger ones from factorization.
//! The closed four-point formula and the linear nonvanishing criterion are
//! independent descriptions of the same numbers and are tested against the
//! recursion.

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::error::{domain, internal, Result};
use crate::types::{Level, Weight};

/// Memoization key: ranks are symmetric in the weights, so only the sorted tuple matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankCacheKey {
    pub level: Level,
    pub sorted_weights: Vec<Weight>,
}

impl RankCacheKey {
    pub fn new(level: Level, weights: &[Weight]) -> Self {
        let mut sorted_weights = weights.to_vec();
        sorted_weights.sort_unstable();
        Self {
            level,
            sorted_weights,
        }
    }
}

static RANK_CACHE: Lazy<DashMap<RankCacheKey, u64>> = Lazy::new(DashMap::new);

/// Number of entries currently memoized.
pub fn rank_cache_len() -> usize {
    RANK_CACHE.len()
}

fn check_weights(ell: Level, weights: &[Weight]) -> Result<()> {
    if let Some(w) = weights.iter().find(|&&w| w > ell.0) {
        return domain(format!("weight {w} is outside P_ell = 0..={}", ell.0));
    }
    Ok(())
}

/// The 3-point fusion rule, valid for weights already known to lie in `P_ell`.
#[inline]
pub(crate) fn fusion3(ell: u32, a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a.abs_diff(b) <= c && c <= (a + b).min((2 * ell).saturating_sub(a + b))
}

/// Rank for one, two or three points.
pub fn rank_small(ell: Level, weights: &[Weight]) -> Result<u64> {
    check_weights(ell, weights)?;
    Ok(match weights {
        [a] => u64::from(*a == 0),
        [a, b] => u64::from(a == b),
        [a, b, c] => u64::from(fusion3(ell.0, *a, *b, *c)),
        _ => return domain(format!("rank_small takes 1 to 3 weights, got {}", weights.len())),
    })
}

/// Rank of the bundle with the given level and weights, by factorization.
pub fn rank(ell: Level, weights: &[Weight]) -> Result<u64> {
    if weights.is_empty() {
        return domain("rank needs at least one weight");
    }
    check_weights(ell, weights)?;
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    rank_sorted(ell, sorted)
}

fn rank_sorted(ell: Level, sorted: Vec<Weight>) -> Result<u64> {
    if sorted.len() <= 3 {
        return rank_small(ell, &sorted);
    }
    // zero weights do not change the rank
    if sorted[0] == 0 {
        let rest = sorted[1..].to_vec();
        return rank_sorted(ell, rest);
    }
    if sorted.iter().map(|&w| u64::from(w)).sum::<u64>() % 2 == 1 {
        return Ok(0);
    }
    let key = RankCacheKey {
        level: ell,
        sorted_weights: sorted,
    };
    if let Some(r) = RANK_CACHE.get(&key) {
        return Ok(*r);
    }
    let sorted = &key.sorted_weights;
    let n = sorted.len();
    let (a, b) = (sorted[n - 1], sorted[n - 2]);
    let rest = &sorted[..n - 2];

    let mut total = 0u64;
    for mu in 0..=ell.0 {
        if !fusion3(ell.0, a, b, mu) {
            continue;
        }
        let mut next = Vec::with_capacity(n - 1);
        next.extend_from_slice(rest);
        let pos = next.partition_point(|&w| w < mu);
        next.insert(pos, mu);
        let r = rank_sorted(ell, next)?;
        total = match total.checked_add(r) {
            Some(t) => t,
            None => return internal("rank overflowed 64 bits"),
        };
    }
    RANK_CACHE.insert(key, total);
    Ok(total)
}

/// Uncached factorization that splits off the points `i` and `j` (0-based) first.
/// Used to check that the result does not depend on the split.
pub fn rank_split(ell: Level, weights: &[Weight], i: usize, j: usize) -> Result<u64> {
    check_weights(ell, weights)?;
    let n = weights.len();
    if n < 4 || i >= n || j >= n || i == j {
        return domain("rank_split needs n >= 4 and two distinct indices");
    }
    let rest: Vec<Weight> = (0..n)
        .filter(|&k| k != i && k != j)
        .map(|k| weights[k])
        .collect();
    let mut total = 0u64;
    for mu in 0..=ell.0 {
        if fusion3(ell.0, weights[i], weights[j], mu) {
            let mut next = rest.clone();
            next.push(mu);
            total += rank(ell, &next)?;
        }
    }
    Ok(total)
}

/// Closed form for four-point ranks.
pub fn rank4_closed(ell: Level, a: Weight, b: Weight, c: Weight, d: Weight) -> Result<u64> {
    check_weights(ell, &[a, b, c, d])?;
    rank4_unchecked(ell.0, a, b, c, d)
}

#[inline]
pub(crate) fn rank4_unchecked(ell: u32, a: u32, b: u32, c: u32, d: u32) -> Result<u64> {
    let (a, b, c, d, l) = (a as i64, b as i64, c as i64, d as i64, ell as i64);
    let sum = a + b + c + d;
    if sum % 2 != 0 {
        return Ok(0);
    }
    let spread = (sum - 2 * l).abs()
        + (a + b - c - d).abs()
        + (a + c - b - d).abs()
        + (a + d - b - c).abs();
    // 4 * (1 + ell/2 - spread/4)
    let t = 4 + 2 * l - spread;
    if t.rem_euclid(4) != 0 {
        return internal(format!(
            "four-point rank expression is not integral for ell={ell}, ({a},{b},{c},{d})"
        ));
    }
    Ok((t / 4).max(0) as u64)
}

/// Nonvanishing criterion: `Λ` even and, for every `I` with `n-|I|` odd,
/// `Σ_{i∉I} λ_i - (n-|I|-1)ℓ <= Σ_{i∈I} λ_i`.
pub fn rw_nonzero(ell: Level, weights: &[Weight]) -> Result<bool> {
    if weights.is_empty() {
        return domain("rw_nonzero needs at least one weight");
    }
    check_weights(ell, weights)?;
    Ok(rw_unchecked(ell.0, weights))
}

pub(crate) fn rw_unchecked(ell: u32, weights: &[Weight]) -> bool {
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    if total % 2 != 0 {
        return false;
    }
    // For a fixed k = n-|I| the binding choice puts the k largest weights outside I.
    let mut sorted: Vec<i64> = weights.iter().map(|&w| w as i64).collect();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let mut outside = 0i64;
    for (idx, w) in sorted.iter().enumerate() {
        outside += w;
        let k = idx as i64 + 1;
        if k % 2 == 1 && outside - (k - 1) * ell as i64 > total - outside {
            return false;
        }
    }
    true
}
