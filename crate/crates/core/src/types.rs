//! Value types shared by every other module: levels, weight tuples, point
//! subsets, F-curves, boundary indices and the symmetric-group action on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest number of marked points the bitmask representation supports.
pub const MAX_POINTS: usize = 24;

/// An sl2 weight, identified with an integer in `0..=ell`.
pub type Weight = u32;

/// Part sizes of an F-curve, sorted in nonincreasing order.
pub type Shape = [usize; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Level(pub u32);

impl Level {
    pub fn ell(self) -> u32 {
        self.0
    }

    pub fn contains(self, w: Weight) -> bool {
        w <= self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A level together with one weight per marked point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightData {
    level: Level,
    weights: Vec<Weight>,
}

impl WeightData {
    pub fn new(ell: u32, weights: Vec<Weight>) -> Result<Self> {
        if weights.is_empty() {
            return domain("weight tuple must be nonempty");
        }
        if weights.len() > MAX_POINTS {
            return domain(format!("at most {MAX_POINTS} marked points are supported"));
        }
        if let Some(w) = weights.iter().find(|&&w| w > ell) {
            return domain(format!("weight {w} is outside P_ell = 0..={ell}"));
        }
        Ok(Self {
            level: Level(ell),
            weights,
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn ell(&self) -> u32 {
        self.level.0
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Weight at the 1-based marked point `p`.
    pub fn weight(&self, p: usize) -> Weight {
        self.weights[p - 1]
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Total weight Λ.
    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }

    /// Weights at the points of `set`, in increasing point order.
    pub fn weights_on(&self, set: PointSet) -> Vec<Weight> {
        set.iter().map(|p| self.weight(p)).collect()
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D(sl2, {}, (", self.level)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "))")
    }
}

/// A subset of the marked points `{1..n}`, stored as a bitmask (bit `p-1` for point `p`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    pub fn from_points(points: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &p in points {
            if p == 0 || p > MAX_POINTS {
                return domain(format!("point {p} out of range"));
            }
            let bit = 1u32 << (p - 1);
            if bits & bit != 0 {
                return domain(format!("point {p} repeated"));
            }
            bits |= bit;
        }
        Ok(PointSet(bits))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            PointSet(u32::MAX)
        } else {
            PointSet((1u32 << n) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        (1..=32).contains(&p) && self.0 & (1 << (p - 1)) != 0
    }

    /// Smallest point in the set; `None` when empty.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Points in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(p)
            }
        })
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// The F-curve `F_{I1,I2,I3,I4}` attached to a partition of `{1..n}` into four
/// nonempty blocks. Blocks are kept sorted by (size descending, smallest
/// element ascending), so equal curves have equal representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FCurve {
    n: u8,
    parts: [PointSet; 4],
}

impl FCurve {
    pub fn new(n: usize, parts: [PointSet; 4]) -> Result<Self> {
        if !(4..=MAX_POINTS).contains(&n) {
            return domain(format!("F-curves need 4 <= n <= {MAX_POINTS}, got n={n}"));
        }
        let mut seen = PointSet::EMPTY;
        for part in parts {
            if part.is_empty() {
                return domain("F-curve blocks must be nonempty");
            }
            if !part.is_disjoint(seen) {
                return domain("F-curve blocks must be disjoint");
            }
            seen = seen.union(part);
        }
        if seen != PointSet::full(n) {
            return domain(format!("F-curve blocks must cover 1..={n}"));
        }
        Ok(Self::canonical_unchecked(n, parts))
    }

    pub fn from_blocks(n: usize, blocks: [&[usize]; 4]) -> Result<Self> {
        let mut parts = [PointSet::EMPTY; 4];
        for (slot, block) in parts.iter_mut().zip(blocks) {
            *slot = PointSet::from_points(block)?;
        }
        Self::new(n, parts)
    }

    fn canonical_unchecked(n: usize, mut parts: [PointSet; 4]) -> Self {
        parts.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.first()));
        FCurve { n: n as u8, parts }
    }

    /// Re-sorts the blocks into canonical order. Idempotent.
    pub fn canonical(&self) -> Self {
        Self::canonical_unchecked(self.n(), self.parts)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn parts(&self) -> &[PointSet; 4] {
        &self.parts
    }

    pub fn shape(&self) -> Shape {
        // canonical order already sorts by size
        [
            self.parts[0].len(),
            self.parts[1].len(),
            self.parts[2].len(),
            self.parts[3].len(),
        ]
    }

    pub fn has_part(&self, set: PointSet) -> bool {
        self.parts.contains(&set)
    }
}

impl fmt::Display for FCurve {
    /// `1,2,3|4|5|6`, the same syntax the CLI accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for FCurve {
    type Err = crate::CbError;

    /// Parses `1,2,3|4|5|6`; n is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let blocks: Vec<&str> = s.split('|').collect();
        if blocks.len() != 4 {
            return domain(format!("expected four '|'-separated blocks in {s:?}"));
        }
        let mut parts = [PointSet::EMPTY; 4];
        let mut n = 0;
        for (slot, block) in parts.iter_mut().zip(&blocks) {
            let pts = parse_list(block)?;
            n = n.max(pts.iter().copied().max().unwrap_or(0));
            *slot = PointSet::from_points(&pts)?;
        }
        FCurve::new(n, parts)
    }
}

/// Parses a comma-separated list of nonnegative integers.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| crate::CbError::Domain(format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

/// A boundary divisor `δ_S`. The stored subset is the canonical representative:
/// the complement is taken when `|S| > n/2`, and when `|S| = n/2` the half
/// containing point 1 is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    n: u8,
    set: PointSet,
}

impl BoundaryIndex {
    pub fn new(n: usize, set: PointSet) -> Result<Self> {
        if !(4..=MAX_POINTS).contains(&n) {
            return domain(format!("boundary divisors need 4 <= n <= {MAX_POINTS}"));
        }
        if !set.is_subset(PointSet::full(n)) {
            return domain(format!("subset {{{set}}} is not inside 1..={n}"));
        }
        if set.len() < 2 || set.len() + 2 > n {
            return domain(format!("boundary subset {{{set}}} needs 2 <= |S| <= n-2"));
        }
        Ok(Self::canonical_unchecked(n, set))
    }

    pub fn from_points(n: usize, points: &[usize]) -> Result<Self> {
        Self::new(n, PointSet::from_points(points)?)
    }

    fn canonical_unchecked(n: usize, set: PointSet) -> Self {
        let k = set.len();
        let set = if 2 * k > n || (2 * k == n && !set.contains(1)) {
            set.complement(n)
        } else {
            set
        };
        BoundaryIndex { n: n as u8, set }
    }

    pub fn canonical(&self) -> Self {
        Self::canonical_unchecked(self.n(), self.set)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn set(&self) -> PointSet {
        self.set
    }

    /// Size of the canonical representative, in `2..=n/2`.
    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// All boundary divisors of `M_{0,n}`, ordered by size then bitmask.
    pub fn all(n: usize) -> Result<Vec<BoundaryIndex>> {
        if !(4..=MAX_POINTS).contains(&n) {
            return domain(format!("boundary divisors need 4 <= n <= {MAX_POINTS}"));
        }
        let mut out = Vec::new();
        for size in 2..=n / 2 {
            for bits in 0u32..(1u32 << n) {
                if bits.count_ones() as usize != size {
                    continue;
                }
                let b = Self::canonical_unchecked(n, PointSet(bits));
                if b.set.bits() == bits {
                    out.push(b);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{{{}}}", self.set)
    }
}

/// A bijection of `{1..n}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i-1]` is the image of point `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &p in &images {
            if p == 0 || p > n || seen[p] {
                return domain(format!("{images:?} is not a permutation of 1..={n}"));
            }
            seen[p] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return domain("transposition points out of range");
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// The cycle `(c0 c1 ... ck)`: `c0 -> c1 -> ... -> ck -> c0`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (i, &c) in cycle.iter().enumerate() {
            if c == 0 || c > n {
                return domain("cycle points out of range");
            }
            images[c - 1] = cycle[(i + 1) % cycle.len()];
        }
        Self::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn apply_set(&self, set: PointSet) -> PointSet {
        let mut bits = 0u32;
        for p in set.iter() {
            bits |= 1 << (self.apply(p) - 1);
        }
        PointSet(bits)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return domain("cannot compose permutations of different degrees");
        }
        Ok(Self {
            images: other.images.iter().map(|&p| self.apply(p)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p - 1] = i + 1;
        }
        Self { images }
    }

    /// Every element of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation {
            images: cur.clone(),
        }];
        while next_permutation(&mut cur) {
            out.push(Permutation {
                images: cur.clone(),
            });
        }
        out
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Relabeling of marked points by a permutation.
pub trait Relabel: Sized {
    fn relabel(&self, sigma: &Permutation) -> Result<Self>;
}

fn check_degree(sigma: &Permutation, n: usize) -> Result<()> {
    if sigma.n() != n {
        return domain(format!(
            "permutation acts on {} points but the object has n={n}",
            sigma.n()
        ));
    }
    Ok(())
}

impl Relabel for WeightData {
    /// The weight at `p` moves to `sigma(p)`.
    fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        check_degree(sigma, self.n())?;
        let mut weights = vec![0; self.n()];
        for (i, &w) in self.weights.iter().enumerate() {
            weights[sigma.apply(i + 1) - 1] = w;
        }
        Ok(Self {
            level: self.level,
            weights,
        })
    }
}

impl Relabel for FCurve {
    fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        check_degree(sigma, self.n())?;
        let parts = self.parts.map(|p| sigma.apply_set(p));
        Ok(Self::canonical_unchecked(self.n(), parts))
    }
}

impl Relabel for BoundaryIndex {
    fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        check_degree(sigma, self.n())?;
        Ok(Self::canonical_unchecked(
            self.n(),
            sigma.apply_set(self.set),
        ))
    }
}

pub fn apply_permutation<T: Relabel>(sigma: &Permutation, x: &T) -> Result<T> {
    x.relabel(sigma)
}

/// Sorts a multiset of four part sizes into `Shape` order.
pub fn normalize_shape(mut sizes: [usize; 4]) -> Shape {
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// All shapes of F-curves on `n` points, in lexicographically decreasing order.
pub fn fcurve_shapes(n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for a in (1..=n).rev() {
        for b in (1..=a).rev() {
            for c in (1..=b).rev() {
                if a + b + c >= n {
                    continue;
                }
                let d = n - a - b - c;
                if d >= 1 && d <= c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Every F-curve on `{1..n}`, optionally restricted to one shape, each exactly once.
///
/// Curves are produced from restricted growth strings, so the order is
/// deterministic.
pub fn enumerate_fcurves(n: usize, shape_filter: Option<[usize; 4]>) -> Result<Vec<FCurve>> {
    if !(4..=MAX_POINTS).contains(&n) {
        return domain(format!("enumerate_fcurves needs 4 <= n <= {MAX_POINTS}, got {n}"));
    }
    let filter = match shape_filter {
        Some(s) => {
            if s.contains(&0) || s.iter().sum::<usize>() != n {
                return domain(format!("shape {s:?} must have positive parts summing to {n}"));
            }
            Some(normalize_shape(s))
        }
        None => None,
    };

    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    rgs(&mut labels, 1, 1, n, &mut |labels| {
        let mut parts = [0u32; 4];
        for (i, &b) in labels.iter().enumerate() {
            parts[b] |= 1 << i;
        }
        let curve = FCurve::canonical_unchecked(n, parts.map(PointSet));
        if filter.is_none_or(|s| curve.shape() == s) {
            out.push(curve);
        }
    });
    Ok(out)
}

// Restricted growth strings with exactly four blocks: labels[0] = 0 and each
// label is at most one more than the running maximum.
fn rgs(labels: &mut [usize], pos: usize, used: usize, n: usize, emit: &mut impl FnMut(&[usize])) {
    if pos == n {
        if used == 4 {
            emit(labels);
        }
        return;
    }
    // not enough positions left to open the remaining blocks
    if 4 - used > n - pos {
        return;
    }
    for b in 0..=used.min(3) {
        labels[pos] = b;
        let next_used = if b == used { used + 1 } else { used };
        rgs(labels, pos + 1, next_used, n, emit);
    }
}
