//! Boundary divisors against F-curves, divisor classes in the nonadjacent,
//! boundary-spanning and symmetric bases, and symmetrization.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::error::{domain, internal, Result};
use crate::intersect::Intersector;
use crate::linalg::{primitive_ray, rank_mod_p, solve_consistent, solve_square, P61};
use crate::types::{enumerate_fcurves, BoundaryIndex, FCurve, PointSet, Shape, WeightData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// The 16 nonadjacent boundary divisors of `M_{0,6}`.
    Nonadjacent6,
    /// A maximal independent set of boundary divisors chosen greedily.
    BoundarySpanning,
    /// The symmetric classes `B_j`, `2 <= j <= n/2`.
    Symmetric,
}

impl BasisTag {
    pub fn name(self) -> &'static str {
        match self {
            BasisTag::Nonadjacent6 => "nonadjacent6",
            BasisTag::BoundarySpanning => "boundary_spanning",
            BasisTag::Symmetric => "symmetric",
        }
    }
}

impl std::str::FromStr for BasisTag {
    type Err = crate::CbError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonadjacent6" | "nonadjacent" => Ok(BasisTag::Nonadjacent6),
            "boundary_spanning" | "boundary" => Ok(BasisTag::BoundarySpanning),
            "symmetric" => Ok(BasisTag::Symmetric),
            _ => domain(format!("unknown basis {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    Boundary(BoundaryIndex),
    /// `B_j`
    Sym(usize),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Boundary(b) => write!(f, "{b}"),
            BasisElement::Sym(j) => write!(f, "B{j}"),
        }
    }
}

/// A divisor class as exact coordinates against a declared list of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub n: usize,
    pub basis_tag: BasisTag,
    pub elements: Vec<BasisElement>,
    pub coeffs: Vec<BigRational>,
}

/// Formats a rational as `p/q`, or `p` for integers.
pub fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl DivisorClass {
    pub fn from_integers(n: usize, basis_tag: BasisTag, elements: Vec<BasisElement>, coeffs: &[i64]) -> Result<Self> {
        if elements.len() != coeffs.len() {
            return domain(format!(
                "{} coefficients given for {} basis elements",
                coeffs.len(),
                elements.len()
            ));
        }
        Ok(Self {
            n,
            basis_tag,
            elements,
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
        })
    }

    /// A class in the nonadjacent basis of `M_{0,6}`.
    pub fn nonadjacent6(coeffs: &[i64]) -> Result<Self> {
        let elements = nonadjacent6_basis()
            .into_iter()
            .map(BasisElement::Boundary)
            .collect();
        Self::from_integers(6, BasisTag::Nonadjacent6, elements, coeffs)
    }

    /// `Σ c_j B_j` for `j = 2, 3, ...`.
    pub fn symmetric(n: usize, coeffs: &[i64]) -> Result<Self> {
        if n < 4 {
            return domain("symmetric classes need n >= 4");
        }
        if coeffs.len() != n / 2 - 1 {
            return domain(format!(
                "n={n} has {} symmetric basis classes, {} coefficients given",
                n / 2 - 1,
                coeffs.len()
            ));
        }
        let elements = (2..=n / 2).map(BasisElement::Sym).collect();
        Self::from_integers(n, BasisTag::Symmetric, elements, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }

    /// Primitive integer vector on the ray of the coordinates.
    pub fn primitive(&self) -> Vec<BigInt> {
        primitive_ray(&self.coeffs)
    }

    /// `self · F`, by linearity over the basis.
    pub fn pair_fcurve(&self, f: &FCurve) -> Result<BigRational> {
        if f.n() != self.n {
            return domain(format!("class has n={} but the F-curve has n={}", self.n, f.n()));
        }
        let terms = fcurve_boundary_terms(f);
        let mut total = BigRational::zero();
        for (e, c) in self.elements.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let v = match e {
                BasisElement::Boundary(b) => boundary_value(&terms, b),
                BasisElement::Sym(j) => sym_value(&terms, *j),
            };
            if v != 0 {
                total += c * rat(v);
            }
        }
        Ok(total)
    }

    /// The same class written over boundary divisors (each `B_j` expanded).
    pub fn boundary_form(&self) -> Result<Vec<(BoundaryIndex, BigRational)>> {
        let mut acc: HashMap<BoundaryIndex, BigRational> = HashMap::new();
        let all = BoundaryIndex::all(self.n)?;
        for (e, c) in self.elements.iter().zip(&self.coeffs) {
            match e {
                BasisElement::Boundary(b) => *acc.entry(*b).or_insert_with(BigRational::zero) += c,
                BasisElement::Sym(j) => {
                    for b in all.iter().filter(|b| b.size() == *j) {
                        *acc.entry(*b).or_insert_with(BigRational::zero) += c;
                    }
                }
            }
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|a| a.0);
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "basis": self.basis_tag.name(),
            "elements": self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "coeffs": self.coeff_strings(),
        })
    }
}

/// Boundary divisors meeting `f` nontrivially, with their pairing (+1 or -1).
pub fn fcurve_boundary_terms(f: &FCurve) -> Vec<(BoundaryIndex, i8)> {
    let n = f.n();
    let p = f.parts();
    let mut out = Vec::with_capacity(7);
    for (j, k) in [(0, 1), (0, 2), (0, 3)] {
        let s = p[j].union(p[k]);
        out.push((BoundaryIndex::new(n, s).expect("union of two blocks is a boundary set"), 1));
    }
    for part in p {
        if part.len() >= 2 {
            out.push((BoundaryIndex::new(n, *part).expect("block with a 3-block complement"), -1));
        }
    }
    out
}

fn boundary_value(terms: &[(BoundaryIndex, i8)], b: &BoundaryIndex) -> i64 {
    terms
        .iter()
        .find(|(t, _)| t == b)
        .map_or(0, |(_, v)| i64::from(*v))
}

fn sym_value(terms: &[(BoundaryIndex, i8)], j: usize) -> i64 {
    terms
        .iter()
        .filter(|(t, _)| t.size() == j)
        .map(|(_, v)| i64::from(*v))
        .sum()
}

/// `δ_S · F`: +1 if `S` or its complement is a union of two blocks, -1 if it is a single block.
pub fn boundary_pair_fcurve(s: &BoundaryIndex, f: &FCurve) -> Result<i64> {
    if s.n() != f.n() {
        return domain(format!(
            "boundary divisor has n={} but the F-curve has n={}",
            s.n(),
            f.n()
        ));
    }
    let n = f.n();
    let p = f.parts();
    let set = s.set();
    let comp = set.complement(n);
    for j in 0..4 {
        for k in j + 1..4 {
            let u = p[j].union(p[k]);
            if u == set || u == comp {
                return Ok(1);
            }
        }
    }
    if p.iter().any(|&x| x == set || x == comp) {
        return Ok(-1);
    }
    Ok(0)
}

/// `B_j · F` for a symmetric basis class.
pub fn sym_pair_fcurve(j: usize, f: &FCurve) -> i64 {
    sym_value(&fcurve_boundary_terms(f), j)
}

/// The nonadjacent basis of `Pic(M_{0,6})` in its standard order.
pub fn nonadjacent6_basis() -> Vec<BoundaryIndex> {
    const SETS: [&[usize]; 16] = [
        &[1, 3],
        &[1, 4],
        &[1, 5],
        &[2, 4],
        &[2, 5],
        &[2, 6],
        &[3, 5],
        &[3, 6],
        &[4, 6],
        &[1, 2, 4],
        &[1, 2, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[1, 3, 6],
        &[1, 4, 5],
        &[1, 4, 6],
    ];
    SETS.iter()
        .map(|s| BoundaryIndex::from_points(6, s).expect("valid n=6 boundary set"))
        .collect()
}

static FCURVES: Lazy<DashMap<(usize, Option<Shape>), Arc<Vec<FCurve>>>> = Lazy::new(DashMap::new);

/// Memoized [`enumerate_fcurves`].
pub fn fcurves(n: usize, shape: Option<Shape>) -> Result<Arc<Vec<FCurve>>> {
    let shape = shape.map(crate::types::normalize_shape);
    if let Some(v) = FCURVES.get(&(n, shape)) {
        return Ok(v.clone());
    }
    let v = Arc::new(enumerate_fcurves(n, shape)?);
    FCURVES.insert((n, shape), v.clone());
    Ok(v)
}

static PICARD_BASES: Lazy<DashMap<usize, Arc<Vec<BoundaryIndex>>>> = Lazy::new(DashMap::new);

/// A basis of `Pic(M_{0,n})` made of boundary divisors, chosen greedily in
/// [`BoundaryIndex::all`] order by independence of their F-curve pairings.
pub fn picard_basis(n: usize) -> Result<Arc<Vec<BoundaryIndex>>> {
    if let Some(v) = PICARD_BASES.get(&n) {
        return Ok(v.clone());
    }
    let curves = fcurves(n, None)?;
    let all = BoundaryIndex::all(n)?;
    let cols: Vec<Vec<i64>> = all
        .iter()
        .map(|b| {
            curves
                .iter()
                .map(|f| boundary_pair_fcurve(b, f).expect("same n"))
                .collect()
        })
        .collect();
    let mr = rank_mod_p(&cols, curves.len(), P61);
    let expected = crate::nefcone::picard_rank(n)?;
    if mr.rank as u64 != expected {
        return internal(format!(
            "boundary pairings have rank {} but the Picard rank is {expected}",
            mr.rank
        ));
    }
    let basis = Arc::new(mr.pivot_rows.iter().map(|&i| all[i]).collect::<Vec<_>>());
    PICARD_BASES.insert(n, basis.clone());
    Ok(basis)
}

/// Recovers the class of `D(sl2, ℓ, λ)` from its F-curve intersection numbers.
pub fn class_in_basis(wd: &WeightData, basis_tag: BasisTag) -> Result<DivisorClass> {
    let n = wd.n();
    if n < 4 {
        return domain("divisor classes need n >= 4");
    }
    match basis_tag {
        BasisTag::Symmetric => return symmetric_class(wd),
        BasisTag::Nonadjacent6 if n != 6 => {
            return domain("the nonadjacent basis is only defined for n=6")
        }
        _ => {}
    }
    let basis: Vec<BoundaryIndex> = match basis_tag {
        BasisTag::Nonadjacent6 => nonadjacent6_basis(),
        _ => picard_basis(n)?.as_ref().clone(),
    };
    let curves = fcurves(n, None)?;
    let mut ix = Intersector::new(wd.clone());
    let rhs: Vec<BigRational> = ix
        .values(&curves)?
        .into_iter()
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let a: Vec<Vec<i64>> = curves
        .iter()
        .map(|f| {
            basis
                .iter()
                .map(|b| boundary_pair_fcurve(b, f).expect("same n"))
                .collect()
        })
        .collect();
    let coeffs = solve_consistent(&a, &rhs, basis.len())?;
    Ok(DivisorClass {
        n,
        basis_tag,
        elements: basis.into_iter().map(BasisElement::Boundary).collect(),
        coeffs,
    })
}

/// Shapes `(a, b, 1, 1)` with `a + b = n - 2`, `a >= b >= 1`, in order of decreasing `a`.
pub fn symmetric_solve_shapes(n: usize) -> Vec<Shape> {
    (1..=(n - 2) / 2).map(|b| [n - 2 - b, b, 1, 1]).collect()
}

/// The square matrix `B_j · F_shape` used to solve for symmetric classes.
pub fn symmetric_shape_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 4 {
        return domain("symmetric classes need n >= 4");
    }
    let mut rows = Vec::new();
    for shape in symmetric_solve_shapes(n) {
        let rep = representative(n, shape)?;
        rows.push((2..=n / 2).map(|j| sym_pair_fcurve(j, &rep)).collect());
    }
    Ok(rows)
}

/// The F-curve `{1..a} | {a+1..a+b} | ...` of the given shape.
pub fn representative(n: usize, shape: Shape) -> Result<FCurve> {
    let shape = crate::types::normalize_shape(shape);
    if shape.contains(&0) || shape.iter().sum::<usize>() != n {
        return domain(format!("shape {shape:?} must have positive parts summing to {n}"));
    }
    let mut parts = [PointSet::EMPTY; 4];
    let mut next = 1;
    for (slot, &size) in parts.iter_mut().zip(&shape) {
        let pts: Vec<usize> = (next..next + size).collect();
        *slot = PointSet::from_points(&pts)?;
        next += size;
    }
    FCurve::new(n, parts)
}

/// Orbit mean of `D · F` over all F-curves of one shape.
pub fn orbit_mean(ix: &mut Intersector, shape: Shape) -> Result<BigRational> {
    let n = ix.weight_data().n();
    let curves = fcurves(n, Some(shape))?;
    let mut sum = 0u64;
    for f in curves.iter() {
        sum = sum
            .checked_add(ix.value(f)?)
            .map_or_else(|| internal("orbit sum overflowed 64 bits"), Ok)?;
    }
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(curves.len())))
}

/// Exact coordinates of `Sym D` in the `B_j` basis, scaled by `1/n!`.
pub fn symmetric_coordinates(wd: &WeightData) -> Result<Vec<BigRational>> {
    let n = wd.n();
    let m = symmetric_shape_matrix(n)?;
    let mut ix = Intersector::new(wd.clone());
    let rhs: Vec<BigRational> = symmetric_solve_shapes(n)
        .into_iter()
        .map(|s| orbit_mean(&mut ix, s))
        .collect::<Result<_>>()?;
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    match solve_square(&a, &rhs) {
        Some(x) => Ok(x),
        None => internal(format!("symmetric shape matrix for n={n} is singular")),
    }
}

/// The ray of `Sym D(sl2, ℓ, λ)` as a primitive integer vector in the `B_j`
/// basis. Trivial divisors give the zero class.
pub fn symmetric_class(wd: &WeightData) -> Result<DivisorClass> {
    let n = wd.n();
    let x = symmetric_coordinates(wd)?;
    let ray = primitive_ray(&x);
    Ok(DivisorClass {
        n,
        basis_tag: BasisTag::Symmetric,
        elements: (2..=n / 2).map(BasisElement::Sym).collect(),
        coeffs: ray.into_iter().map(BigRational::from_integer).collect(),
    })
}

/// True when `D · F` is constant on every `S_n`-orbit of F-curves.
pub fn is_symmetric(wd: &WeightData) -> Result<bool> {
    let n = wd.n();
    if n < 4 {
        return Ok(true);
    }
    let mut ix = Intersector::new(wd.clone());
    for shape in crate::types::fcurve_shapes(n) {
        let curves = fcurves(n, Some(shape))?;
        let first = ix.value(&curves[0])?;
        for f in curves.iter().skip(1) {
            if ix.value(f)? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Intersection numbers with every F-curve, in [`enumerate_fcurves`] order.
pub fn fcurve_vector(wd: &WeightData) -> Result<Vec<u64>> {
    let curves = fcurves(wd.n(), None)?;
    Intersector::new(wd.clone()).values(&curves)
}

/// `cls · F` for every F-curve, in [`enumerate_fcurves`] order.
pub fn class_fcurve_vector(cls: &DivisorClass) -> Result<Vec<BigRational>> {
    let curves = fcurves(cls.n, None)?;
    curves.iter().map(|f| cls.pair_fcurve(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::intersect_fcurve;
    use crate::types::{Permutation, Relabel};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pairing_examples() {
        let f: FCurve = "1,2|3,4|5|6".parse().unwrap();
        let s = |p: &[usize]| BoundaryIndex::from_points(6, p).unwrap();
        assert_eq!(boundary_pair_fcurve(&s(&[1, 2, 3, 4]), &f).unwrap(), 1);
        assert_eq!(boundary_pair_fcurve(&s(&[1, 2]), &f).unwrap(), -1);
        assert_eq!(boundary_pair_fcurve(&s(&[1, 3]), &f).unwrap(), 0);
        let g: FCurve = "1,2|3|4|5".parse().unwrap();
        assert!(boundary_pair_fcurve(&s(&[1, 2]), &g).is_err());
    }

    #[test]
    fn boundary_terms_agree_with_rule() {
        for n in 5..=8 {
            let all = BoundaryIndex::all(n).unwrap();
            for f in fcurves(n, None).unwrap().iter() {
                let terms = fcurve_boundary_terms(f);
                for b in &all {
                    assert_eq!(
                        boundary_value(&terms, b),
                        boundary_pair_fcurve(b, f).unwrap(),
                        "{b} {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn nonadjacent_rows_for_first_two_orbits() {
        let c1 = class_in_basis(&WeightData::new(1, vec![1; 6]).unwrap(), BasisTag::Nonadjacent6).unwrap();
        assert_eq!(c1.primitive(), ints(&[1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 0, 2, 0, 0, 0]));
        let c2 = class_in_basis(&WeightData::new(2, vec![1; 6]).unwrap(), BasisTag::Nonadjacent6).unwrap();
        assert_eq!(c2.primitive(), ints(&[0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1]));
    }

    #[test]
    fn round_trip_reproduces_intersections() {
        for (ell, w) in [(3, vec![3, 1, 1, 1, 1, 1]), (4, vec![3, 2, 2, 1, 1, 1]), (2, vec![2, 1, 1, 1, 1, 0])] {
            let wd = WeightData::new(ell, w).unwrap();
            let cls = class_in_basis(&wd, BasisTag::Nonadjacent6).unwrap();
            let spanning = class_in_basis(&wd, BasisTag::BoundarySpanning).unwrap();
            for f in fcurves(6, None).unwrap().iter() {
                let v = rat(intersect_fcurve(&wd, f).unwrap() as i64);
                assert_eq!(cls.pair_fcurve(f).unwrap(), v);
                assert_eq!(spanning.pair_fcurve(f).unwrap(), v);
            }
        }
        let wd = WeightData::new(2, vec![2, 1, 1, 1, 1, 1, 1]).unwrap();
        let cls = class_in_basis(&wd, BasisTag::BoundarySpanning).unwrap();
        assert_eq!(cls.coeffs.len(), 42);
        for f in fcurves(7, None).unwrap().iter() {
            assert_eq!(cls.pair_fcurve(f).unwrap(), rat(intersect_fcurve(&wd, f).unwrap() as i64));
        }
    }

    #[test]
    fn equivariance_of_recovered_classes() {
        let wd = WeightData::new(4, vec![3, 2, 2, 1, 1, 1]).unwrap();
        let sigma = Permutation::cycle(6, &[1, 4, 2, 6]).unwrap();
        let moved = class_in_basis(&wd.relabel(&sigma).unwrap(), BasisTag::BoundarySpanning).unwrap();
        let cls = class_in_basis(&wd, BasisTag::BoundarySpanning).unwrap();
        // act on the class by relabeling its boundary divisors
        let acted = DivisorClass {
            n: 6,
            basis_tag: BasisTag::BoundarySpanning,
            elements: cls
                .elements
                .iter()
                .map(|e| match e {
                    BasisElement::Boundary(b) => BasisElement::Boundary(b.relabel(&sigma).unwrap()),
                    other => *other,
                })
                .collect(),
            coeffs: cls.coeffs.clone(),
        };
        for f in fcurves(6, None).unwrap().iter() {
            assert_eq!(acted.pair_fcurve(f).unwrap(), moved.pair_fcurve(f).unwrap());
        }
    }

    #[test]
    fn symmetric_examples() {
        let ray = |ell, w: Vec<u32>| {
            symmetric_class(&WeightData::new(ell, w).unwrap())
                .unwrap()
                .primitive()
        };
        assert_eq!(ray(1, vec![1; 6]), ints(&[2, 1]));
        assert_eq!(ray(2, vec![1; 6]), ints(&[1, 3]));
        assert_eq!(ray(1, vec![1; 8]), ints(&[3, 2, 4]));
        assert_eq!(ray(2, vec![2, 2, 2, 2, 2, 2, 2, 1, 1]), ints(&[3, 3, 4]));
        // trivial divisor
        assert!(symmetric_class(&WeightData::new(3, vec![1; 6]).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn symmetric_shape_matrices_are_invertible() {
        for n in 5..=9 {
            let m = symmetric_shape_matrix(n).unwrap();
            assert_eq!(m.len(), n / 2 - 1);
            assert!(m.iter().all(|r| r.len() == n / 2 - 1));
            assert_eq!(crate::linalg::rank_bareiss_i64(&m), n / 2 - 1, "n={n}");
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&WeightData::new(1, vec![1; 6]).unwrap()).unwrap());
        assert!(!is_symmetric(&WeightData::new(3, vec![3, 1, 1, 1, 1, 1]).unwrap()).unwrap());
        assert!(!is_symmetric(&WeightData::new(2, vec![2, 1, 1, 1, 1, 0]).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_divisors_with_a_zero_weight_are_trivial() {
        for ell in 1..=4u32 {
            let mut w = vec![0u32; 6];
            loop {
                if w.contains(&0) && w.windows(2).all(|p| p[0] <= p[1]) {
                    let wd = WeightData::new(ell, w.clone()).unwrap();
                    if is_symmetric(&wd).unwrap() {
                        assert!(fcurve_vector(&wd).unwrap().iter().all(|&v| v == 0), "{wd}");
                    }
                }
                let mut i = 0;
                while i < 6 && w[i] == ell {
                    w[i] = 0;
                    i += 1;
                }
                if i == 6 {
                    break;
                }
                w[i] += 1;
            }
        }
    }

    #[test]
    fn symmetric_pairing_matches_boundary_expansion() {
        let cls = DivisorClass::symmetric(9, &[1, 1, 2]).unwrap();
        let bf = cls.boundary_form().unwrap();
        let expanded = DivisorClass {
            n: 9,
            basis_tag: BasisTag::BoundarySpanning,
            elements: bf.iter().map(|(b, _)| BasisElement::Boundary(*b)).collect(),
            coeffs: bf.iter().map(|(_, c)| c.clone()).collect(),
        };
        for shape in crate::types::fcurve_shapes(9) {
            let f = representative(9, shape).unwrap();
            assert_eq!(cls.pair_fcurve(&f).unwrap(), expanded.pair_fcurve(&f).unwrap());
        }
    }
}
