//! Picard rank, nonnegativity on F-curves, and extremality certificates.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::divisor::{boundary_pair_fcurve, fcurves, picard_basis, representative, BasisTag, DivisorClass};
use crate::error::{domain, internal, Result};
use crate::linalg::{certified_rank, rank_mod_p, RankMethod, P61};
use crate::types::{BoundaryIndex, FCurve, Shape};

/// The cone that "nef" refers to in a certificate: classes nonnegative on every F-curve.
pub const F_NEF_CONE: &str = "F-nef (nonnegative on all F-curves)";

/// `dim Pic(M_{0,n}) = 2^{n-1} - C(n,2) - 1`.
pub fn picard_rank(n: usize) -> Result<u64> {
    if n < 4 {
        return domain(format!("Picard rank is only defined here for n >= 4, got {n}"));
    }
    if n > 40 {
        return domain(format!("n={n} is too large"));
    }
    let n = n as u64;
    Ok((1u64 << (n - 1)) - n * (n - 1) / 2 - 1)
}

/// Evidence that a class spans an extremal ray of the F-nef cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalityCertificate {
    pub n: usize,
    pub cone: String,
    pub picard_rank: u64,
    pub fcurve_count: usize,
    pub zero_curves: Vec<String>,
    pub negative_curves: Vec<String>,
    pub matrix_rank: usize,
    pub rank_method: String,
    pub is_nef: bool,
    pub is_extremal: bool,
}

fn method_name(m: RankMethod) -> &'static str {
    match m {
        RankMethod::FullColumnRank => "modular full column rank",
        RankMethod::ModularWithKernel => "modular rank with exactly verified kernel",
        RankMethod::Bareiss => "fraction-free elimination",
    }
}

/// Pairs `cls` with every F-curve, collects the curves where it vanishes, and
/// computes the exact rank of their pairing matrix against a Picard basis.
pub fn certify_extremal(cls: &DivisorClass) -> Result<ExtremalityCertificate> {
    let basis = picard_basis(cls.n)?;
    certify_extremal_with_basis(cls, &basis)
}

/// As [`certify_extremal`], with the columns given by another basis of boundary divisors.
pub fn certify_extremal_with_basis(cls: &DivisorClass, basis: &[BoundaryIndex]) -> Result<ExtremalityCertificate> {
    let n = cls.n;
    let rho = picard_rank(n)?;
    if basis.len() as u64 != rho || basis.iter().any(|b| b.n() != n) {
        return domain(format!("a Picard basis for n={n} needs {rho} boundary divisors on {n} points"));
    }
    let curves = fcurves(n, None)?;
    let values: Vec<BigRational> = curves
        .par_iter()
        .map(|f| cls.pair_fcurve(f))
        .collect::<Result<_>>()?;
    let mut zero: Vec<&FCurve> = Vec::new();
    let mut negative = Vec::new();
    for (f, v) in curves.iter().zip(&values) {
        if v.is_zero() {
            zero.push(f);
        } else if v.is_negative() {
            negative.push(f.to_string());
        }
    }
    let rows: Vec<Vec<i64>> = zero
        .par_iter()
        .map(|f| basis.iter().map(|b| boundary_pair_fcurve(b, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let (rank, method) = certified_rank(&rows, basis.len())?;
    if rank as u64 > rho {
        return internal("zero-curve matrix rank exceeds the Picard rank");
    }
    let is_nef = negative.is_empty();
    let is_extremal = is_nef && !cls.is_zero() && rank as u64 + 1 == rho;
    Ok(ExtremalityCertificate {
        n,
        cone: F_NEF_CONE.to_string(),
        picard_rank: rho,
        fcurve_count: curves.len(),
        zero_curves: zero.iter().map(|f| f.to_string()).collect(),
        negative_curves: negative,
        matrix_rank: rank,
        rank_method: method_name(method).to_string(),
        is_nef,
        is_extremal,
    })
}

/// A Picard basis chosen greedily from the end of [`BoundaryIndex::all`],
/// so that it differs from [`picard_basis`].
pub fn reversed_picard_basis(n: usize) -> Result<Vec<BoundaryIndex>> {
    let curves = fcurves(n, None)?;
    let mut all = BoundaryIndex::all(n)?;
    all.reverse();
    let cols: Vec<Vec<i64>> = all
        .iter()
        .map(|b| curves.iter().map(|f| boundary_pair_fcurve(b, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mr = rank_mod_p(&cols, curves.len(), P61);
    if mr.rank as u64 != picard_rank(n)? {
        return internal("boundary pairings do not reach the Picard rank");
    }
    Ok(mr.pivot_rows.iter().map(|&i| all[i]).collect())
}

/// `cls · F` for the representative F-curve of a shape.
pub fn fcurve_value_symmetric(cls: &DivisorClass, shape: Shape) -> Result<BigRational> {
    if cls.basis_tag != BasisTag::Symmetric {
        return domain("fcurve_value_symmetric expects a class in the symmetric basis");
    }
    let f = representative(cls.n, shape)?;
    cls.pair_fcurve(&f)
}
