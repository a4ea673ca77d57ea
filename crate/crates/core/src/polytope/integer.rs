//! Implication over integer points with prescribed parities, by splitting into
//! residue classes and running branch and bound on the rational relaxation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lp;
use super::parity::ParityFacts;
use super::system::{Canonical, LinIneq};
use crate::error::{domain, Result};

/// Bounds on the branch and bound search per residue class.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_depth: 40,
            max_nodes: 4000,
        }
    }
}

/// Substitutes `x = 2y + r` and applies Chvátal–Gomory rounding.
/// `None` means the row is violated by every point of the class.
fn to_class(q: &LinIneq, residues: u64) -> Option<Option<LinIneq>> {
    let two = BigInt::from(2);
    let mut bound = q.bound.clone();
    for (i, c) in q.coeffs.iter().enumerate() {
        if residues >> i & 1 == 1 {
            bound -= c;
        }
    }
    let row = LinIneq {
        coeffs: q.coeffs.iter().map(|c| c * &two).collect(),
        bound,
    };
    match row.integer_rounded() {
        Canonical::Ineq(r) => Some(Some(r)),
        Canonical::Tautology => Some(None),
        Canonical::Contradiction => None,
    }
}

enum Search {
    Empty,
    Point(Vec<BigInt>),
    GaveUp,
}

fn branch(rows: &mut Vec<LinIneq>, nvars: usize, depth: usize, nodes: &mut usize, limits: SearchLimits) -> Search {
    *nodes += 1;
    if *nodes > limits.max_nodes || depth > limits.max_depth {
        return Search::GaveUp;
    }
    let Some(x) = lp::feasible_point(rows, nvars) else {
        return Search::Empty;
    };
    let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_integer()) else {
        return Search::Point(x.iter().map(BigRational::to_integer).collect());
    };
    let lo = v.floor().to_integer();
    let mut unit = vec![BigInt::zero(); nvars];
    unit[i] = BigInt::one();
    let down = LinIneq {
        coeffs: unit.iter().map(|c| -c).collect(),
        bound: -lo.clone(),
    };
    let up = LinIneq {
        coeffs: unit,
        bound: lo + 1,
    };
    for cut in [down, up] {
        rows.push(cut);
        let r = branch(rows, nvars, depth + 1, nodes, limits);
        rows.pop();
        match r {
            Search::Empty => {}
            other => return other,
        }
    }
    Search::Empty
}

/// True if it is proven that every integer point of `given` whose coordinates
/// satisfy the parity facts also satisfies `target`. A `false` answer means
/// either a counterexample exists or the search limits were reached.
pub fn integer_implied(given: &[LinIneq], target: &LinIneq, facts: &ParityFacts, limits: SearchLimits) -> Result<bool> {
    let nvars = target.nvars();
    if facts.variables().len() != nvars || given.iter().any(|q| q.nvars() != nvars) {
        return domain("parity facts and inequalities use different variables");
    }
    if nvars > 20 {
        return domain("too many variables for residue splitting");
    }
    let negated = LinIneq {
        coeffs: target.coeffs.iter().map(|c| -c).collect(),
        bound: BigInt::one() - &target.bound,
    };
    'class: for residues in 0u64..1 << nvars {
        if !facts.admits(residues) {
            continue;
        }
        let mut rows = Vec::with_capacity(given.len() + 1);
        for q in given.iter().chain(std::iter::once(&negated)) {
            match to_class(q, residues) {
                None => continue 'class,
                Some(Some(r)) => rows.push(r),
                Some(None) => {}
            }
        }
        let mut nodes = 0;
        match branch(&mut rows, nvars, 0, &mut nodes, limits) {
            Search::Empty => {}
            Search::Point(_) | Search::GaveUp => return Ok(false),
        }
    }
    Ok(true)
}

/// A point of `given` in the residue classes allowed by the facts, if the
/// search finds one within its limits.
pub fn integer_point(given: &[LinIneq], facts: &ParityFacts, limits: SearchLimits) -> Result<Option<Vec<BigInt>>> {
    let nvars = facts.variables().len();
    if given.iter().any(|q| q.nvars() != nvars) {
        return domain("parity facts and inequalities use different variables");
    }
    'class: for residues in 0u64..1 << nvars {
        if !facts.admits(residues) {
            continue;
        }
        let mut rows = Vec::new();
        for q in given {
            match to_class(q, residues) {
                None => continue 'class,
                Some(Some(r)) => rows.push(r),
                Some(None) => {}
            }
        }
        let mut nodes = 0;
        if let Search::Point(y) = branch(&mut rows, nvars, 0, &mut nodes, limits) {
            return Ok(Some(
                y.into_iter()
                    .enumerate()
                    .map(|(i, v)| v * 2 + BigInt::from(residues >> i & 1))
                    .collect(),
            ));
        }
    }
    Ok(None)
}
