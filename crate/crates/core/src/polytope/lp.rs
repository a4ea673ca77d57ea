//! Exact two-phase simplex over the rationals (Bland's rule), used to decide
//! feasibility and implication of linear inequality systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::system::LinIneq;

type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Q),
    /// Stopped early: a feasible point reached the requested objective value.
    Reached,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    obj: Vec<Q>,
    basis: Vec<usize>,
    ncols: usize,
    banned_from: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.ncols
    }

    fn value(&self) -> Q {
        -self.obj[self.rhs()].clone()
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let inv = self.rows[p][q].recip();
        for x in self.rows[p].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[p].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !self.obj[q].is_zero() {
            let f = self.obj[q].clone();
            for &j in &nz {
                self.obj[j] -= &f * &prow[j];
            }
        }
        self.basis[p] = q;
    }

    /// Runs simplex iterations until optimal, unbounded or the stop value is reached.
    fn run(&mut self, stop_at: Option<&Q>) -> LpOutcome {
        loop {
            if let Some(s) = stop_at {
                if &self.value() >= s {
                    return LpOutcome::Reached;
                }
            }
            let Some(q) = (0..self.banned_from).find(|&j| self.obj[j].is_positive()) else {
                return LpOutcome::Optimal(self.value());
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return LpOutcome::Unbounded,
                Some((p, _)) => self.pivot(p, q),
            }
        }
    }
}

/// Runs phase one on `m y = r`, `y >= 0` with `ncols` structural columns and
/// drops redundant rows. `None` when infeasible.
fn phase_one(m: &[Vec<Q>], r: &[Q], ncols: usize) -> Option<Tableau> {
    let nrows = m.len();
    let total = ncols + nrows;
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(nrows);
    for (i, (mrow, ri)) in m.iter().zip(r).enumerate() {
        let neg = ri.is_negative();
        let mut row = vec![Q::zero(); total + 1];
        for (j, x) in mrow.iter().enumerate() {
            row[j] = if neg { -x.clone() } else { x.clone() };
        }
        row[ncols + i] = Q::from_integer(BigInt::from(1));
        row[total] = if neg { -ri.clone() } else { ri.clone() };
        rows.push(row);
    }
    // phase one: maximize minus the sum of artificials
    let mut obj = vec![Q::zero(); total + 1];
    for row in &rows {
        for j in 0..ncols {
            if !row[j].is_zero() {
                obj[j] += &row[j];
            }
        }
        obj[total] += &row[total];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (ncols..total).collect(),
        ncols: total,
        banned_from: ncols,
    };
    match t.run(None) {
        LpOutcome::Optimal(v) if v.is_zero() => {}
        _ => return None,
    }
    // drive artificials out of the basis; rows that cannot be pivoted are redundant
    let mut keep = vec![true; nrows];
    for i in 0..nrows {
        if t.basis[i] >= ncols {
            match (0..ncols).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => keep[i] = false,
            }
        }
    }
    let mut k = 0;
    t.rows.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    let mut k = 0;
    t.basis.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    Some(t)
}

/// Maximizes `g · y` subject to `m y = r`, `y >= 0`. `m` has one row per equation.
pub fn maximize(m: &[Vec<Q>], r: &[Q], g: &[Q], stop_at: Option<&Q>) -> LpOutcome {
    let ncols = g.len();
    let total = ncols + m.len();
    let Some(mut t) = phase_one(m, r, ncols) else {
        return LpOutcome::Infeasible;
    };
    // phase two objective in reduced form
    let mut obj = vec![Q::zero(); total + 1];
    for (j, gj) in g.iter().enumerate() {
        obj[j] = gj.clone();
    }
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < ncols && !g[b].is_zero() {
            for (o, x) in obj.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o -= &g[b] * x;
                }
            }
        }
    }
    t.obj = obj;
    t.run(stop_at)
}

fn to_q(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

/// True if `Ax >= b` has a real solution.
pub fn feasible(constraints: &[LinIneq], nvars: usize) -> bool {
    if constraints.is_empty() {
        return true;
    }
    // Farkas: infeasible iff some y >= 0 has yA = 0 and y·b = 1
    let mut m: Vec<Vec<Q>> = (0..nvars)
        .map(|v| constraints.iter().map(|c| to_q(&c.coeffs[v])).collect())
        .collect();
    m.push(constraints.iter().map(|c| to_q(&c.bound)).collect());
    let mut r = vec![Q::zero(); nvars];
    r.push(Q::from_integer(BigInt::from(1)));
    let g = vec![Q::zero(); constraints.len()];
    matches!(maximize(&m, &r, &g, None), LpOutcome::Infeasible)
}

/// Some real solution of `Ax >= b`, if there is one.
pub fn feasible_point(constraints: &[LinIneq], nvars: usize) -> Option<Vec<Q>> {
    // x = x+ - x-, and A x+ - A x- - s = b with every column nonnegative
    let ncols = 2 * nvars + constraints.len();
    let m: Vec<Vec<Q>> = constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = vec![Q::zero(); ncols];
            for (v, a) in c.coeffs.iter().enumerate() {
                row[v] = to_q(a);
                row[nvars + v] = -to_q(a);
            }
            row[2 * nvars + i] = Q::from_integer(BigInt::from(-1));
            row
        })
        .collect();
    let r: Vec<Q> = constraints.iter().map(|c| to_q(&c.bound)).collect();
    let t = phase_one(&m, &r, ncols)?;
    let mut y = vec![Q::zero(); ncols];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < ncols {
            y[b] = row[t.rhs()].clone();
        }
    }
    Some((0..nvars).map(|v| &y[v] - &y[nvars + v]).collect())
}

/// True if every real solution of `constraints` satisfies `target`
/// (vacuously true when `constraints` is infeasible).
pub fn implied(constraints: &[LinIneq], target: &LinIneq) -> bool {
    let nvars = target.nvars();
    // min c·x over the constraints equals max b·y over y >= 0 with yA = c
    let m: Vec<Vec<Q>> = (0..nvars)
        .map(|v| constraints.iter().map(|c| to_q(&c.coeffs[v])).collect())
        .collect();
    let r: Vec<Q> = target.coeffs.iter().map(to_q).collect();
    let g: Vec<Q> = constraints.iter().map(|c| to_q(&c.bound)).collect();
    let d = to_q(&target.bound);
    match maximize(&m, &r, &g, Some(&d)) {
        LpOutcome::Reached | LpOutcome::Unbounded => true,
        LpOutcome::Optimal(v) => v >= d,
        LpOutcome::Infeasible => !feasible(constraints, nvars),
    }
}
