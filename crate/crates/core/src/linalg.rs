//! Exact linear algebra over the rationals: fraction-free rank, modular rank
//! with pivot tracking, and a certified rank for large integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{internal, Result};

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1 << 61) - 1;
/// A second, unrelated prime for cross-checking modular ranks.
pub const P30: u64 = 998_244_353;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

#[inline]
fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

#[inline]
fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Result of Gaussian elimination modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModRank {
    pub rank: usize,
    /// Indices of the rows that were independent of all earlier rows, in order.
    pub pivot_rows: Vec<usize>,
    /// Pivot column chosen for each pivot row.
    pub pivot_cols: Vec<usize>,
}

/// Rank of an integer matrix modulo the prime `p`, scanning rows in order.
pub fn rank_mod_p(rows: &[Vec<i64>], ncols: usize, p: u64) -> ModRank {
    // basis rows are kept normalized with a 1 at their pivot column
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivot_rows = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut v: Vec<u64> = row.iter().map(|&x| reduce(x, p)).collect();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (vj, bj) in v.iter_mut().zip(b) {
                    if *bj != 0 {
                        *vj = (*vj + p - mulmod(f, *bj, p)) % p;
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = invmod(v[pc], p);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            basis.push((pc, v));
            pivot_rows.push(idx);
        }
    }
    ModRank {
        rank: basis.len(),
        pivot_cols: basis.iter().map(|(c, _)| *c).collect(),
        pivot_rows,
    }
}

/// Kernel basis modulo `p`, one vector per non-pivot column (that coordinate set to 1).
pub fn kernel_mod_p(rows: &[Vec<i64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| reduce(x, p)).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(sel) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = invmod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && r[col] != 0 {
                let f = r[col];
                for (x, &y) in r.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = (*x + p - mulmod(f, y, p)) % p;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        out.push(v);
    }
    out
}

/// Recovers `n/d` from `a ≡ n/d (mod p)` with `|n|, d <= sqrt(p/2)`.
pub fn rational_reconstruct(a: u64, p: u64) -> Option<(i128, i128)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    if t1 < 0 {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, sel);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for r in rest.iter_mut() {
            for j in col + 1..ncols {
                let v = &pivot_row[col] * &r[j] - &r[col] * &pivot_row[j];
                r[j] = v / &prev;
            }
            r[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn rank_bareiss_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    rank_bareiss(&big)
}

/// How a [`certified_rank`] result was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Modular lower bound equal to the column count.
    FullColumnRank,
    /// Modular lower bound matched by an exactly verified kernel of the complementary dimension.
    ModularWithKernel,
    /// Fraction-free elimination over the integers.
    Bareiss,
}

/// Exact rank of an integer matrix.
///
/// The rank modulo a prime is a lower bound for the rational rank. When it
/// falls short of the column count, a kernel of the complementary dimension
/// is lifted from the modular computation and checked against every row in
/// exact arithmetic, which gives the matching upper bound. If the lift fails
/// the matrix is reduced with Bareiss elimination instead.
pub fn certified_rank(rows: &[Vec<i64>], ncols: usize) -> Result<(usize, RankMethod)> {
    let a = rank_mod_p(rows, ncols, P61);
    let b = rank_mod_p(rows, ncols, P30);
    let lower = a.rank.max(b.rank);
    if lower == ncols {
        return Ok((lower, RankMethod::FullColumnRank));
    }
    if a.rank == b.rank {
        let pivot: Vec<Vec<i64>> = a.pivot_rows.iter().map(|&i| rows[i].clone()).collect();
        if let Some(kernel) = lift_kernel(&pivot, ncols, P61) {
            if kernel.len() == ncols - a.rank && annihilates(rows, &kernel) {
                return Ok((a.rank, RankMethod::ModularWithKernel));
            }
        }
    }
    let exact = rank_bareiss_i64(rows);
    if exact < lower {
        return internal("exact rank fell below a modular rank");
    }
    Ok((exact, RankMethod::Bareiss))
}

fn lift_kernel(rows: &[Vec<i64>], ncols: usize, p: u64) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    for v in kernel_mod_p(rows, ncols, p) {
        let mut fracs = Vec::with_capacity(ncols);
        let mut den = BigInt::one();
        for &x in &v {
            let (nu, de) = rational_reconstruct(x, p)?;
            den = den.lcm(&BigInt::from(de));
            fracs.push((BigInt::from(nu), BigInt::from(de)));
        }
        out.push(
            fracs
                .into_iter()
                .map(|(nu, de)| nu * (&den / de))
                .collect(),
        );
    }
    Some(out)
}

fn annihilates(rows: &[Vec<i64>], kernel: &[Vec<BigInt>]) -> bool {
    kernel.iter().all(|k| {
        rows.iter().all(|r| {
            r.iter()
                .zip(k)
                .filter(|(x, _)| **x != 0)
                .map(|(x, y)| BigInt::from(*x) * y)
                .sum::<BigInt>()
                .is_zero()
        })
    })
}

/// Solves the square system `a x = b` over the rationals; `None` if singular.
pub fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let sel = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, sel);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[col].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != col && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

/// Solves an overdetermined but consistent integer system `a x = b` with full
/// column rank. Independent rows are picked modulo a prime, the square
/// subsystem is solved exactly and every equation is then checked.
pub fn solve_consistent(a: &[Vec<i64>], b: &[BigRational], ncols: usize) -> Result<Vec<BigRational>> {
    let mr = rank_mod_p(a, ncols, P61);
    if mr.rank != ncols {
        return internal(format!(
            "linear system has rank {} but {} unknowns",
            mr.rank, ncols
        ));
    }
    let sub: Vec<Vec<BigRational>> = mr
        .pivot_rows
        .iter()
        .map(|&i| a[i].iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let rhs: Vec<BigRational> = mr.pivot_rows.iter().map(|&i| b[i].clone()).collect();
    let Some(x) = solve_square(&sub, &rhs) else {
        return internal("selected square subsystem is singular");
    };
    for (row, rhs) in a.iter().zip(b) {
        let lhs: BigRational = row
            .iter()
            .zip(&x)
            .filter(|(c, _)| **c != 0)
            .map(|(c, v)| v * BigRational::from_integer((*c).into()))
            .sum();
        if &lhs != rhs {
            return internal("linear system is inconsistent");
        }
    }
    Ok(x)
}

/// Scales a rational vector to the primitive integer vector on the same ray,
/// first nonzero coordinate positive. The zero vector maps to itself.
pub fn primitive_ray(v: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if sign {
            *x = -&*x;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_prime(p: u64) -> bool {
        if p < 2 {
            return false;
        }
        // deterministic Miller-Rabin bases for 64-bit integers
        let mut d = p - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if a % p == 0 {
                continue;
            }
            let mut x = powmod(a, d, p);
            if x == 1 || x == p - 1 {
                continue;
            }
            for _ in 1..s {
                x = mulmod(x, x, p);
                if x == p - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    fn trial_division(p: u64) -> bool {
        (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    #[test]
    fn moduli_are_prime() {
        assert!(trial_division(P30));
        assert!(is_prime(P30));
        assert!(is_prime(P61));
        assert!(!is_prime(P61 - 2));
    }

    #[test]
    fn small_ranks() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank_bareiss_i64(&m), 2);
        assert_eq!(rank_mod_p(&m, 3, P61).rank, 2);
        assert_eq!(certified_rank(&m, 3).unwrap(), (2, RankMethod::ModularWithKernel));
        // rank 1 modulo 2 but rank 2 over the rationals
        let m2 = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_mod_p(&m2, 2, 2).rank, 1);
        assert_eq!(certified_rank(&m2, 2).unwrap().0, 2);
        assert_eq!(certified_rank(&[], 3).unwrap().0, 0);
    }

    #[test]
    fn reconstruction() {
        let p = P61;
        let third = invmod(3, p);
        assert_eq!(rational_reconstruct(mulmod(p - 2, third, p), p), Some((-2, 3)));
        assert_eq!(rational_reconstruct(7, p), Some((7, 1)));
    }

    #[test]
    fn solve_and_ray() {
        let a = vec![vec![1, 1], vec![1, -1], vec![2, 0]];
        let b: Vec<BigRational> = [3, 1, 4]
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        let x = solve_consistent(&a, &b, 2).unwrap();
        assert_eq!(primitive_ray(&x), vec![BigInt::from(2), BigInt::from(1)]);
        let bad: Vec<BigRational> = [3, 1, 5]
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        assert!(solve_consistent(&a, &bad, 2).is_err());
        let v = vec![
            BigRational::new((-4).into(), 6.into()),
            BigRational::new(2.into(), 1.into()),
        ];
        assert_eq!(primitive_ray(&v), vec![BigInt::from(1), BigInt::from(-3)]);
    }

    fn rank_rational(rows: &[Vec<i64>], ncols: usize) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(sel) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, sel);
            let pivot = m[rank].clone();
            for r in m.iter_mut().skip(rank + 1) {
                let f = &r[col] / &pivot[col];
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 6), 0..9),
        ) {
            prop_assert_eq!(rank_bareiss_i64(&rows), rank_rational(&rows, 6));
        }

        #[test]
        fn certified_rank_matches_bareiss(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..8),
            dup in any::<bool>(),
        ) {
            let mut rows = rows;
            if dup && rows.len() >= 2 {
                let combo: Vec<i64> = rows[0].iter().zip(&rows[1]).map(|(a, b)| 2 * a - 3 * b).collect();
                rows.push(combo);
            }
            let exact = rank_bareiss_i64(&rows);
            prop_assert_eq!(certified_rank(&rows, 5).unwrap().0, exact);
        }
    }
}
