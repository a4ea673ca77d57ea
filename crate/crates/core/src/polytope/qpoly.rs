//! The attachment-weight polytope `Q` of a weight datum and an F-curve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::system::{mu_name, HalfSpaceSystem, LinIneq};
use crate::error::{domain, Result};
use crate::types::{FCurve, WeightData};

/// An affine form over `nvars` variables: coefficients followed by the constant term.
pub(crate) type Aff = Vec<i64>;

pub(crate) fn aff_var(nvars: usize, i: usize) -> Aff {
    let mut a = vec![0; nvars + 1];
    a[i] = 1;
    a
}

pub(crate) fn aff_const(nvars: usize, c: i64) -> Aff {
    let mut a = vec![0; nvars + 1];
    a[nvars] = c;
    a
}

/// `form >= 0` as an inequality.
pub(crate) fn nonneg(form: &Aff) -> LinIneq {
    let nv = form.len() - 1;
    LinIneq::from_i64(&form[..nv], -form[nv])
}

pub(crate) fn aff_combine(terms: &[(i64, &Aff)]) -> Aff {
    let len = terms[0].1.len();
    let mut out = vec![0; len];
    for (c, f) in terms {
        for (o, x) in out.iter_mut().zip(f.iter()) {
            *o += c * x;
        }
    }
    out
}

/// The nonvanishing inequalities for a rank with the given weights:
/// for every subset `I` with `m - |I|` odd, `Σ_I w - Σ_{not I} w + (m - |I| - 1) ℓ >= 0`.
pub(crate) fn rw_forms(weights: &[Aff], ell: &Aff) -> Vec<Aff> {
    let m = weights.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        let k = mask.count_ones() as usize;
        if (m - k).is_multiple_of(2) {
            continue;
        }
        let mut terms: Vec<(i64, &Aff)> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (if mask >> i & 1 == 1 { 1 } else { -1 }, w))
            .collect();
        terms.push(((m - k - 1) as i64, ell));
        out.push(aff_combine(&terms));
    }
    out
}

/// Builds `Q` over `mu1..mu4` (one variable per block of the canonical curve),
/// with the weights and level substituted. Singleton blocks are pinned by a pair
/// of opposite inequalities; the parity of `mu_j` is that of the block's total weight.
pub fn build_q(wd: &WeightData, f: &FCurve) -> Result<HalfSpaceSystem> {
    if wd.n() != f.n() {
        return domain(format!("weight datum has {} points but the F-curve has {}", wd.n(), f.n()));
    }
    let nv = 4;
    let ell = i64::from(wd.ell());
    let ell_f = aff_const(nv, ell);
    let mut sys = HalfSpaceSystem::new((1..=4).map(mu_name).collect());
    let mus: Vec<Aff> = (0..4).map(|j| aff_var(nv, j)).collect();
    for (j, part) in f.parts().iter().enumerate() {
        let mu = &mus[j];
        sys.add(nonneg(mu))?;
        sys.add(nonneg(&aff_combine(&[(1, &ell_f), (-1, mu)])))?;
        let lam: Vec<Aff> = wd
            .weights_on(*part)
            .iter()
            .map(|&w| aff_const(nv, i64::from(w)))
            .collect();
        if lam.len() == 1 {
            sys.add(nonneg(&aff_combine(&[(1, mu), (-1, &lam[0])])))?;
            sys.add(nonneg(&aff_combine(&[(1, &lam[0]), (-1, mu)])))?;
        } else {
            let mut w = lam;
            w.push(mu.clone());
            for form in rw_forms(&w, &ell_f) {
                sys.add(nonneg(&form))?;
            }
        }
        let total: u64 = wd.weights_on(*part).iter().map(|&w| u64::from(w)).sum();
        sys.set_parity(&mu_name(j + 1), (total % 2) as u8)?;
    }
    for form in rw_forms(&mus, &ell_f) {
        sys.add(nonneg(&form))?;
    }
    let sum = aff_combine(&[(1, &mus[0]), (1, &mus[1]), (1, &mus[2]), (1, &mus[3])]);
    sys.add(nonneg(&aff_combine(&[(1, &sum), (-1, &aff_const(nv, 2 * ell + 2))])))?;
    Ok(sys)
}

fn single_var(q: &LinIneq) -> Option<usize> {
    let mut it = q.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
    let (i, _) = it.next()?;
    it.next().is_none().then_some(i)
}

/// Replaces every single-variable bound on a variable with a parity by the
/// tightest bound of that parity. Variables with a parity are treated as
/// positive, so a lower bound of 0 becomes 2 (even) or 1 (odd).
pub fn parity_tighten(sys: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
    let mut out = sys.with_inequalities(Vec::new());
    for q in sys.inequalities() {
        let Some(i) = single_var(q).filter(|&i| sys.parity(i).is_some()) else {
            out.add(q.clone())?;
            continue;
        };
        let r = BigInt::from(sys.parity(i).unwrap_or(0));
        let c = q.coeff(i);
        let mut coeffs = vec![BigInt::zero(); sys.nvars()];
        if c.is_positive() {
            let mut b = q.bound.div_ceil(c).max(BigInt::one());
            if b.mod_floor(&BigInt::from(2)) != r {
                b += 1;
            }
            coeffs[i] = BigInt::one();
            out.add(LinIneq { coeffs, bound: b })?;
        } else {
            let mut u = (-&q.bound).div_floor(&-c);
            if u.mod_floor(&BigInt::from(2)) != r {
                u -= 1;
            }
            coeffs[i] = -BigInt::one();
            out.add(LinIneq { coeffs, bound: -u })?;
        }
    }
    Ok(out)
}

/// Box bounds per variable implied by the single-variable inequalities.
fn box_bounds(sys: &HalfSpaceSystem) -> Result<Vec<(i64, i64)>> {
    let mut lo: Vec<Option<i64>> = vec![None; sys.nvars()];
    let mut hi: Vec<Option<i64>> = vec![None; sys.nvars()];
    for q in sys.inequalities() {
        let Some(i) = single_var(q) else { continue };
        let c = q.coeff(i);
        let v = if c.is_positive() {
            q.bound.div_ceil(c)
        } else {
            (-&q.bound).div_floor(&-c)
        };
        let Some(v) = v.to_i64() else {
            return domain("bound does not fit in 64 bits");
        };
        if c.is_positive() {
            lo[i] = Some(lo[i].map_or(v, |x| x.max(v)));
        } else {
            hi[i] = Some(hi[i].map_or(v, |x| x.min(v)));
        }
    }
    lo.into_iter()
        .zip(hi)
        .enumerate()
        .map(|(i, b)| match b {
            (Some(l), Some(h)) => Ok((l, h)),
            _ => domain(format!("variable {:?} is not bounded", sys.variables()[i])),
        })
        .collect()
}

fn scan(sys: &HalfSpaceSystem, bounds: &[(i64, i64)], point: &mut Vec<i64>) -> bool {
    let i = point.len();
    if i == bounds.len() {
        return sys.satisfied_by(point);
    }
    let (lo, hi) = bounds[i];
    let (mut v, step) = match sys.parity(i) {
        Some(r) => (if lo.rem_euclid(2) == i64::from(r) { lo } else { lo + 1 }, 2),
        None => (lo, 1),
    };
    while v <= hi {
        point.push(v);
        if scan(sys, bounds, point) {
            return true;
        }
        point.pop();
        v += step;
    }
    false
}

/// The lexicographically smallest integer point of the system whose coordinates
/// have the prescribed parities, if any.
pub fn lattice_point_with_parity(sys: &HalfSpaceSystem) -> Result<Option<Vec<i64>>> {
    if sys.has_contradiction() {
        return Ok(None);
    }
    let bounds = box_bounds(sys)?;
    let mut point = Vec::with_capacity(bounds.len());
    Ok(scan(sys, &bounds, &mut point).then_some(point))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ell: u32, w: &[u32], f: &str) -> HalfSpaceSystem {
        build_q(&WeightData::new(ell, w.to_vec()).unwrap(), &f.parse().unwrap()).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let a = q(1, &[1; 6], "1,2,3|4|5|6");
        assert_eq!(lattice_point_with_parity(&a).unwrap(), Some(vec![1, 1, 1, 1]));
        let b = q(1, &[1; 6], "1,2|3,4|5|6");
        assert_eq!(lattice_point_with_parity(&b).unwrap(), None);
        let mut c = HalfSpaceSystem::new(vec!["v".into()]);
        c.add_i64(&[1], 0).unwrap();
        c.add_i64(&[-1], 0).unwrap();
        c.set_parity("v", 1).unwrap();
        assert_eq!(lattice_point_with_parity(&c).unwrap(), None);
        let mut d = HalfSpaceSystem::new(vec!["v".into()]);
        d.add_i64(&[1], 0).unwrap();
        assert!(lattice_point_with_parity(&d).is_err());
    }

    #[test]
    fn level_zero_is_empty() {
        let z = q(0, &[0; 5], "1,2|3|4|5");
        assert_eq!(lattice_point_with_parity(&z).unwrap(), None);
    }

    #[test]
    fn pinned_singletons() {
        let s = q(2, &[2, 1, 1, 1, 1, 2], "4,5,6|1|2|3");
        if let Some(p) = lattice_point_with_parity(&s).unwrap() {
            assert_eq!(&p[1..], &[2, 1, 1]);
            assert_eq!(p[0] % 2, 0);
        }
        let z = q(2, &[0, 1, 1, 1, 1, 2], "4,5,6|1|2|3");
        assert_eq!(lattice_point_with_parity(&z).unwrap(), None);
    }

    #[test]
    fn tightening_examples() {
        let mut s = HalfSpaceSystem::new(vec!["v".into(), "w".into()]);
        s.add_i64(&[1, 0], 0).unwrap();
        s.add_i64(&[-1, 0], -5).unwrap();
        s.add_i64(&[0, 1], 0).unwrap();
        s.add_i64(&[0, -1], -5).unwrap();
        s.add_i64(&[1, 1], 3).unwrap();
        s.set_parity("v", 0).unwrap();
        s.set_parity("w", 1).unwrap();
        let t = parity_tighten(&s).unwrap();
        assert_eq!(t.format_all(), vec!["v >= 2", "-v >= -4", "w >= 1", "-w >= -5", "v + w >= 3"]);
    }

    #[test]
    fn rw_forms_match_small_fusion_rules() {
        // three weights: the triangle inequalities and the level bound
        let w: Vec<Aff> = (0..3).map(|i| aff_var(3, i)).collect();
        let ell = aff_const(3, 4);
        let forms = rw_forms(&w, &ell);
        assert_eq!(forms.len(), 4);
        for a in 0..=4i64 {
            for b in 0..=4i64 {
                for c in 0..=4i64 {
                    let ok = forms.iter().all(|f| f[0] * a + f[1] * b + f[2] * c + f[3] >= 0);
                    let expect = (a - b).abs() <= c && c <= (a + b).min(8 - a - b);
                    assert_eq!(ok, expect, "{a} {b} {c}");
                }
            }
        }
    }
}
