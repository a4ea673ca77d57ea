//! Fourier–Motzkin elimination, redundancy removal and implication checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lp;
use super::system::{Canonical, HalfSpaceSystem, LinIneq};
use crate::error::{domain, Result};

/// Projects out `var`: every lower bound is paired with every upper bound.
/// The variable is removed from the result, along with its parity.
pub fn fm_eliminate(sys: &HalfSpaceSystem, var: &str) -> Result<HalfSpaceSystem> {
    let v = sys.require_var(var)?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = HalfSpaceSystem::new(sys.variables().to_vec());
    if sys.has_contradiction() {
        out.add_i64(&vec![0; sys.nvars()], 1)?;
    }
    for q in sys.inequalities() {
        let c = q.coeff(v);
        if c.is_positive() {
            lower.push(q);
        } else if c.is_negative() {
            upper.push(q);
        } else {
            out.add(q.clone())?;
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = lo.coeff(v).clone();
            let b = -up.coeff(v).clone();
            let coeffs: Vec<BigInt> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(x, y)| &b * x + &a * y)
                .collect();
            out.add(LinIneq {
                coeffs,
                bound: &b * &lo.bound + &a * &up.bound,
            })?;
        }
    }
    for (i, p) in sys.parities().iter().enumerate() {
        if let Some(p) = p {
            if i != v {
                out.set_parity(&sys.variables()[i], *p)?;
            }
        }
    }
    out.drop_variable(v)
}

fn aligned(sys: &HalfSpaceSystem, universe: &[String]) -> Result<HalfSpaceSystem> {
    if sys.variables() == universe {
        Ok(sys.clone())
    } else {
        sys.embed(universe)
    }
}

/// True if `target` holds at every real point of `given`.
pub fn implied_by(given: &[LinIneq], target: &LinIneq) -> bool {
    lp::implied(given, target)
}

/// Drops every inequality implied by the remaining ones together with the
/// assumptions. Inequalities are examined in order; survivors keep their order.
pub fn remove_redundant(sys: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
    let assume = aligned(assumptions, sys.variables())?;
    if sys.has_contradiction() || assume.has_contradiction() {
        return Ok(sys.with_inequalities(Vec::new()));
    }
    let mut kept: Vec<LinIneq> = sys.inequalities().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut given: Vec<LinIneq> = assume.inequalities().to_vec();
        given.extend(kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()));
        if lp::implied(&given, &kept[i]) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(sys.with_inequalities(kept))
}

/// Drops inequalities implied by a single other inequality of the system
/// together with the assumptions. Of two equivalent inequalities the later one goes.
pub fn remove_dominated(sys: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
    let assume = aligned(assumptions, sys.variables())?;
    let mut kept: Vec<LinIneq> = sys.inequalities().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let dominated = (0..kept.len()).any(|j| {
            if j == i {
                return false;
            }
            let mut given = assume.inequalities().to_vec();
            given.push(kept[j].clone());
            lp::implied(&given, &kept[i])
        });
        if dominated {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(sys.with_inequalities(kept))
}

/// Every inequality of `a` follows from `b` together with the assumptions.
pub fn implies(b: &HalfSpaceSystem, a: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<bool> {
    Ok(unimplied(b, a, assumptions)?.is_empty())
}

/// The inequalities of `a` that do not follow from `b` and the assumptions.
pub fn unimplied(b: &HalfSpaceSystem, a: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<Vec<LinIneq>> {
    if a.variables() != b.variables() {
        return domain("systems must share a variable universe");
    }
    let assume = aligned(assumptions, b.variables())?;
    if b.has_contradiction() || assume.has_contradiction() {
        return Ok(Vec::new());
    }
    let mut given = assume.inequalities().to_vec();
    given.extend(b.inequalities().iter().cloned());
    let mut out = Vec::new();
    if a.has_contradiction() && lp::feasible(&given, b.nvars()) {
        out.push(LinIneq {
            coeffs: vec![BigInt::zero(); a.nvars()],
            bound: BigInt::from(1),
        });
    }
    out.extend(a.inequalities().iter().filter(|q| !lp::implied(&given, q)).cloned());
    Ok(out)
}

/// Mutual implication under the assumptions.
pub fn systems_equivalent(a: &HalfSpaceSystem, b: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<bool> {
    Ok(implies(b, a, assumptions)? && implies(a, b, assumptions)?)
}

/// An inequality `coeffs · x >= bound`, or `> bound` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictIneq {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
    pub strict: bool,
}

/// Real feasibility by eliminating every variable with Fourier–Motzkin,
/// tracking strictness. Exponential; meant as an oracle for small systems.
pub fn fm_feasible(ineqs: &[StrictIneq]) -> bool {
    let Some(first) = ineqs.first() else {
        return true;
    };
    let nvars = first.coeffs.len();
    let mut cur: Vec<StrictIneq> = ineqs.to_vec();
    for v in 0..nvars {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in cur {
            if q.coeffs[v].is_positive() {
                lower.push(q);
            } else if q.coeffs[v].is_negative() {
                upper.push(q);
            } else {
                rest.push(q);
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.coeffs[v].clone();
                let b = -up.coeffs[v].clone();
                let coeffs: Vec<BigInt> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| &b * x + &a * y)
                    .collect();
                let q = StrictIneq {
                    coeffs,
                    bound: &b * &lo.bound + &a * &up.bound,
                    strict: lo.strict || up.strict,
                };
                if !rest.contains(&q) {
                    rest.push(q);
                }
            }
        }
        cur = rest;
    }
    cur.iter().all(|q| {
        if q.strict {
            q.bound.is_negative()
        } else {
            !q.bound.is_positive()
        }
    })
}

/// Oracle version of [`implied_by`]: the target holds everywhere iff adding its strict negation is infeasible.
pub fn fm_implied(given: &[LinIneq], target: &LinIneq) -> bool {
    let mut all: Vec<StrictIneq> = given
        .iter()
        .map(|q| StrictIneq {
            coeffs: q.coeffs.clone(),
            bound: q.bound.clone(),
            strict: false,
        })
        .collect();
    let (coeffs, bound) = target.negated_strict();
    all.push(StrictIneq {
        coeffs,
        bound,
        strict: true,
    });
    !fm_feasible(&all)
}

/// Applies integer rounding to every inequality (valid on integer points only).
pub fn integer_round(sys: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
    let mut out = sys.with_inequalities(Vec::new());
    for q in sys.inequalities() {
        match q.clone().integer_rounded() {
            Canonical::Ineq(r) => out.add(r)?,
            Canonical::Tautology => {}
            Canonical::Contradiction => out.add_i64(&vec![0; sys.nvars()], 1)?,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(vars: &[&str], rows: &[(&[i64], i64)]) -> HalfSpaceSystem {
        let mut s = HalfSpaceSystem::new(vars.iter().map(|v| v.to_string()).collect());
        for (c, b) in rows {
            s.add_i64(c, *b).unwrap();
        }
        s
    }

    #[test]
    fn elimination_of_a_single_pair() {
        // x >= y + 1 and 5 - z >= x  ->  5 - z >= y + 1
        let s = sys(&["x", "y", "z"], &[(&[1, -1, 0], 1), (&[-1, 0, -1], -5)]);
        let e = fm_eliminate(&s, "x").unwrap();
        assert_eq!(e.variables(), &["y".to_string(), "z".to_string()]);
        assert_eq!(e.format_all(), vec!["-y - z >= -4"]);
        assert!(fm_eliminate(&s, "w").is_err());
    }

    #[test]
    fn redundancy_examples() {
        let none = sys(&["x"], &[]);
        let s = sys(&["x"], &[(&[1], 0), (&[1], -1)]);
        assert_eq!(remove_redundant(&s, &none).unwrap().format_all(), vec!["x >= 0"]);
        let none2 = sys(&["x", "y"], &[]);
        let t = sys(&["x", "y"], &[(&[1, 1], 2), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(
            remove_redundant(&t, &none2).unwrap().format_all(),
            vec!["x >= 1", "y >= 1"]
        );
        assert_eq!(remove_dominated(&t, &none2).unwrap().len(), 3);
    }

    #[test]
    fn equivalence_examples() {
        let none = sys(&["x", "y"], &[]);
        let a = sys(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(systems_equivalent(&a, &a, &none).unwrap());
        let b = sys(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 2)]);
        assert!(systems_equivalent(&a, &b, &none).unwrap());
        let c = sys(&["x", "y"], &[(&[1, 1], 2)]);
        assert!(!systems_equivalent(&a, &c, &none).unwrap());
        assert!(implies(&a, &c, &none).unwrap());
    }

    fn small_system() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
        prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -4i64..=4), 1..7)
    }

    proptest! {
        #[test]
        fn lp_implication_matches_fm_oracle(rows in small_system(), target in (prop::collection::vec(-3i64..=3, 3), -4i64..=4)) {
            let given: Vec<LinIneq> = rows.iter().map(|(c, b)| LinIneq::from_i64(c, *b)).collect();
            let t = LinIneq::from_i64(&target.0, target.1);
            prop_assume!(!t.is_constant());
            prop_assert_eq!(lp::implied(&given, &t), fm_implied(&given, &t));
        }

        #[test]
        fn lp_feasibility_matches_fm_oracle(rows in small_system()) {
            let given: Vec<LinIneq> = rows.iter().map(|(c, b)| LinIneq::from_i64(c, *b)).collect();
            let strict: Vec<StrictIneq> = given.iter().map(|q| StrictIneq { coeffs: q.coeffs.clone(), bound: q.bound.clone(), strict: false }).collect();
            prop_assert_eq!(lp::feasible(&given, 3), fm_feasible(&strict));
        }

        // Projection is exact over the reals: on a grid, a point survives
        // elimination iff some real value of the eliminated variable works.
        #[test]
        fn projection_matches_brute_force(rows in small_system()) {
            let mut s = sys(&["x", "y", "z"], &[]);
            for (c, b) in &rows {
                s.add_i64(c, *b).unwrap();
            }
            // box the eliminated variable so that the witness search is finite
            s.add_i64(&[0, 0, 1], -6).unwrap();
            s.add_i64(&[0, 0, -1], -6).unwrap();
            let p = fm_eliminate(&s, "z").unwrap();
            for x in -4i64..=4 {
                for y in -4i64..=4 {
                    // witnesses at half-integers with denominator up to 3 x 3 suffice: check exactly instead
                    let mut given = Vec::new();
                    for q in s.inequalities() {
                        // substitute x, y: c_z z >= b - c_x x - c_y y
                        let coeffs = vec![q.coeffs[2].clone()];
                        let bound = &q.bound - &q.coeffs[0] * BigInt::from(x) - &q.coeffs[1] * BigInt::from(y);
                        given.push(LinIneq { coeffs, bound });
                    }
                    let exists = !s.has_contradiction()
                        && given.iter().all(|q| !q.is_constant() || !q.bound.is_positive())
                        && fm_feasible(&given.iter().filter(|q| !q.is_constant()).map(|q| StrictIneq { coeffs: q.coeffs.clone(), bound: q.bound.clone(), strict: false }).collect::<Vec<_>>());
                    let inside = !p.has_contradiction() && p.satisfied_by(&[x, y]);
                    prop_assert_eq!(inside, exists, "point ({}, {})", x, y);
                }
            }
        }
    }
}
