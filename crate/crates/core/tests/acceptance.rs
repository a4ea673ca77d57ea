//! End-to-end checks, one test per acceptance criterion. Each test writes a
//! single PASS/FAIL line straight to stdout so it shows up without `--nocapture`.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use cb_core::divisor::{class_in_basis, symmetric_class, BasisTag, DivisorClass};
use cb_core::fusion::{rank, rank4_closed, rw_nonzero};
use cb_core::intersect::{intersect_fcurve, positivity_via_polytope};
use cb_core::nefcone::certify_extremal;
use cb_core::orbits::{orbit, primitive_int, FAKHRUDDIN_ORBITS};
use cb_core::polytope::{check_preset, parity_drop_check, q_prime_count, Preset, SymbolicQ};
use cb_core::search::{
    conjecture_holds, run_search, verify_main_prop, verify_one_ell, verify_theorem_n6, MainPropConfig, OneEllConfig,
    RaySample, SearchConfig,
};
use cb_core::types::{enumerate_fcurves, Level, WeightData};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

fn report(n: u32, title: &str, pass: bool, elapsed: Duration, limit: Duration, detail: &str) -> bool {
    let in_time = elapsed <= limit;
    let status = if pass && in_time { "PASS" } else { "FAIL" };
    let line = format!(
        "acceptance criterion {n} ({title}): {status} in {:.1}s (limit {}s){}{}\n",
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if detail.is_empty() { "" } else { "; " },
        detail
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    pass && in_time
}

/// Integer coordinates scaled by a positive factor only.
fn positive_primitive(cls: &DivisorClass) -> Vec<BigInt> {
    let den = cls.coeffs.iter().fold(BigInt::from(1), |d, x| d.lcm(x.denom()));
    let ints: Vec<BigInt> = cls.coeffs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    primitive_int(&ints)
}

fn distinct_permutations(w: &[u32]) -> Vec<Vec<u32>> {
    let mut out = HashSet::new();
    for sigma in cb_core::types::Permutation::all(w.len()) {
        out.insert(sigma.images().iter().map(|&p| w[p - 1]).collect::<Vec<_>>());
    }
    let mut v: Vec<Vec<u32>> = out.into_iter().collect();
    v.sort();
    v
}

#[test]
fn criterion_1_orbit_table_rows() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for id in FAKHRUDDIN_ORBITS {
        let rec = orbit(id).unwrap();
        let wd = rec.sl2_weights().expect("sl2 label");
        let target: Vec<BigInt> = rec.rep.iter().map(|&x| BigInt::from(x)).collect();
        let matched = distinct_permutations(wd.weights()).par_iter().any(|w| {
            let cls = class_in_basis(&WeightData::new(wd.ell(), w.clone()).unwrap(), BasisTag::Nonadjacent6).unwrap();
            positive_primitive(&cls) == target
        });
        if !matched {
            failures.push(id);
        }
    }
    let ok = report(
        1,
        "n=6 orbit rows",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(10),
        &format!("orbits {:?}, unmatched {:?}", FAKHRUDDIN_ORBITS, failures),
    );
    assert!(ok);
}

#[test]
fn criterion_2_symmetric_generators() {
    let start = Instant::now();
    let cases: [(u32, Vec<u32>, &[i64]); 9] = [
        (1, vec![1; 6], &[2, 1]),
        (2, vec![1; 6], &[1, 3]),
        (2, vec![2, 2, 2, 2, 2, 1, 1], &[1, 1]),
        (3, vec![1, 1, 1, 1, 1, 1, 2], &[1, 3]),
        (1, vec![1; 8], &[3, 2, 4]),
        (2, vec![1; 8], &[2, 6, 5]),
        (3, vec![1; 8], &[1, 3, 6]),
        (2, vec![2, 2, 2, 2, 2, 2, 2, 1, 1], &[3, 3, 4]),
        (4, vec![1, 1, 1, 1, 1, 1, 1, 1, 2], &[1, 3, 6]),
    ];
    let mut failures = Vec::new();
    for (ell, w, ray) in cases {
        let got = symmetric_class(&WeightData::new(ell, w.clone()).unwrap()).unwrap().primitive();
        let want: Vec<BigInt> = ray.iter().map(|&x| BigInt::from(x)).collect();
        if got != want {
            failures.push(format!("{ell} {w:?}: got {got:?}"));
        }
    }
    let ok = report(
        2,
        "symmetric generator rays",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(60),
        &failures.join(", "),
    );
    assert!(ok);
}

#[test]
fn criterion_3_extremality_certificate() {
    let start = Instant::now();
    let e = DivisorClass::symmetric(9, &[1, 1, 2]).unwrap();
    let cert = certify_extremal(&e).unwrap();
    let pass = cert.picard_rank == 219 && cert.matrix_rank == 218 && cert.is_extremal && cert.is_nef;
    let ok = report(
        3,
        "B2+B3+2B4 extremal for n=9",
        pass,
        start.elapsed(),
        Duration::from_secs(300),
        &format!(
            "picard rank {}, {} zero curves, matrix rank {} via {}, extremal {}",
            cert.picard_rank,
            cert.zero_curves.len(),
            cert.matrix_rank,
            cert.rank_method,
            cert.is_extremal
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_inequality_systems() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for p in Preset::ALL {
        let r = check_preset(p).unwrap();
        let holds = if p.is_equivalence() {
            r.sufficient && r.necessary == Some(true)
        } else {
            r.sufficient
        };
        pass &= holds;
        notes.push(format!("{} over {} branches: {}", r.preset, r.branches.len(), if holds { "ok" } else { "mismatch" }));
    }
    let sq = SymbolicQ::new(&Preset::ScriptI.curve());
    let orderings = Preset::ScriptI.orderings().unwrap();
    let mut counts = HashSet::new();
    for b in sq.branches() {
        let c = q_prime_count(Preset::ScriptI, &b, &orderings).unwrap();
        counts.insert((c.lower_bounds, c.upper_bounds, c.without));
    }
    let expected = HashSet::from([(7, 7, 8)]);
    pass &= counts == expected;
    notes.push(format!("beta bounds (lower, upper, without) {:?}", counts));
    let drop = parity_drop_check().unwrap();
    pass &= drop;
    notes.push(format!("parity cases merge: {drop}"));
    let ok = report(4, "inequality systems", pass, start.elapsed(), Duration::from_secs(30), &notes.join("; "));
    assert!(ok);
}

fn all_tuples(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                (lo..=hi).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

#[test]
fn criterion_5_oracle_equivalences() {
    let start = Instant::now();
    let mut discrepancies = 0u64;
    let mut checked = [0u64; 3];
    for ell in 0..=6u32 {
        for w in all_tuples(4, 0, ell) {
            checked[0] += 1;
            if rank4_closed(Level(ell), w[0], w[1], w[2], w[3]).unwrap() != rank(Level(ell), &w).unwrap() {
                discrepancies += 1;
            }
        }
    }
    for ell in 0..=4u32 {
        for n in 1..=6 {
            for w in all_tuples(n, 0, ell) {
                checked[1] += 1;
                if rw_nonzero(Level(ell), &w).unwrap() != (rank(Level(ell), &w).unwrap() > 0) {
                    discrepancies += 1;
                }
            }
        }
    }
    let curves = enumerate_fcurves(6, None).unwrap();
    for ell in 1..=4u32 {
        let tuples: Vec<Vec<u32>> = all_tuples(6, 1, ell)
            .into_iter()
            .filter(|w| rank(Level(ell), w).unwrap() > 0)
            .collect();
        let (c, d) = tuples
            .par_iter()
            .map(|w| {
                let wd = WeightData::new(ell, w.clone()).unwrap();
                let mut c = 0u64;
                let mut d = 0u64;
                for f in &curves {
                    c += 1;
                    if positivity_via_polytope(&wd, f).unwrap() != (intersect_fcurve(&wd, f).unwrap() > 0) {
                        d += 1;
                    }
                }
                (c, d)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        checked[2] += c;
        discrepancies += d;
    }
    let ok = report(
        5,
        "oracle equivalences",
        discrepancies == 0,
        start.elapsed(),
        Duration::from_secs(300),
        &format!(
            "{} four-point ranks, {} nonvanishing cases, {} polytope cases, {} discrepancies",
            checked[0], checked[1], checked[2], discrepancies
        ),
    );
    assert!(ok);
}

fn n9_search() -> Vec<RaySample> {
    let mut cfg = SearchConfig::new(9, 6);
    cfg.weight_floor = 0;
    run_search(&cfg).unwrap()
}

#[test]
fn criterion_6_theorem_scale_verifications() {
    let start = Instant::now();
    let theorem = verify_theorem_n6(4).unwrap();
    let prop = verify_main_prop(MainPropConfig {
        min_level: 4,
        max_level: 5,
        weight_cap: 5,
    })
    .unwrap();
    let one_ell = verify_one_ell(OneEllConfig::new(5)).unwrap();
    let rays = n9_search();
    let target: Vec<BigInt> = [1, 1, 2].iter().map(|&x| BigInt::from(x)).collect();
    let absent = rays.iter().all(|s| s.sym_ray != target);
    let pass = theorem.is_clean() && prop.is_clean() && one_ell.is_clean() && absent;
    let ok = report(
        6,
        "theorem-scale verifications",
        pass,
        start.elapsed(),
        Duration::from_secs(900),
        &format!(
            "n=6 violations {} ({} pattern checks, {} rays); main proposition violations {} ({} premises); vanishing violations {}; (1,1,2) absent from {} rays: {}",
            theorem.violations.len(),
            theorem.count("pattern_checked"),
            theorem.count("distinct_rays"),
            prop.violations.len(),
            prop.count("premises_hold"),
            one_ell.violations.len(),
            rays.len(),
            absent
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_7_conjecture_probe() {
    let start = Instant::now();
    let rays = n9_search();
    let nonzero: Vec<&RaySample> = rays.iter().filter(|s| !s.is_zero()).collect();
    let holding = nonzero.iter().filter(|s| conjecture_holds(s) == Some(true)).count();
    let counterexamples: Vec<String> = nonzero
        .iter()
        .filter(|s| conjecture_holds(s) != Some(true))
        .map(|s| format!("{} from {}", s.ray_text(), s.source))
        .collect();
    // reported only: a counterexample would be news, not a test failure
    report(
        7,
        "F6111 <= 3 F5211 probe (reported only)",
        true,
        start.elapsed(),
        Duration::from_secs(900),
        &format!(
            "{holding} of {} rays satisfy the inequality; exceptions: {}",
            nonzero.len(),
            if counterexamples.is_empty() { "none".to_string() } else { counterexamples.join(", ") }
        ),
    );
}
