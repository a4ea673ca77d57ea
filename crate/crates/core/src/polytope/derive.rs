//! Symbolic construction of the adjusted polytope `Q'` with the weights and
//! level as variables, and elimination of the attachment weights.

use serde::Serialize;

use super::fm::{fm_eliminate, remove_dominated, remove_redundant, unimplied};
use super::integer::{integer_implied, SearchLimits};
use super::parity::ParityFacts;
use super::presets::Preset;
use super::qpoly::{aff_combine, aff_const, aff_var, nonneg, rw_forms, Aff};
use super::system::{lambda_name, lambda_universe, mu_name, HalfSpaceSystem, LinIneq, ELL};
use crate::error::{domain, Result};
use crate::types::FCurve;

/// One parity case: the residues of the free blocks' total weights and of the level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub block_residues: Vec<u8>,
    pub ell_residue: u8,
}

impl Branch {
    pub fn all(free_blocks: usize) -> Vec<Branch> {
        let mut out = Vec::new();
        for bits in 0u32..1 << (free_blocks + 1) {
            out.push(Branch {
                block_residues: (0..free_blocks).map(|j| (bits >> j & 1) as u8).collect(),
                ell_residue: (bits >> free_blocks & 1) as u8,
            });
        }
        out
    }
}

/// The symbolic setting for one F-curve on `n` points.
#[derive(Clone, Debug)]
pub struct SymbolicQ {
    curve: FCurve,
    /// Canonical block indices (0-based) of the blocks with at least two points.
    free: Vec<usize>,
}

impl SymbolicQ {
    pub fn new(curve: &FCurve) -> Self {
        let curve = curve.canonical();
        let free = (0..4).filter(|&j| curve.parts()[j].len() >= 2).collect();
        Self { curve, free }
    }

    pub fn curve(&self) -> &FCurve {
        &self.curve
    }

    /// Names of the attachment-weight variables that survive pinning.
    pub fn free_variables(&self) -> Vec<String> {
        self.free.iter().map(|&j| mu_name(j + 1)).collect()
    }

    pub fn universe(&self) -> Vec<String> {
        let mut v = self.free_variables();
        v.extend(lambda_universe(self.curve.n()));
        v
    }

    pub fn branches(&self) -> Vec<Branch> {
        Branch::all(self.free.len())
    }

    /// Parity facts of a branch over `l1..ln, ell`, including the even total weight.
    pub fn facts(&self, branch: &Branch) -> Result<ParityFacts> {
        let n = self.curve.n();
        let mut f = ParityFacts::new(lambda_universe(n))?;
        f.add_sum(&(1..=n).map(lambda_name).collect::<Vec<_>>(), 0)?;
        for (k, &j) in self.free.iter().enumerate() {
            let names: Vec<String> = self.curve.parts()[j].iter().map(lambda_name).collect();
            f.add_sum(&names, branch.block_residues[k])?;
        }
        f.add_sum(&[ELL.to_string()], branch.ell_residue)?;
        Ok(f)
    }

    /// `Q'` for a branch: singleton blocks substituted by their weight, parity-adjusted
    /// box bounds on the free attachment weights, and all nonvanishing and degree conditions.
    pub fn q_prime(&self, branch: &Branch) -> Result<HalfSpaceSystem> {
        if branch.block_residues.len() != self.free.len() {
            return domain("branch does not match the number of free blocks");
        }
        let n = self.curve.n();
        let vars = self.universe();
        let nv = vars.len();
        let nf = self.free.len();
        let lam = |p: usize| aff_var(nv, nf + p - 1);
        let ell = aff_var(nv, nf + n);
        let mut mus: Vec<Aff> = Vec::with_capacity(4);
        let mut sys = HalfSpaceSystem::new(vars);
        for (j, part) in self.curve.parts().iter().enumerate() {
            match self.free.iter().position(|&x| x == j) {
                None => mus.push(lam(part.first().unwrap_or(1))),
                Some(k) => {
                    let mu = aff_var(nv, k);
                    let r = branch.block_residues[k];
                    let low = if r == 0 { 2 } else { 1 };
                    sys.add(nonneg(&aff_combine(&[(1, &mu), (-1, &aff_const(nv, low))])))?;
                    let top = if r == branch.ell_residue { 0 } else { 1 };
                    sys.add(nonneg(&aff_combine(&[(1, &ell), (-1, &mu), (-1, &aff_const(nv, top))])))?;
                    let mut w: Vec<Aff> = part.iter().map(lam).collect();
                    w.push(mu.clone());
                    for form in rw_forms(&w, &ell) {
                        sys.add(nonneg(&form))?;
                    }
                    sys.set_parity(&mu_name(j + 1), r)?;
                    mus.push(mu);
                }
            }
        }
        for form in rw_forms(&mus, &ell) {
            sys.add(nonneg(&form))?;
        }
        let sum = aff_combine(&[(1, &mus[0]), (1, &mus[1]), (1, &mus[2]), (1, &mus[3])]);
        let two_ell_two = aff_combine(&[(2, &ell), (1, &aff_const(nv, 2))]);
        sys.add(nonneg(&aff_combine(&[(1, &sum), (-1, &two_ell_two)])))?;
        Ok(sys)
    }

    /// Eliminates the free attachment weights (smallest block first), removing
    /// redundancy under the assumptions after each step.
    pub fn eliminate(&self, q_prime: &HalfSpaceSystem, assumptions: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
        let mut sys = q_prime.clone();
        for var in self.free_variables().iter().rev() {
            sys = fm_eliminate(&sys, var)?;
            sys = remove_redundant(&sys, assumptions)?;
        }
        Ok(sys)
    }
}

/// The result of comparing a derived system with a bundled one in one branch.
#[derive(Clone, Debug, Serialize)]
pub struct BranchComparison {
    pub branch: Branch,
    pub derived: Vec<String>,
    /// Derived inequalities not implied by the bundled system and the hypotheses.
    pub missing_from_preset: Vec<String>,
    /// Bundled inequalities not implied by the derived system and the hypotheses.
    pub missing_from_derived: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresetReport {
    pub preset: String,
    pub curve: String,
    pub both_directions: bool,
    pub branches: Vec<BranchComparison>,
    /// Bundled system implies positivity in every branch.
    pub sufficient: bool,
    /// Positivity implies the bundled system in every branch (checked only for equivalences).
    pub necessary: Option<bool>,
}

impl PresetReport {
    pub fn holds(&self) -> bool {
        self.sufficient && self.necessary.unwrap_or(true)
    }
}

fn rounded_union(facts: &ParityFacts, parts: &[&HalfSpaceSystem]) -> Result<HalfSpaceSystem> {
    let mut all = HalfSpaceSystem::new(facts.variables().to_vec());
    for p in parts {
        all.extend(p.embed(facts.variables())?.inequalities().iter().cloned())?;
    }
    facts.round_system(&all)
}

fn texts(sys: &HalfSpaceSystem, qs: &[LinIneq]) -> Vec<String> {
    qs.iter().map(|q| q.format(sys.variables())).collect()
}

/// The inequalities of `a` not implied by `b`: first over the reals, then, for
/// the survivors, over integer points in the residue classes of the facts.
fn integer_unimplied(b: &HalfSpaceSystem, a: &HalfSpaceSystem, empty: &HalfSpaceSystem, facts: &ParityFacts) -> Result<Vec<LinIneq>> {
    let mut out = Vec::new();
    for q in unimplied(b, a, empty)? {
        if !integer_implied(b.inequalities(), &q, facts, SearchLimits::default())? {
            out.push(q);
        }
    }
    Ok(out)
}

/// Derives the positivity conditions for a preset's curve in every parity branch
/// and compares them with the bundled system under the preset's hypotheses.
///
/// Both sides are integer-rounded using the branch parities before the exact
/// rational implication checks. Inequalities that still fail are retried over
/// the integer points of the branch.
pub fn check_preset(preset: Preset) -> Result<PresetReport> {
    let (bundled, _) = preset.system()?;
    let assumptions = preset.assumptions()?;
    let reduced = remove_redundant(&assumptions, &HalfSpaceSystem::new(assumptions.variables().to_vec()))?;
    let sq = SymbolicQ::new(&preset.curve());
    let empty = HalfSpaceSystem::new(bundled.variables().to_vec());
    let mut branches = Vec::new();
    for branch in sq.branches() {
        let facts = sq.facts(&branch)?;
        if facts.is_inconsistent() {
            continue;
        }
        let derived = sq.eliminate(&sq.q_prime(&branch)?, &reduced)?;
        let derived = derived.embed(bundled.variables())?;
        let given_bundled = rounded_union(&facts, &[&reduced, &bundled])?;
        let missing_from_preset = integer_unimplied(&given_bundled, &derived, &empty, &facts)?;
        let missing_from_derived = if preset.is_equivalence() {
            let given_derived = rounded_union(&facts, &[&reduced, &derived])?;
            integer_unimplied(&given_derived, &bundled, &empty, &facts)?
        } else {
            Vec::new()
        };
        branches.push(BranchComparison {
            branch,
            derived: derived.format_all(),
            missing_from_preset: texts(&derived, &missing_from_preset),
            missing_from_derived: texts(&bundled, &missing_from_derived),
        });
    }
    let sufficient = branches.iter().all(|b| b.missing_from_preset.is_empty());
    let necessary = preset
        .is_equivalence()
        .then(|| branches.iter().all(|b| b.missing_from_derived.is_empty()));
    Ok(PresetReport {
        preset: preset.name().to_string(),
        curve: preset.curve().to_string(),
        both_directions: preset.is_equivalence(),
        branches,
        sufficient,
        necessary,
    })
}

/// Counts of the `Q'` inequalities in the two free attachment weights of the
/// n = 9 curve, after discarding inequalities implied by a single other one
/// under the given hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCount {
    pub lower_bounds: usize,
    pub upper_bounds: usize,
    pub without: usize,
}

impl InequalityCount {
    pub fn total(&self) -> usize {
        self.lower_bounds + self.upper_bounds + self.without
    }
}

/// Classifies the pairwise-irredundant inequalities of `Q'` for a branch by
/// the sign of the coefficient of the variable eliminated first.
pub fn q_prime_count(preset: Preset, branch: &Branch, hypotheses: &HalfSpaceSystem) -> Result<InequalityCount> {
    let sq = SymbolicQ::new(&preset.curve());
    let q = sq.q_prime(branch)?;
    let q = remove_dominated(&q, hypotheses)?;
    let Some(first) = sq.free_variables().last().cloned() else {
        return domain("the curve has no free attachment weight");
    };
    let v = q.require_var(&first)?;
    let mut count = InequalityCount {
        lower_bounds: 0,
        upper_bounds: 0,
        without: 0,
    };
    for ineq in q.inequalities() {
        let c = ineq.coeff(v);
        if c > &0.into() {
            count.lower_bounds += 1;
        } else if c < &0.into() {
            count.upper_bounds += 1;
        } else {
            count.without += 1;
        }
    }
    Ok(count)
}

/// Checks that the two parity cases of the bound obtained from
/// `2l + 2 - l6 - l7 - l8 - l9 <= a` and `a <= l` (or `a <= l - 1`) agree once
/// the even total weight is used: in the second case the sum `l6 + ... + l9`
/// has the parity that forces the stronger bound anyway.
pub fn parity_drop_check() -> Result<bool> {
    let sq = SymbolicQ::new(&Preset::ScriptI.curve());
    let alpha = sq.free_variables()[0].clone();
    let mut ok = true;
    for branch in sq.branches() {
        let facts = sq.facts(&branch)?;
        if facts.is_inconsistent() {
            continue;
        }
        let mut pair = HalfSpaceSystem::new(sq.universe());
        let l = |i: usize| lambda_name(i);
        pair.add_named(&[(1, &alpha), (1, &l(6)), (1, &l(7)), (1, &l(8)), (1, &l(9)), (-2, ELL)], 2)?;
        let top = if branch.block_residues[0] == branch.ell_residue { 0 } else { 1 };
        pair.add_named(&[(-1, &alpha), (1, ELL)], top)?;
        let eliminated = fm_eliminate(&pair, &alpha)?;
        let eliminated = remove_dominated(&eliminated.embed(&lambda_universe(9))?, &HalfSpaceSystem::new(lambda_universe(9)))?;
        let rounded = facts.round_system(&eliminated.embed(facts.variables())?)?;
        let mut unified = HalfSpaceSystem::new(lambda_universe(9));
        unified.add_named(&[(1, &l(6)), (1, &l(7)), (1, &l(8)), (1, &l(9)), (-1, ELL)], 2)?;
        let unified = facts.round_system(&unified)?;
        ok &= rounded.inequalities() == unified.inequalities();
    }
    Ok(ok)
}
