//! Known parities of linear forms over GF(2), and the integer rounding they allow.

use num_integer::Integer;
use num_traits::One;

use super::system::{Canonical, HalfSpaceSystem, LinIneq};
use crate::error::{domain, Result};

/// A set of affine facts `Σ_{i ∈ mask} x_i ≡ value (mod 2)`, kept in reduced echelon form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityFacts {
    variables: Vec<String>,
    rows: Vec<(u64, u8)>,
    inconsistent: bool,
}

impl ParityFacts {
    pub fn new(variables: Vec<String>) -> Result<Self> {
        if variables.len() > 64 {
            return domain("parity facts support at most 64 variables");
        }
        Ok(Self {
            variables,
            rows: Vec::new(),
            inconsistent: false,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    fn reduce(&self, mut mask: u64, mut value: u8) -> (u64, u8) {
        for &(m, v) in &self.rows {
            let pivot = 63 - m.leading_zeros();
            if mask >> pivot & 1 == 1 {
                mask ^= m;
                value ^= v;
            }
        }
        (mask, value)
    }

    pub fn add_mask(&mut self, mask: u64, value: u8) {
        let (m, v) = self.reduce(mask, value & 1);
        if m == 0 {
            if v != 0 {
                self.inconsistent = true;
            }
            return;
        }
        let pivot = 63 - m.leading_zeros();
        for row in self.rows.iter_mut() {
            if row.0 >> pivot & 1 == 1 {
                row.0 ^= m;
                row.1 ^= v;
            }
        }
        self.rows.push((m, v));
        self.rows.sort_by_key(|r| std::cmp::Reverse(r.0.leading_zeros()));
        self.rows.reverse();
    }

    /// Records that the sum of the named variables has the given residue.
    pub fn add_sum(&mut self, names: &[String], value: u8) -> Result<()> {
        let mut mask = 0u64;
        for name in names {
            match self.variables.iter().position(|v| v == name) {
                Some(i) => mask ^= 1 << i,
                None => return domain(format!("variable {name:?} is not declared")),
            }
        }
        self.add_mask(mask, value);
        Ok(())
    }

    /// The residue of the form with odd coefficients on `mask`, if the facts determine it.
    pub fn value_of(&self, mask: u64) -> Option<u8> {
        let (m, v) = self.reduce(mask, 0);
        (m == 0).then_some(v)
    }

    /// True when the 0/1 vector with bits `residues` satisfies every fact.
    pub fn admits(&self, residues: u64) -> bool {
        !self.inconsistent && self.rows.iter().all(|&(m, v)| ((m & residues).count_ones() % 2) as u8 == v)
    }

    fn mask_of(&self, q: &LinIneq) -> u64 {
        q.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_odd())
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Integer rounding followed by parity tightening: when the parity of the
    /// left-hand side is known and differs from the bound's, the bound moves up by one.
    pub fn round(&self, q: &LinIneq) -> Canonical {
        match q.clone().integer_rounded() {
            Canonical::Ineq(mut r) => {
                if let Some(v) = self.value_of(self.mask_of(&r)) {
                    if r.bound.is_odd() != (v == 1) {
                        r.bound += num_bigint::BigInt::one();
                    }
                }
                Canonical::Ineq(r)
            }
            other => other,
        }
    }

    /// Rounds every inequality of a system over the same variables.
    pub fn round_system(&self, sys: &HalfSpaceSystem) -> Result<HalfSpaceSystem> {
        if sys.variables() != self.variables.as_slice() {
            return domain("parity facts and system use different variables");
        }
        let mut out = sys.with_inequalities(Vec::new());
        for q in sys.inequalities() {
            match self.round(q) {
                Canonical::Ineq(r) => out.add(r)?,
                Canonical::Tautology => {}
                Canonical::Contradiction => out.add_i64(&vec![0; sys.nvars()], 1)?,
            }
        }
        Ok(out)
    }
}
