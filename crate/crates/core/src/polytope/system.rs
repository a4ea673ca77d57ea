use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{domain, Result};

/// `coeffs · x >= bound`, gcd-reduced over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinIneq {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

/// What an inequality with no variables says.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Ineq(LinIneq),
    /// `0 >= b` with `b <= 0`.
    Tautology,
    /// `0 >= b` with `b > 0`.
    Contradiction,
}

impl LinIneq {
    pub fn from_i64(coeffs: &[i64], bound: i64) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            bound: BigInt::from(bound),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Divides coefficients and bound by their common gcd; classifies constant inequalities.
    pub fn canonical(mut self) -> Canonical {
        if self.is_constant() {
            return if self.bound.is_positive() {
                Canonical::Contradiction
            } else {
                Canonical::Tautology
            };
        }
        let g = self
            .coeffs
            .iter()
            .fold(self.bound.abs(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.bound = &self.bound / &g;
        }
        Canonical::Ineq(self)
    }

    /// Chvátal–Gomory rounding: divide by the gcd of the coefficients and round the bound up.
    /// Valid on integer points only.
    pub fn integer_rounded(mut self) -> Canonical {
        if self.is_constant() {
            return self.canonical();
        }
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.bound = self.bound.div_ceil(&g);
        }
        Canonical::Ineq(self)
    }

    pub fn negated_strict(&self) -> (Vec<BigInt>, BigInt) {
        (self.coeffs.iter().map(|c| -c).collect(), -&self.bound)
    }

    /// Evaluates `coeffs · x - bound`.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .sum::<BigInt>()
            - &self.bound
    }

    pub fn slack_i64(&self, x: &[i64]) -> i64 {
        let mut s = -self.bound.to_i64().expect("small bound");
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() {
                s += c.to_i64().expect("small coefficient") * v;
            }
        }
        s
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        self.slack_i64(x) >= 0
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(name);
        }
        format!("{s} >= {}", self.bound)
    }
}

/// A finite set of inequalities over named variables, with optional parity
/// residues for some variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpaceSystem {
    variables: Vec<String>,
    inequalities: Vec<LinIneq>,
    parities: Vec<Option<u8>>,
    contradiction: bool,
}

impl HalfSpaceSystem {
    pub fn new(variables: Vec<String>) -> Self {
        let n = variables.len();
        Self {
            variables,
            inequalities: Vec::new(),
            parities: vec![None; n],
            contradiction: false,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn inequalities(&self) -> &[LinIneq] {
        &self.inequalities
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// True once a constant inequality `0 >= b` with `b > 0` was added.
    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    pub fn parities(&self) -> &[Option<u8>] {
        &self.parities
    }

    pub fn parity(&self, var: usize) -> Option<u8> {
        self.parities[var]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn require_var(&self, name: &str) -> Result<usize> {
        self.var_index(name)
            .map_or_else(|| domain(format!("variable {name:?} is not declared")), Ok)
    }

    pub fn set_parity(&mut self, name: &str, residue: u8) -> Result<()> {
        let i = self.require_var(name)?;
        self.parities[i] = Some(residue % 2);
        Ok(())
    }

    /// Adds an inequality after canonicalization; duplicates are skipped.
    pub fn add(&mut self, ineq: LinIneq) -> Result<()> {
        if ineq.nvars() != self.nvars() {
            return domain(format!(
                "inequality has {} coefficients but the system has {} variables",
                ineq.nvars(),
                self.nvars()
            ));
        }
        match ineq.canonical() {
            Canonical::Ineq(c) => {
                if !self.inequalities.contains(&c) {
                    self.inequalities.push(c);
                }
            }
            Canonical::Tautology => {}
            Canonical::Contradiction => self.contradiction = true,
        }
        Ok(())
    }

    pub fn add_i64(&mut self, coeffs: &[i64], bound: i64) -> Result<()> {
        self.add(LinIneq::from_i64(coeffs, bound))
    }

    /// Adds `Σ terms >= bound` where terms name variables.
    pub fn add_named(&mut self, terms: &[(i64, &str)], bound: i64) -> Result<()> {
        let mut coeffs = vec![0i64; self.nvars()];
        for (c, name) in terms {
            coeffs[self.require_var(name)?] += c;
        }
        self.add_i64(&coeffs, bound)
    }

    pub fn extend(&mut self, ineqs: impl IntoIterator<Item = LinIneq>) -> Result<()> {
        for i in ineqs {
            self.add(i)?;
        }
        Ok(())
    }

    /// Same system with the given inequalities only (parities kept).
    pub fn with_inequalities(&self, inequalities: Vec<LinIneq>) -> Self {
        Self {
            variables: self.variables.clone(),
            inequalities,
            parities: self.parities.clone(),
            contradiction: self.contradiction,
        }
    }

    /// Rewrites the system over another variable list, matching by name.
    /// Variables of `self` missing from `vars` must have zero coefficients everywhere.
    pub fn embed(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .variables
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = HalfSpaceSystem::new(vars.to_vec());
        out.contradiction = self.contradiction;
        for (i, m) in map.iter().enumerate() {
            match m {
                Some(j) => out.parities[*j] = self.parities[i],
                None => {
                    if self.inequalities.iter().any(|q| !q.coeffs[i].is_zero()) {
                        return domain(format!(
                            "variable {:?} is used but missing from the target universe",
                            self.variables[i]
                        ));
                    }
                }
            }
        }
        for q in &self.inequalities {
            let mut coeffs = vec![BigInt::zero(); vars.len()];
            for (i, m) in map.iter().enumerate() {
                if let Some(j) = m {
                    coeffs[*j] = q.coeffs[i].clone();
                }
            }
            out.add(LinIneq {
                coeffs,
                bound: q.bound.clone(),
            })?;
        }
        Ok(out)
    }

    /// Drops one variable that no inequality uses.
    pub fn drop_variable(&self, var: usize) -> Result<Self> {
        if self.inequalities.iter().any(|q| !q.coeffs[var].is_zero()) {
            return domain(format!("variable {:?} is still in use", self.variables[var]));
        }
        let mut vars = self.variables.clone();
        vars.remove(var);
        let mut out = self.embed(&vars)?;
        out.contradiction = self.contradiction;
        Ok(out)
    }

    /// Substitutes `var := expr + constant` where `expr` is over the other variables,
    /// then drops `var`.
    pub fn substitute(&self, var: usize, expr: &[i64], constant: i64) -> Result<Self> {
        if expr.len() != self.nvars() || expr[var] != 0 {
            return domain("substitution expression must not use the substituted variable");
        }
        let mut out = HalfSpaceSystem::new(self.variables.clone());
        out.parities = self.parities.clone();
        out.contradiction = self.contradiction;
        for q in &self.inequalities {
            let c = q.coeffs[var].clone();
            let mut coeffs = q.coeffs.clone();
            coeffs[var] = BigInt::zero();
            for (k, e) in expr.iter().enumerate() {
                if *e != 0 {
                    coeffs[k] += &c * BigInt::from(*e);
                }
            }
            out.add(LinIneq {
                coeffs,
                bound: &q.bound - &c * BigInt::from(constant),
            })?;
        }
        out.parities[var] = None;
        out.drop_variable(var)
    }

    /// True if the integer point satisfies every inequality (parities ignored).
    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        !self.contradiction && self.inequalities.iter().all(|q| q.satisfied_by(x))
    }

    pub fn format_all(&self) -> Vec<String> {
        self.inequalities
            .iter()
            .map(|q| q.format(&self.variables))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let parities: serde_json::Map<String, Value> = self
            .variables
            .iter()
            .zip(&self.parities)
            .filter_map(|(v, p)| p.map(|p| (v.clone(), json!(p))))
            .collect();
        json!({
            "variables": self.variables,
            "inequalities": self.inequalities.iter().map(|q| json!({
                "coeffs": q.coeffs.iter().map(|c| c.to_string().parse::<i64>().unwrap_or(0)).collect::<Vec<_>>(),
                "bound": q.bound.to_string().parse::<i64>().unwrap_or(0),
                "text": q.format(&self.variables),
            })).collect::<Vec<_>>(),
            "parities": parities,
            "contradiction": self.contradiction,
        })
    }
}

impl fmt::Display for HalfSpaceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.contradiction {
            writeln!(f, "0 >= 1")?;
        }
        for line in self.format_all() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Variable names used throughout: `mu1..mu4`, `l1..ln`, `ell`.
pub fn lambda_name(i: usize) -> String {
    format!("l{i}")
}

pub fn mu_name(j: usize) -> String {
    format!("mu{j}")
}

pub const ELL: &str = "ell";

/// `l1..ln, ell`.
pub fn lambda_universe(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(lambda_name).collect();
    v.push(ELL.to_string());
    v
}
