//! Bundled inequality systems for three F-curves and the hypotheses under which they apply.

use serde::Deserialize;

use super::parity::ParityFacts;
use super::qpoly::{aff_combine, aff_const, aff_var, nonneg, rw_forms, Aff};
use super::system::{lambda_name, lambda_universe, HalfSpaceSystem};
use crate::error::Result;
use crate::types::FCurve;

#[derive(Debug, Deserialize)]
struct PresetRow {
    label: String,
    coeffs: Vec<i64>,
    bound: i64,
}

#[derive(Debug, Deserialize)]
struct PresetFile {
    variables: Vec<String>,
    inequalities: Vec<PresetRow>,
}

/// Which bundled system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Five conditions on the curve `4,5,6|1|2|3` (n = 6), sufficient only.
    I,
    /// Ten conditions on the curve `1,2|3,4|5|6` (n = 6).
    J,
    /// Ten conditions on the curve `1,2,3,4,5|6|7|8,9` (n = 9).
    ScriptI,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::I, Preset::J, Preset::ScriptI];

    pub fn name(self) -> &'static str {
        match self {
            Preset::I => "I",
            Preset::J => "J",
            Preset::ScriptI => "script_I",
        }
    }

    pub fn n(self) -> usize {
        match self {
            Preset::I | Preset::J => 6,
            Preset::ScriptI => 9,
        }
    }

    pub fn curve(self) -> FCurve {
        let text = match self {
            Preset::I => "4,5,6|1|2|3",
            Preset::J => "1,2|3,4|5|6",
            Preset::ScriptI => "1,2,3,4,5|6|7|8,9",
        };
        text.parse().expect("preset curve")
    }

    /// True when the bundled system characterizes positivity; false when it is only sufficient.
    pub fn is_equivalence(self) -> bool {
        !matches!(self, Preset::I)
    }

    fn source(self) -> &'static str {
        match self {
            Preset::I => include_str!("../../data/system_I.json"),
            Preset::J => include_str!("../../data/system_J.json"),
            Preset::ScriptI => include_str!("../../data/system_script_I.json"),
        }
    }

    /// The bundled system over `l1..ln, ell`, with its row labels.
    pub fn system(self) -> Result<(HalfSpaceSystem, Vec<String>)> {
        let file: PresetFile = serde_json::from_str(self.source())?;
        let mut sys = HalfSpaceSystem::new(file.variables);
        let mut labels = Vec::new();
        for row in file.inequalities {
            sys.add_i64(&row.coeffs, row.bound)?;
            labels.push(row.label);
        }
        Ok((sys, labels))
    }

    /// The linear hypotheses of the corresponding statement, over `l1..ln, ell`.
    /// Every case includes `1 <= l_i <= ell` and the nonvanishing inequalities of the full rank.
    pub fn assumptions(self) -> Result<HalfSpaceSystem> {
        let n = self.n();
        let vars = lambda_universe(n);
        let nv = vars.len();
        let lam: Vec<Aff> = (0..n).map(|i| aff_var(nv, i)).collect();
        let ell = aff_var(nv, n);
        let mut sys = HalfSpaceSystem::new(vars);
        let ge = |sys: &mut HalfSpaceSystem, a: &Aff, b: &Aff| sys.add(nonneg(&aff_combine(&[(1, a), (-1, b)])));
        let c = |k: i64| aff_const(nv, k);
        let ell_minus = |k: i64| aff_combine(&[(1, &ell), (-1, &aff_const(nv, k))]);
        for l in &lam {
            ge(&mut sys, l, &c(1))?;
            ge(&mut sys, &ell, l)?;
        }
        match self {
            Preset::I => {}
            Preset::J => ge(&mut sys, &ell, &c(3))?,
            Preset::ScriptI => {
                for l in &lam[1..] {
                    ge(&mut sys, &ell_minus(1), l)?;
                }
                for l in &lam[5..] {
                    ge(&mut sys, l, &c(2))?;
                }
                ge(&mut sys, &lam[6], &lam[7])?;
                ge(&mut sys, &lam[7], &lam[8])?;
                for i in 0..4 {
                    ge(&mut sys, &lam[i], &lam[i + 1])?;
                }
            }
        }
        for form in rw_forms(&lam, &ell) {
            sys.add(nonneg(&form))?;
        }
        Ok(sys)
    }

    /// The weight orderings assumed without loss of generality (empty unless n = 9).
    pub fn orderings(self) -> Result<HalfSpaceSystem> {
        let mut sys = HalfSpaceSystem::new(lambda_universe(self.n()));
        if self == Preset::ScriptI {
            for i in 1..5 {
                sys.add_named(&[(1, &lambda_name(i)), (-1, &lambda_name(i + 1))], 0)?;
            }
            sys.add_named(&[(1, &lambda_name(7)), (-1, &lambda_name(8))], 0)?;
            sys.add_named(&[(1, &lambda_name(8)), (-1, &lambda_name(9))], 0)?;
        }
        Ok(sys)
    }

    /// Parity facts that always hold: the total weight is even.
    pub fn base_facts(self) -> Result<ParityFacts> {
        let mut f = ParityFacts::new(lambda_universe(self.n()))?;
        let all: Vec<String> = (1..=self.n()).map(lambda_name).collect();
        f.add_sum(&all, 0)?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sizes() {
        assert_eq!(Preset::I.system().unwrap().0.len(), 5);
        assert_eq!(Preset::J.system().unwrap().0.len(), 10);
        assert_eq!(Preset::ScriptI.system().unwrap().0.len(), 10);
        for p in Preset::ALL {
            let (sys, labels) = p.system().unwrap();
            assert_eq!(sys.len(), labels.len());
            assert_eq!(sys.nvars(), p.n() + 1);
            assert_eq!(p.curve().n(), p.n());
        }
    }

    #[test]
    fn assumptions_hold_at_a_sample_point() {
        // l = 4, weights 3,3,2,2,2,2,2,2,2 satisfy hypotheses i-v
        let a = Preset::ScriptI.assumptions().unwrap();
        assert!(a.satisfied_by(&[3, 3, 2, 2, 2, 2, 2, 2, 2, 4]));
        assert!(!a.satisfied_by(&[3, 3, 2, 2, 2, 1, 2, 2, 2, 4]));
        let j = Preset::J.assumptions().unwrap();
        assert!(j.satisfied_by(&[1, 1, 1, 1, 1, 1, 3]));
        assert!(!j.satisfied_by(&[1, 1, 1, 1, 1, 1, 2]));
    }
}
