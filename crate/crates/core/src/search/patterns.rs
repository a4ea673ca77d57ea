use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::divisor::{class_fcurve_vector, fcurves, DivisorClass};
use crate::error::{domain, Result};
use crate::types::{FCurve, Permutation, PointSet, Relabel};

/// The two sign patterns on F-curves of `M_{0,6}` used to rule out extremal rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    I,
    II,
}

struct Tables {
    /// For each relabeling: the six two-point blocks that must carry a positive
    /// curve, and the two curves that must pair to zero.
    one: Vec<([u32; 6], [usize; 2])>,
    /// For each relabeling: three curves that must pair positively, two to zero.
    two: Vec<([usize; 3], [usize; 2])>,
    /// For each curve, the bitmasks of its four blocks.
    blocks: Vec<[u32; 4]>,
}

fn build_tables() -> Result<Tables> {
    let curves = fcurves(6, None)?;
    let index: HashMap<FCurve, usize> = curves.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let curve = |s: &str| -> Result<FCurve> { s.parse() };
    let pairs = [[1, 2], [1, 3], [2, 3], [4, 5], [4, 6], [5, 6]];
    let zeros_one = [curve("1,2,3|4|5|6")?, curve("4,5,6|1|2|3")?];
    let pos_two = [curve("1,3|2,4|5|6")?, curve("1,5|3,4|2|6")?, curve("1,2,3|4|5|6")?];
    let zeros_two = [curve("2,3,4|1|5|6")?, curve("1,2|3,4|5|6")?];
    let find = |f: &FCurve, tau: &Permutation| -> Result<usize> { Ok(index[&f.relabel(tau)?]) };
    let mut one = Vec::with_capacity(720);
    let mut two = Vec::with_capacity(720);
    for tau in Permutation::all(6) {
        let mut blocks = [0u32; 6];
        for (b, pair) in blocks.iter_mut().zip(pairs) {
            *b = tau.apply_set(PointSet::from_points(&pair)?).bits();
        }
        one.push((blocks, [find(&zeros_one[0], &tau)?, find(&zeros_one[1], &tau)?]));
        two.push((
            [find(&pos_two[0], &tau)?, find(&pos_two[1], &tau)?, find(&pos_two[2], &tau)?],
            [find(&zeros_two[0], &tau)?, find(&zeros_two[1], &tau)?],
        ));
    }
    let blocks = curves.iter().map(|f| f.parts().map(PointSet::bits)).collect();
    Ok(Tables { one, two, blocks })
}

static TABLES: Lazy<std::result::Result<Tables, String>> = Lazy::new(|| build_tables().map_err(|e| e.to_string()));

fn tables() -> Result<&'static Tables> {
    TABLES.as_ref().map_err(|e| crate::CbError::Internal(e.clone()))
}

/// Decides a pattern from the signs of `D · F` over the 65 F-curves of
/// `M_{0,6}`, listed in the order of `fcurves(6, None)`.
///
/// `D · F_S > 0` for a block `S` means that some curve with `S` as one of its
/// blocks pairs positively. Since `σD · F = D · σ⁻¹F`, ranging over all
/// relabelings of the curves is the same as ranging over all `σ`.
pub fn pattern_from_signs(signs: &[Ordering], which: Pattern) -> Result<bool> {
    let t = tables()?;
    if signs.len() != t.blocks.len() {
        return domain(format!("expected {} signs, got {}", t.blocks.len(), signs.len()));
    }
    let zero = |i: usize| signs[i] == Ordering::Equal;
    let pos = |i: usize| signs[i] == Ordering::Greater;
    Ok(match which {
        Pattern::I => {
            let mut positive_block = [false; 64];
            for (i, parts) in t.blocks.iter().enumerate() {
                if pos(i) {
                    for &b in parts {
                        positive_block[b as usize] = true;
                    }
                }
            }
            t.one
                .iter()
                .any(|(blocks, zs)| blocks.iter().all(|&b| positive_block[b as usize]) && zs.iter().all(|&i| zero(i)))
        }
        Pattern::II => t
            .two
            .iter()
            .any(|(ps, zs)| ps.iter().all(|&i| pos(i)) && zs.iter().all(|&i| zero(i))),
    })
}

/// [`pattern_from_signs`] for nonnegative intersection numbers.
pub fn pattern_from_values(values: &[u64], which: Pattern) -> Result<bool> {
    let signs: Vec<Ordering> = values.iter().map(|v| v.cmp(&0)).collect();
    pattern_from_signs(&signs, which)
}

/// Whether a class on `M_{0,6}` has the given pattern.
pub fn pattern_check(cls: &DivisorClass, which: Pattern) -> Result<bool> {
    if cls.n != 6 {
        return domain("patterns are defined for n=6 only");
    }
    let v = class_fcurve_vector(cls)?;
    let zero = num_rational::BigRational::zero();
    let signs: Vec<Ordering> = v.iter().map(|x| x.cmp(&zero)).collect();
    pattern_from_signs(&signs, which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::orbit_table;

    #[test]
    fn table_patterns_are_reproduced() {
        for r in orbit_table() {
            let cls = r.class().unwrap();
            assert_eq!(pattern_check(&cls, Pattern::I).unwrap(), r.pattern_flags.one, "orbit {} I", r.orbit_id);
            assert_eq!(pattern_check(&cls, Pattern::II).unwrap(), r.pattern_flags.two, "orbit {} II", r.orbit_id);
        }
    }

    #[test]
    fn non_fakhruddin_rays_have_a_pattern() {
        for r in orbit_table().iter().filter(|r| !r.is_fakhruddin()) {
            let cls = r.class().unwrap();
            assert!(pattern_check(&cls, Pattern::I).unwrap() || pattern_check(&cls, Pattern::II).unwrap());
        }
    }

    #[test]
    fn patterns_are_invariant_under_relabeling() {
        let cls = crate::orbits::orbit(10).unwrap().class().unwrap();
        let v = class_fcurve_vector(&cls).unwrap();
        let zero = num_rational::BigRational::zero();
        let signs: Vec<Ordering> = v.iter().map(|x| x.cmp(&zero)).collect();
        let curves = fcurves(6, None).unwrap();
        let index: HashMap<FCurve, usize> = curves.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let tau = Permutation::cycle(6, &[1, 4, 2, 6]).unwrap();
        let moved: Vec<Ordering> = curves.iter().map(|f| signs[index[&f.relabel(&tau).unwrap()]]).collect();
        for which in [Pattern::I, Pattern::II] {
            assert_eq!(pattern_from_signs(&signs, which).unwrap(), pattern_from_signs(&moved, which).unwrap());
        }
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(pattern_from_values(&[1, 2, 3], Pattern::I).is_err());
    }
}
