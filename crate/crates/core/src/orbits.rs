//! The bundled table of the 28 `S_6`-orbits of extremal rays of the F-nef cone
//! of `M_{0,6}`, and matching of classes against it.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::divisor::{fcurves, DivisorClass};
use crate::error::{domain, internal, Result};
use crate::polytope::lp::{maximize, LpOutcome};
use crate::types::{FCurve, Permutation, Relabel, WeightData};

/// Orbits whose rays are pullbacks from GIT quotients or the level-one divisor.
pub const FAKHRUDDIN_ORBITS: [u32; 7] = [1, 2, 3, 6, 7, 9, 11];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFlags {
    #[serde(rename = "I")]
    pub one: bool,
    #[serde(rename = "II")]
    pub two: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub orbit_id: u32,
    pub size: usize,
    /// Coordinates in the nonadjacent basis.
    pub rep: Vec<i64>,
    pub pattern_flags: PatternFlags,
    pub cb_label: Option<String>,
}

impl OrbitRecord {
    pub fn class(&self) -> Result<DivisorClass> {
        DivisorClass::nonadjacent6(&self.rep)
    }

    /// The sl2 weight datum named by the label, if it is an sl2 label.
    pub fn sl2_weights(&self) -> Option<WeightData> {
        let label = self.cb_label.as_deref()?;
        let body = label.strip_prefix("D(sl2,")?.strip_suffix("))")?;
        let (ell, weights) = body.split_once(",(")?;
        let ell: u32 = ell.parse().ok()?;
        let w: Vec<u32> = weights.split(',').map(|t| t.parse().ok()).collect::<Option<_>>()?;
        WeightData::new(ell, w).ok()
    }

    pub fn is_fakhruddin(&self) -> bool {
        FAKHRUDDIN_ORBITS.contains(&self.orbit_id)
    }
}

static TABLE: Lazy<Vec<OrbitRecord>> = Lazy::new(|| {
    serde_json::from_str(include_str!("../data/orbits_n6.json")).expect("bundled orbit table parses")
});

pub fn orbit_table() -> &'static [OrbitRecord] {
    &TABLE
}

pub fn orbit(id: u32) -> Result<&'static OrbitRecord> {
    TABLE
        .iter()
        .find(|r| r.orbit_id == id)
        .map_or_else(|| domain(format!("no orbit with id {id}")), Ok)
}

/// Divides a nonzero integer vector by the gcd of its entries (keeps signs).
pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn integral(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::from(1), |d, x| d.lcm(x.denom()));
    v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
}

/// `cls · F` over all 65 F-curves of `M_{0,6}`, scaled to a primitive integer vector.
pub fn fvector6(cls: &DivisorClass) -> Result<Vec<BigInt>> {
    if cls.n != 6 {
        return domain("orbit matching is only available for n=6");
    }
    let curves = fcurves(6, None)?;
    let v: Vec<BigRational> = curves.iter().map(|f| cls.pair_fcurve(f)).collect::<Result<_>>()?;
    Ok(primitive_int(&integral(&v)))
}

struct Members {
    /// Primitive F-vectors of every ray in every orbit, with the orbit id.
    by_vector: HashMap<Vec<BigInt>, u32>,
    /// Rays grouped by orbit, in table order.
    rays: Vec<(u32, Vec<Vec<BigInt>>)>,
}

fn curve_index() -> Result<(std::sync::Arc<Vec<FCurve>>, HashMap<FCurve, usize>)> {
    let curves = fcurves(6, None)?;
    let index = curves.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    Ok((curves, index))
}

/// Every relabeling of an F-vector: the entry for `F` becomes the entry for `tau(F)`.
pub fn relabelings6(v: &[BigInt]) -> Result<Vec<(Permutation, Vec<BigInt>)>> {
    let (curves, index) = curve_index()?;
    let mut out = Vec::with_capacity(720);
    for tau in Permutation::all(6) {
        let w: Vec<BigInt> = curves
            .iter()
            .map(|f| Ok(v[index[&f.relabel(&tau)?]].clone()))
            .collect::<Result<_>>()?;
        out.push((tau, w));
    }
    Ok(out)
}

fn build_members() -> Result<Members> {
    let mut by_vector = HashMap::new();
    let mut rays = Vec::new();
    for rec in orbit_table() {
        let base = fvector6(&rec.class()?)?;
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (_, w) in relabelings6(&base)? {
            if seen.insert(w.clone()) {
                list.push(w);
            }
        }
        for w in &list {
            if let Some(prev) = by_vector.insert(w.clone(), rec.orbit_id) {
                return internal(format!("orbits {prev} and {} share a ray", rec.orbit_id));
            }
        }
        rays.push((rec.orbit_id, list));
    }
    Ok(Members { by_vector, rays })
}

static MEMBERS: Lazy<std::result::Result<Members, String>> = Lazy::new(|| build_members().map_err(|e| e.to_string()));

fn members() -> Result<&'static Members> {
    MEMBERS.as_ref().map_err(|e| crate::CbError::Internal(e.clone()))
}

/// Number of distinct rays generated by each bundled representative under `S_6`.
pub fn orbit_sizes() -> Result<Vec<(u32, usize)>> {
    Ok(members()?.rays.iter().map(|(id, r)| (*id, r.len())).collect())
}

/// The orbit containing the ray of `cls`, if it is one of the bundled extremal rays.
pub fn match_orbit(cls: &DivisorClass) -> Result<Option<u32>> {
    match_orbit_vector(&fvector6(cls)?)
}

/// As [`match_orbit`], for a primitive F-vector in the order of `fcurves(6, None)`.
pub fn match_orbit_vector(v: &[BigInt]) -> Result<Option<u32>> {
    Ok(members()?.by_vector.get(v).copied())
}

/// True when the class lies in the cone spanned by the rays of the Fakhruddin orbits.
pub fn in_fakhruddin_cone(cls: &DivisorClass) -> Result<bool> {
    in_fakhruddin_cone_vector(&fvector6(cls)?)
}

/// As [`in_fakhruddin_cone`], for an F-vector in the order of `fcurves(6, None)`.
pub fn in_fakhruddin_cone_vector(v: &[BigInt]) -> Result<bool> {
    if v.len() != 65 {
        return domain("an F-vector on six points has 65 entries");
    }
    if v.iter().any(|x| x.is_negative()) {
        return Ok(false);
    }
    let gens: Vec<&Vec<BigInt>> = members()?
        .rays
        .iter()
        .filter(|(id, _)| FAKHRUDDIN_ORBITS.contains(id))
        .flat_map(|(_, r)| r.iter())
        .collect();
    let m: Vec<Vec<BigRational>> = (0..v.len())
        .map(|i| gens.iter().map(|g| BigRational::from_integer(g[i].clone())).collect())
        .collect();
    let r: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let g = vec![BigRational::zero(); gens.len()];
    Ok(!matches!(maximize(&m, &r, &g, None), LpOutcome::Infeasible))
}
