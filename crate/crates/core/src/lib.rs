//! Exact computations with sl2 conformal block divisors on the moduli space of
//! stable pointed rational curves: ranks and fusion rules, F-curve intersection
//! numbers, divisor classes, the attachment-weight polytopes, and nef cone checks.

pub mod divisor;
pub mod error;
pub mod fusion;
pub mod intersect;
pub mod linalg;
pub mod nefcone;
pub mod orbits;
pub mod polytope;
pub mod search;
pub mod types;

pub use divisor::{class_in_basis, is_symmetric, symmetric_class, BasisElement, BasisTag, DivisorClass};
pub use error::{CbError, Result};
pub use fusion::{rank, rank4_closed, rank_small, rw_nonzero};
pub use intersect::{degree4, intersect_fcurve, positivity_via_polytope, Intersector};
pub use nefcone::{certify_extremal, fcurve_value_symmetric, picard_rank, ExtremalityCertificate};
pub use types::{
    apply_permutation, enumerate_fcurves, BoundaryIndex, FCurve, Level, Permutation, PointSet, Relabel, Shape,
    Weight, WeightData,
};
