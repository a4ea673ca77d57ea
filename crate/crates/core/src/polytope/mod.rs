//! Half-space systems, the polytopes `Q` and `Q'`, Fourier–Motzkin elimination
//! and the bundled inequality systems.

pub mod derive;
pub mod fm;
pub mod integer;
pub mod lp;
pub mod parity;
pub mod presets;
pub mod qpoly;
pub mod system;

pub use derive::{check_preset, parity_drop_check, q_prime_count, Branch, InequalityCount, PresetReport, SymbolicQ};
pub use fm::{fm_eliminate, implies, remove_dominated, remove_redundant, systems_equivalent};
pub use integer::{integer_implied, integer_point, SearchLimits};
pub use parity::ParityFacts;
pub use presets::Preset;
pub use qpoly::{build_q, lattice_point_with_parity, parity_tighten};
pub use system::{lambda_name, lambda_universe, mu_name, Canonical, HalfSpaceSystem, LinIneq, ELL};
