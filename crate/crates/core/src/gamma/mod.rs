//! The category Γ of pointed finite sets at the combinatorial level, and the
//! Γ-modules `G_*(C, N)`, `G^*(C, M)` as explicit integer complexes.

mod action;
mod complex;
mod harrison;
pub(crate) mod orbits;
mod pointed;
mod sym;
mod yexact;

pub(crate) use action::integer_form;
pub use action::sym_action;
pub use complex::{
    build_complex, build_complex_with, check_budget, hochschild, leech_cohomology, ComplexOptions,
    Direction, GammaChainComplex, DEFAULT_BUDGET, DEFAULT_MAX_DEGREE,
};
pub use harrison::harrison;
pub use pointed::{epsilon_map, PointedMap};
pub use sym::{compositions, partitions, shuffle_element, young_generators, Perm, SymGroupElement};
pub use yexact::{y_exactness_check, YExactness};
