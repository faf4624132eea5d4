//! Exact (co)homology of finite commutative monoids with functor coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] — exact integer and rational linear algebra (Smith normal
//!   form, ranks, lattices, spectral projectors).
//! * [`monoid`] — finite commutative monoids as validated tables.
//! * [`module`] — left and right modules over the divisibility category
//!   `H(C)`, differentials and derivations.
//! * [`gamma`] — pointed maps, the Γ-modules `G_*(C,N)` / `G^*(C,M)` as
//!   explicit complexes, Hochschild, Leech and Harrison (co)homology.
//! * [`hodge`] — Eulerian idempotents and the weight decomposition over ℚ.
//! * [`grillet`] — degree-0 Grillet (co)homology, the characteristic-zero
//!   path, and comparisons with the monoid algebra.
//! * [`suite`] and [`verify`] — the fixed corpus of test monoids and the
//!   executable verification checks run by the CLI and the acceptance tests.

pub mod codec;
pub mod error;
pub mod gamma;
pub mod grillet;
pub mod hodge;
pub mod linalg;
pub mod module;
pub mod monoid;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
pub use gamma::{
    build_complex, epsilon_map, harrison, hochschild, leech_cohomology, shuffle_element,
    sym_action, y_exactness_check, Direction, GammaChainComplex, Perm, PointedMap,
    SymGroupElement,
};
pub use linalg::{
    cokernel_group, homology_at, smith_normal_form, spectral_projectors, FgAbGroup, IntMatrix,
    RatMatrix, Ring,
};
pub use module::{
    derivations, omega, std_projective, tabulate_presented, tensor_over_hc, KCModule,
    PresentedHCModule, QuotientModule, Side, TabulatedHCModule,
};
pub use monoid::{FiniteCommMonoid, MonoidBuilder, MonoidHom};
pub use grillet::{
    bar_complex_compare, d0_cohomology, d0_homology, grillet_char0, kaehler_compare, GrilletReport,
};
pub use hodge::{eulerian_idempotents, hodge_decomposition, total_shuffle_operator, HodgeProjectorSet};
