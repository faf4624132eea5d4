//! Modules over the divisibility category `H(C)` of a commutative monoid.

mod derivations;
mod kc;
mod morphism;
mod presented;
mod quotient;
mod tabulated;
mod tensor;

pub use derivations::{derivations, hom_from_presented, SolutionGroup};
pub use kc::{kc_hom_rank, KCModule};
pub use morphism::ModuleMap;
pub use presented::{omega, tabulate_presented, PresentedHCModule, Relation, Tabulation};
pub use quotient::{jstar_mod, QuotientModule};
pub use tabulated::{
    boxtimes, hom_rank, jlower, jstar, pullback, std_projective, validate_module, ModuleViolation,
    Side, TabulatedHCModule,
};
pub use tensor::{
    tensor_over_hc, tensor_quotients, tensor_with_presented, tensor_with_presented_yoneda,
};
