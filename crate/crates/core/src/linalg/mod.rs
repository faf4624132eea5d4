//! Exact integer and rational linear algebra.

mod group;
mod homology;
mod int_matrix;
mod lattice;
mod rank;
mod rat_matrix;
mod scalar;
mod snf;
mod spectral;
mod subspace;

use serde::{Deserialize, Serialize};

pub use group::FgAbGroup;
pub use homology::{cokernel_group, homology_at, homology_dim_q, quotient_homology_at,
    quotient_homology_dim_q,
};
pub use int_matrix::{IntMatrix, SparseVec};
pub use lattice::{
    content, densify, kernel_basis, lattice_basis, preimage, solve, sparsify, subquotient,
    LatticeSolver,
};
pub use rank::{rank, rank_of_vectors};
pub use rat_matrix::RatMatrix;
pub use snf::{invariant_factors, smith_normal_form, Snf};
pub use spectral::spectral_projectors;
pub use subspace::{coordinates, is_in_span, kernel_q, rref, span_basis};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    pub fn as_str(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Ring> {
        match s {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            _ => Err(crate::Error::BadParams(format!("unknown ring {s:?}"))),
        }
    }
}
