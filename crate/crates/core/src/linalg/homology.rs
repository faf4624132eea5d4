use super::group::FgAbGroup;
use super::int_matrix::IntMatrix;
use super::lattice::{preimage, subquotient};
use super::rank::rank;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// `ℤ^rows / image(A)`.
pub fn cokernel_group(a: &IntMatrix) -> FgAbGroup {
    FgAbGroup::from_invariant_factors(a.rows(), &invariant_factors(a))
}

fn check_pair(d_n: &IntMatrix, d_next: &IntMatrix) -> Result<()> {
    if d_n.cols() != d_next.rows() {
        return Err(Error::DegreeMismatch(format!(
            "outgoing map has {} columns, incoming map has {} rows",
            d_n.cols(),
            d_next.rows()
        )));
    }
    if !(d_n * d_next).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    Ok(())
}

/// `ker(d_n) / im(d_next)` for `d_next: C_{n+1} → C_n` and `d_n: C_n → C_{n-1}`.
///
/// The torsion of the homology is the torsion of `coker(d_next)`, so only
/// the invariant factors of `d_next` and the rank of `d_n` are needed.
pub fn homology_at(d_n: &IntMatrix, d_next: &IntMatrix) -> Result<FgAbGroup> {
    check_pair(d_n, d_next)?;
    let factors = invariant_factors(d_next);
    let free = d_n.cols() - rank(d_n) - factors.len();
    Ok(FgAbGroup::new(
        free,
        factors.into_iter().filter(|d| *d != 1.into()).collect(),
    ))
}

/// Dimension of the same homology after tensoring with ℚ (rank arithmetic).
pub fn homology_dim_q(d_n: &IntMatrix, d_next: &IntMatrix) -> Result<usize> {
    check_pair(d_n, d_next)?;
    Ok(d_n.cols() - rank(d_n) - rank(d_next))
}

/// Homology of a quotient complex `C/R` at degree n, where the columns of
/// `rel_prev` generate `R_{n-1}` and those of `rel_here` generate `R_n`:
/// `{x : d_n x ∈ R_{n-1}} / (im d_next + R_n)`.
pub fn quotient_homology_at(
    d_n: &IntMatrix,
    d_next: &IntMatrix,
    rel_prev: &IntMatrix,
    rel_here: &IntMatrix,
) -> Result<FgAbGroup> {
    if d_n.cols() != d_next.rows() || rel_prev.rows() != d_n.rows() || rel_here.rows() != d_n.cols()
    {
        return Err(Error::DegreeMismatch("quotient complex shapes".into()));
    }
    let cycles = preimage(d_n, rel_prev);
    let bounds = IntMatrix::hstack(&[d_next, rel_here]);
    subquotient(&cycles, &bounds).map_err(|_| Error::NotAComplex("relation subcomplex".into()))
}

/// ℚ-dimension of the quotient-complex homology by rank arithmetic: the
/// induced maps have rank `rank[d | R] − rank R`.
pub fn quotient_homology_dim_q(
    d_n: &IntMatrix,
    d_next: &IntMatrix,
    rel_prev: &IntMatrix,
    rel_here: &IntMatrix,
) -> Result<usize> {
    if d_n.cols() != d_next.rows() || rel_prev.rows() != d_n.rows() || rel_here.rows() != d_n.cols()
    {
        return Err(Error::DegreeMismatch("quotient complex shapes".into()));
    }
    let r_prev = rank(rel_prev);
    let r_here = rank(rel_here);
    let out = rank(&IntMatrix::hstack(&[d_n, rel_prev])) - r_prev;
    let inc = rank(&IntMatrix::hstack(&[d_next, rel_here])) - r_here;
    Ok(d_n.cols() - r_here - out - inc)
}
