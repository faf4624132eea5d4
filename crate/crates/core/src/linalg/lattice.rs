//! Integer lattices: kernels, solving, bases, preimages and subquotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::FgAbGroup;
use super::int_matrix::{IntMatrix, SparseVec};
use super::snf::{smith_normal_form, Snf};
use super::homology::cokernel_group;
use crate::error::{Error, Result};

/// Basis (as columns) of the integer kernel of `a`. The kernel of an
/// integer matrix is saturated, so this is also a ℚ-basis.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    let keep: Vec<usize> = (r..a.cols()).collect();
    s.v.select_columns(&keep)
}

/// Repeated solving of `A x = b` over ℤ against one factorisation.
pub struct LatticeSolver {
    snf: Snf,
    diag: Vec<BigInt>,
}

impl LatticeSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let diag = snf.diagonal();
        LatticeSolver { snf, diag }
    }

    /// Some integer solution, or `None` when `b` is outside the column lattice.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.snf.u.mul_vec(b);
        let r = self.diag.len();
        if ub[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.snf.v.rows()];
        for i in 0..r {
            let (q, rem) = ub[i].div_rem(&self.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    LatticeSolver::new(a).solve(b)
}

/// A basis (independent columns) of the lattice spanned by the columns of
/// `gens`, by column echelon reduction with extended gcd steps.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let rows = gens.rows();
    let mut cols: Vec<Vec<BigInt>> = gens
        .columns()
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| densify(&c, rows))
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..rows {
        if cols.is_empty() {
            break;
        }
        // Combine every column with a nonzero entry at row r into one.
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(cols.len());
        for c in cols.drain(..) {
            if c[r].is_zero() {
                rest.push(c);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(c),
                Some(p) => {
                    let e = p[r].extended_gcd(&c[r]);
                    let (a, b) = (e.x, e.y);
                    let pr = &p[r] / &e.gcd;
                    let cr = &c[r] / &e.gcd;
                    // [new_p, other] = [p, c] * [[a, -cr], [b, pr]] (det 1).
                    let new_p: Vec<BigInt> =
                        p.iter().zip(&c).map(|(x, y)| &a * x + &b * y).collect();
                    let other: Vec<BigInt> =
                        p.iter().zip(&c).map(|(x, y)| &pr * y - &cr * x).collect();
                    debug_assert!(other[r].is_zero());
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        if let Some(p) = pivot {
            basis.push(p);
        }
        cols = rest;
    }
    let sparse: Vec<SparseVec> = basis.iter().map(|c| sparsify(c)).collect();
    IntMatrix::from_columns(rows, &sparse)
}

/// Basis of `{x : a·x ∈ span(l)}`, where `l`'s columns generate a lattice in
/// the target of `a`.
pub fn preimage(a: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), l.rows());
    let q = a.cols();
    if l.cols() == 0 {
        return kernel_basis(a);
    }
    let stacked = IntMatrix::hstack(&[a, &-l]);
    let k = kernel_basis(&stacked);
    let top: Vec<usize> = (0..q).collect();
    lattice_basis(&k.transpose().select_columns(&top).transpose())
}

/// `span(numer) / span(denom)` for lattices with `span(denom) ⊆ span(numer)`;
/// `numer` must have independent columns.
pub fn subquotient(numer: &IntMatrix, denom: &IntMatrix) -> Result<FgAbGroup> {
    assert_eq!(numer.rows(), denom.rows());
    if numer.cols() == 0 {
        return if denom.is_zero() {
            Ok(FgAbGroup::trivial())
        } else {
            Err(Error::NotAComplex("sublattice".into()))
        };
    }
    let solver = LatticeSolver::new(numer);
    let mut coords = Vec::with_capacity(denom.cols());
    for col in denom.columns() {
        let b = densify(&col, denom.rows());
        let x = solver
            .solve(&b)
            .ok_or_else(|| Error::NotAComplex("sublattice".into()))?;
        coords.push(sparsify(&x));
    }
    Ok(cokernel_group(&IntMatrix::from_columns(numer.cols(), &coords)))
}

pub fn densify(v: &SparseVec, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparsify(v: &[BigInt]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Content (gcd of entries) of a sparse vector; zero for the zero vector.
pub fn content(v: &SparseVec) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g.abs()
}
