use super::action::integer_form;
use super::complex::{Direction, GammaChainComplex};
use super::orbits::{spread, OrbitLattice, Orbits};
use super::sym::{compositions, shuffle_element, Perm};
use crate::error::{Error, Result};
use crate::linalg::{
    homology_at, homology_dim_q, kernel_basis, lattice_basis, quotient_homology_at,
    quotient_homology_dim_q, rank, FgAbGroup, IntMatrix, Ring,
};
use num_bigint::BigInt;

/// Integer forms of every `sh_{p_1..p_k}`, `k ≥ 2`, in degree `n`.
fn shuffles(n: usize) -> Vec<Vec<(Perm, BigInt)>> {
    compositions(n, 2)
        .into_iter()
        .map(|parts| integer_form(&shuffle_element(&parts).expect("positive parts")).0)
        .collect()
}

/// `∩ ker(sh)` in degree `n`, orbit by orbit; saturated.
fn shuffle_kernel(cx: &GammaChainComplex, n: usize) -> (Orbits, OrbitLattice) {
    let orbits = Orbits::new(cx, n);
    let sh = shuffles(n);
    let blocks = (0..orbits.orbits.len())
        .map(|k| {
            if sh.is_empty() {
                return IntMatrix::identity(orbits.orbits[k].len());
            }
            let stacked: Vec<IntMatrix> = sh.iter().map(|t| orbits.block(cx, n, k, t)).collect();
            kernel_basis(&IntMatrix::vstack(&stacked.iter().collect::<Vec<_>>()))
        })
        .collect();
    let lattice = OrbitLattice::new(cx, n, &orbits, blocks);
    (orbits, lattice)
}

/// Generators of `Σ im(sh)` in degree `n`, orbit by orbit.
fn shuffle_image(cx: &GammaChainComplex, n: usize) -> IntMatrix {
    let orbits = Orbits::new(cx, n);
    let sh = shuffles(n);
    let blocks = (0..orbits.orbits.len())
        .map(|k| {
            let len = orbits.orbits[k].len();
            if sh.is_empty() {
                return IntMatrix::zeros(len, 0);
            }
            let images: Vec<IntMatrix> = sh.iter().map(|t| orbits.block(cx, n, k, t)).collect();
            lattice_basis(&IntMatrix::hstack(&images.iter().collect::<Vec<_>>()))
        });
    spread(cx, n, &orbits, &blocks.collect::<Vec<_>>()).0
}

/// The restriction of `δ_n` to the shuffle kernels, in their bases.
fn restricted_coboundary(
    cx: &GammaChainComplex,
    n: usize,
    source: &OrbitLattice,
    target: &(Orbits, OrbitLattice),
) -> Result<IntMatrix> {
    let image = cx.differential(n)? * source.basis();
    let mut columns = Vec::with_capacity(image.cols());
    for col in image.columns() {
        let coords = target.1.coordinates(cx, &target.0, &col).ok_or_else(|| {
            Error::NotAComplex(format!("the coboundary leaves the shuffle kernel in degree {n}"))
        })?;
        columns.push(coords);
    }
    Ok(IntMatrix::from_columns(target.1.dim(), &columns))
}

/// Harrison (co)homology in degree `n < n_max`.
///
/// Cochains: the subcomplex `∩ ker(sh)` over all block shuffles with at
/// least two blocks. Chains: the quotient by `Σ im(sh)`. Over ℤ the
/// sub/quotient property is checked, and a failure is reported as
/// `NotAComplex`.
pub fn harrison(complex: &GammaChainComplex, n: usize) -> Result<FgAbGroup> {
    if n >= complex.n_max() {
        return Err(Error::IndexOutOfRange(format!(
            "degree {n} needs the complex up to degree {}",
            n + 1
        )));
    }
    if complex.coefficients().has_relations() {
        return Err(Error::BadParams("Harrison homology takes coefficients without relations".into()));
    }
    match complex.direction() {
        Direction::Cohomological => cohomology(complex, n),
        Direction::Homological => homology(complex, n),
    }
}

fn cohomology(cx: &GammaChainComplex, n: usize) -> Result<FgAbGroup> {
    let here = shuffle_kernel(cx, n);
    let next = shuffle_kernel(cx, n + 1);
    let out = restricted_coboundary(cx, n, &here.1, &next)?;
    let inc = if n == 0 {
        IntMatrix::zeros(here.1.dim(), 0)
    } else {
        let prev = shuffle_kernel(cx, n - 1);
        restricted_coboundary(cx, n - 1, &prev.1, &here)?
    };
    match cx.ring() {
        Ring::Z => homology_at(&out, &inc),
        Ring::Q => homology_dim_q(&out, &inc).map(FgAbGroup::free),
    }
}

/// `∂_d(S_d) ⊆ S_{d-1}`, as lattices over ℤ or as spaces over ℚ.
fn check_quotient(cx: &GammaChainComplex, d: usize, s_d: &IntMatrix, s_prev: &IntMatrix) -> Result<()> {
    let image = cx.differential(d)? * s_d;
    let closed = match cx.ring() {
        Ring::Q => rank(&IntMatrix::hstack(&[s_prev, &image])) == rank(s_prev),
        Ring::Z => {
            let solver = crate::linalg::LatticeSolver::new(s_prev);
            image
                .columns()
                .iter()
                .all(|c| solver.contains(&crate::linalg::densify(c, image.rows())))
        }
    };
    if closed {
        Ok(())
    } else {
        Err(Error::NotAComplex(format!("the boundary does not preserve shuffle images in degree {d}")))
    }
}

fn homology(cx: &GammaChainComplex, n: usize) -> Result<FgAbGroup> {
    let s_here = shuffle_image(cx, n);
    let s_next = shuffle_image(cx, n + 1);
    check_quotient(cx, n + 1, &s_next, &s_here)?;
    let s_prev = if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        let s_prev = shuffle_image(cx, n - 1);
        check_quotient(cx, n, &s_here, &s_prev)?;
        s_prev
    };
    let out = cx.differential(n)?;
    let inc = cx.differential(n + 1)?;
    match cx.ring() {
        Ring::Z => quotient_homology_at(out, inc, &s_prev, &s_here),
        Ring::Q => quotient_homology_dim_q(out, inc, &s_prev, &s_here).map(FgAbGroup::free),
    }
}
