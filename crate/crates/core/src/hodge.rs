//! Eulerian idempotents as spectral projectors of the total binary shuffle
//! operator, and the weight decomposition of Hochschild (co)homology over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gamma::orbits::{spread, Orbits};
use crate::gamma::integer_form;
use crate::gamma::{shuffle_element, sym_action, Direction, GammaChainComplex, Perm, SymGroupElement};
use crate::linalg::{rank, span_basis, IntMatrix, RatMatrix, Ring};

/// Largest degree for which idempotents are built by default (`|S_5| = 120`).
pub const MAX_IDEMPOTENT_DEGREE: usize = 5;

/// `s_n = Σ_{p=1}^{n−1} sh_{p,n−p}`.
pub fn total_shuffle_operator(n: usize) -> Result<SymGroupElement> {
    if n == 0 {
        return Err(Error::BadParams("the shuffle operator needs n ≥ 1".into()));
    }
    let mut s = SymGroupElement::zero(n);
    for p in 1..n {
        s = &s + &shuffle_element(&[p, n - p])?;
    }
    Ok(s)
}

/// Eigenvalue `2^i − 2` of the weight-`i` summand.
pub fn weight_eigenvalue(i: usize) -> BigRational {
    BigRational::from_integer((BigInt::from(1) << i) - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeProjectorSet {
    n: usize,
    projectors: Vec<SymGroupElement>,
}

impl HodgeProjectorSet {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `e^{(i)}` for `1 ≤ i ≤ n`.
    pub fn projector(&self, i: usize) -> &SymGroupElement {
        &self.projectors[i - 1]
    }

    pub fn projectors(&self) -> &[SymGroupElement] {
        &self.projectors
    }

    /// Idempotent, pairwise orthogonal and summing to the identity.
    pub fn check_identities(&self) -> bool {
        let zero = SymGroupElement::zero(self.n);
        let mut sum = zero.clone();
        for (i, e) in self.projectors.iter().enumerate() {
            for (j, f) in self.projectors.iter().enumerate() {
                let ef = e * f;
                if (i == j && &ef != e) || (i != j && ef != zero) {
                    return false;
                }
            }
            sum = &sum + e;
        }
        sum == SymGroupElement::identity(self.n)
    }
}

/// `∏_{i=1}^{n} (s_n − (2^i − 2))` in `ℚ[S_n]`.
pub fn annihilating_product(n: usize) -> Result<SymGroupElement> {
    let s = total_shuffle_operator(n)?;
    let mut acc = SymGroupElement::identity(n);
    for i in 1..=n {
        acc = &acc * &s.shift(&weight_eigenvalue(i));
    }
    Ok(acc)
}

pub fn eulerian_idempotents(n: usize) -> Result<HodgeProjectorSet> {
    eulerian_idempotents_capped(n, MAX_IDEMPOTENT_DEGREE)
}

/// Lagrange projectors `e^{(i)} = ∏_{j≠i} (s_n − λ_j)/(λ_i − λ_j)`, computed
/// in the group algebra after checking the annihilating polynomial.
pub fn eulerian_idempotents_capped(n: usize, cap: usize) -> Result<HodgeProjectorSet> {
    if n > cap {
        return Err(Error::BadParams(format!("idempotents are capped at degree {cap}")));
    }
    if !annihilating_product(n)?.is_zero() {
        return Err(Error::NotAnnihilated);
    }
    let s = total_shuffle_operator(n)?;
    let lambdas: Vec<BigRational> = (1..=n).map(weight_eigenvalue).collect();
    let shifted: Vec<SymGroupElement> = lambdas.iter().map(|l| s.shift(l)).collect();
    let projectors = (0..n)
        .map(|i| {
            let mut p = SymGroupElement::identity(n);
            for j in (0..n).filter(|&j| j != i) {
                let factor = shifted[j].scale(&(BigRational::one() / (&lambdas[i] - &lambdas[j])));
                p = &p * &factor;
            }
            p
        })
        .collect();
    Ok(HodgeProjectorSet { n, projectors })
}

/// Matrix of left multiplication by `e` on `ℚ[S_n]`, basis `Perm::all(n)`.
pub fn left_regular_matrix(e: &SymGroupElement) -> RatMatrix {
    let all = Perm::all(e.degree());
    let index = |p: &Perm| all.binary_search(p).expect("all permutations are listed");
    let mut entries = Vec::new();
    for (col, tau) in all.iter().enumerate() {
        for (sigma, c) in e.terms() {
            entries.push((index(&sigma.compose(tau)), col, c.clone()));
        }
    }
    RatMatrix::from_triplets(all.len(), all.len(), entries)
}

/// Basis (columns) of the image of `e` in degree `d`, orbit by orbit.
fn weight_space(cx: &GammaChainComplex, d: usize, e: &SymGroupElement) -> IntMatrix {
    let orbits = Orbits::new(cx, d);
    let (terms, _) = integer_form(e);
    let blocks: Vec<IntMatrix> = (0..orbits.orbits.len())
        .map(|k| {
            let block = orbits.block(cx, d, k, &terms);
            let len = block.rows();
            IntMatrix::from_columns(len, &span_basis(block.columns(), len))
        })
        .collect();
    spread(cx, d, &orbits, &blocks).0
}

fn contained(space: &IntMatrix, vectors: &IntMatrix) -> bool {
    vectors.is_zero() || rank(&IntMatrix::hstack(&[space, vectors])) == rank(space)
}

/// Per-weight dimensions `dim HH_n^{(i)}`, `i = 1..n`, over ℚ (for cochains,
/// with the contravariant action of the same idempotents). Checks that the
/// differentials preserve every weight and that the weights add up to the
/// total dimension.
pub fn hodge_decomposition(complex: &GammaChainComplex, n: usize) -> Result<Vec<usize>> {
    if n == 0 || n >= complex.n_max() {
        return Err(Error::IndexOutOfRange(format!(
            "weights need 1 ≤ n < {}",
            complex.n_max()
        )));
    }
    if complex.coefficients().has_relations() {
        return Err(Error::BadParams("the weight decomposition takes coefficients without relations".into()));
    }
    let sets: Vec<HodgeProjectorSet> = (n - 1..=n + 1)
        .map(|d| {
            if d == 0 {
                Ok(HodgeProjectorSet {
                    n: 0,
                    projectors: vec![],
                })
            } else {
                eulerian_idempotents_capped(d, d.max(MAX_IDEMPOTENT_DEGREE))
            }
        })
        .collect::<Result<_>>()?;
    // Weight-i space in degree d (zero for i > d); degree 0 never meets a
    // nonzero differential, so it is taken whole.
    let space = |d: usize, i: usize| -> IntMatrix {
        if d == 0 {
            return IntMatrix::identity(complex.dim(0));
        }
        let set = &sets[d + 1 - n];
        if i > d {
            return IntMatrix::zeros(complex.dim(d), 0);
        }
        weight_space(complex, d, set.projector(i))
    };
    let mut dims = Vec::with_capacity(n);
    for i in 1..=n {
        let here = space(n, i);
        let (out, inc, out_target, inc_source, inc_degree) = match complex.direction() {
            Direction::Homological => (
                complex.differential(n)?,
                complex.differential(n + 1)?,
                space(n - 1, i),
                space(n + 1, i),
                n + 1,
            ),
            Direction::Cohomological => (
                complex.differential(n)?,
                complex.differential(n - 1)?,
                space(n + 1, i),
                space(n - 1, i),
                n - 1,
            ),
        };
        let image_out = out * &here;
        let image_in = inc * &inc_source;
        if !contained(&out_target, &image_out) {
            return Err(Error::WeightNotPreserved { weight: i, degree: n });
        }
        if !contained(&here, &image_in) {
            return Err(Error::WeightNotPreserved {
                weight: i,
                degree: inc_degree,
            });
        }
        dims.push(here.cols() - rank(&image_out) - rank(&image_in));
    }
    let total = complex.clone().with_ring(Ring::Q).homology(n)?.free_rank();
    if dims.iter().sum::<usize>() != total {
        return Err(Error::OracleMismatch(format!(
            "weights {dims:?} do not add up to dim HH_{n} = {total}"
        )));
    }
    Ok(dims)
}

/// The projector matrices `sym_action(e^{(i)})` in degree `n`.
pub fn projector_matrices(complex: &GammaChainComplex, n: usize) -> Result<Vec<RatMatrix>> {
    eulerian_idempotents(n)?
        .projectors()
        .iter()
        .map(|e| sym_action(complex, n, e))
        .collect()
}

/// `∂∘P_i = P_i∘∂` (or `δ∘P_i = P_i∘δ`) for every weight, with the
/// differential leaving degree `n`.
pub fn projectors_commute(complex: &GammaChainComplex, n: usize) -> Result<bool> {
    let target = match complex.direction() {
        Direction::Homological => n.checked_sub(1),
        Direction::Cohomological => Some(n + 1).filter(|&t| t <= complex.n_max()),
    };
    let Some(t) = target.filter(|&t| t >= 1) else {
        return Ok(true);
    };
    let d = RatMatrix::from_int(complex.differential(n)?.clone());
    let here = projector_matrices(complex, n)?;
    let there = projector_matrices(complex, t)?;
    let zero_there = RatMatrix::zeros(complex.dim(t), complex.dim(t));
    for (i, p) in here.iter().enumerate() {
        let q = there.get(i).unwrap_or(&zero_there);
        if &d * p != q * &d {
            return Ok(false);
        }
    }
    // Weights above the target degree must be killed by the differential.
    Ok(here.iter().skip(there.len()).all(|p| (&d * p).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{build_complex, harrison};
    use crate::linalg::spectral_projectors;
    use crate::module::{jstar, std_projective, KCModule, QuotientModule, Side};
    use crate::monoid::{semilattice_chain, trivial_monoid, truncated_add};

    #[test]
    fn shuffle_operator_small() {
        assert!(total_shuffle_operator(1).unwrap().is_zero());
        assert_eq!(total_shuffle_operator(2).unwrap(), shuffle_element(&[1, 1]).unwrap());
        let parts = [shuffle_element(&[1, 2]).unwrap(), shuffle_element(&[2, 1]).unwrap()];
        assert_eq!(parts.iter().map(|p| p.num_terms()).sum::<usize>(), 6);
        // The identity occurs in both sums and is merged.
        assert_eq!(total_shuffle_operator(3).unwrap().num_terms(), 5);
    }

    #[test]
    fn degree_two_idempotents() {
        let set = eulerian_idempotents(2).unwrap();
        let tau = SymGroupElement::from_perm(Perm::transposition(2, 0, 1));
        let id = SymGroupElement::identity(2);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(set.projector(1), &(&id + &tau).scale(&half));
        assert_eq!(set.projector(2), &(&id - &tau).scale(&half));
        assert_eq!(eulerian_idempotents(1).unwrap().projectors(), &[SymGroupElement::identity(1)]);
    }

    #[test]
    fn identities_up_to_four() {
        for n in 1..=4 {
            assert!(annihilating_product(n).unwrap().is_zero());
            assert!(eulerian_idempotents(n).unwrap().check_identities(), "n = {n}");
        }
        assert!(eulerian_idempotents(6).is_err());
    }

    #[test]
    fn agree_with_matrix_projectors() {
        for n in 2..=3 {
            let s = left_regular_matrix(&total_shuffle_operator(n).unwrap());
            let lambdas: Vec<BigRational> = (1..=n).map(weight_eigenvalue).collect();
            let mats = spectral_projectors(&s, &lambdas).unwrap();
            let set = eulerian_idempotents(n).unwrap();
            for (m, e) in mats.iter().zip(set.projectors()) {
                assert_eq!(m, &left_regular_matrix(e));
            }
        }
    }

    #[test]
    fn trivial_monoid_has_no_weights() {
        let t = trivial_monoid();
        let n: QuotientModule = jstar(&KCModule::trivial(&t, Ring::Q), Side::Right).into();
        let cx = build_complex(&t, &n, 5, Direction::Homological).unwrap();
        for d in 1..5 {
            assert!(hodge_decomposition(&cx, d).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn weight_one_is_harrison() {
        for c in [semilattice_chain(1).unwrap(), truncated_add(2).unwrap()] {
            for a in c.elements() {
                for dir in [Direction::Homological, Direction::Cohomological] {
                    let m: QuotientModule = std_projective(&c, a, dir.side()).into();
                    let cx = build_complex(&c, &m, 4, dir).unwrap().with_ring(Ring::Q);
                    for d in 1..4 {
                        let dims = hodge_decomposition(&cx, d).unwrap();
                        assert_eq!(dims[0], harrison(&cx, d).unwrap().free_rank(), "{dir:?} a={a} d={d}");
                    }
                    assert!(projectors_commute(&cx, 2).unwrap());
                }
            }
        }
    }
}
