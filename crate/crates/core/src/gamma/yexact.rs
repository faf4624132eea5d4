use num_bigint::BigInt;

use super::complex::{build_complex, Direction, GammaChainComplex};
use super::pointed::PointedMap;
use super::sym::young_generators;
use crate::error::{Error, Result};
use crate::linalg::{densify, kernel_basis, preimage, IntMatrix, LatticeSolver};
use crate::module::{ModuleMap, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YExactness {
    pub pass: bool,
    /// Ranks of the invariant lattices (in the covers) of source and target.
    pub source_invariants: usize,
    pub target_invariants: usize,
    /// An invariant of the target, in cover coordinates, outside the image.
    pub witness: Option<Vec<BigInt>>,
}

/// Invariant vectors of `F/R` in degree `n` under the permutations `gens`:
/// `{x : σx − x ∈ R for all σ}`.
fn invariants(cx: &GammaChainComplex, n: usize, gens: &[PointedMap]) -> Result<IntMatrix> {
    let dim = cx.dim(n);
    if gens.is_empty() {
        return Ok(IntMatrix::identity(dim));
    }
    let id = IntMatrix::identity(dim);
    let moves: Vec<IntMatrix> = gens
        .iter()
        .map(|g| Ok(&cx.gamma_matrix(g)? - &id))
        .collect::<Result<_>>()?;
    let stacked = IntMatrix::vstack(&moves.iter().collect::<Vec<_>>());
    if !cx.coefficients().has_relations() {
        return Ok(kernel_basis(&stacked));
    }
    let rel = cx.relations(n);
    let rels: Vec<&IntMatrix> = gens.iter().map(|_| &rel).collect();
    Ok(preimage(&stacked, &IntMatrix::block_diag(&rels)))
}

/// Does `φ: N → N_2` induce a surjection
/// `G_*(C,N)([n])^{Σ(λ)} → G_*(C,N_2)([n])^{Σ(λ)}`? Invariant groups are
/// taken in the quotients, and surjectivity is tested by lattice membership.
pub fn y_exactness_check(map: &ModuleMap, n: usize, lambda: &[usize]) -> Result<YExactness> {
    if map.source().side() != Side::Right {
        return Err(Error::BadParams("the check takes a map of right modules".into()));
    }
    if lambda.iter().sum::<usize>() != n || lambda.contains(&0) {
        return Err(Error::BadParams(format!("{lambda:?} is not a partition of {n}")));
    }
    let c = map.source().monoid();
    let src = build_complex(c, map.source(), n, Direction::Homological)?;
    let tgt = build_complex(c, map.target(), n, Direction::Homological)?;
    let gens: Vec<PointedMap> = young_generators(lambda)
        .iter()
        .map(|p| PointedMap::from_permutation(p.images()))
        .collect();
    let z1 = invariants(&src, n, &gens)?;
    let z2 = invariants(&tgt, n, &gens)?;

    let mut entries = Vec::new();
    for t in 0..src.num_tuples(n) {
        let p = src.tuple_product(n, t);
        let (r0, c0) = (tgt.block_offset(n, t), src.block_offset(n, t));
        entries.extend(map.component(p).triplets().map(|(i, j, v)| (r0 + i, c0 + j, v.clone())));
    }
    let phi = IntMatrix::from_triplets(tgt.dim(n), src.dim(n), entries);
    let image = IntMatrix::hstack(&[&(&phi * &z1), &tgt.relations(n)]);
    let solver = LatticeSolver::new(&image);
    let witness = z2
        .columns()
        .iter()
        .map(|col| densify(col, z2.rows()))
        .find(|v| !solver.contains(v));
    Ok(YExactness {
        pass: witness.is_none(),
        source_invariants: z1.cols(),
        target_invariants: z2.cols(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::partitions;
    use crate::linalg::Ring;
    use crate::module::{jstar, jstar_mod, KCModule, QuotientModule};
    use crate::monoid::cyclic_group;

    #[test]
    fn reduction_mod_two_is_y_exact() {
        let z2 = cyclic_group(2).unwrap();
        let triv = KCModule::trivial(&z2, Ring::Z);
        let z: QuotientModule = jstar(&triv, Side::Right).into();
        let p = ModuleMap::projection(&z, &jstar_mod(&triv, Side::Right, 2).unwrap()).unwrap();
        for n in 1..=4 {
            for lambda in partitions(n) {
                let r = y_exactness_check(&p, n, &lambda).unwrap();
                assert!(r.pass, "{lambda:?}");
            }
        }
        let id = ModuleMap::identity(&z);
        assert!(y_exactness_check(&id, 3, &[2, 1]).unwrap().pass);
    }

    #[test]
    fn doubling_fails_with_witness() {
        let z2 = cyclic_group(2).unwrap();
        let z: QuotientModule = jstar(&KCModule::trivial(&z2, Ring::Z), Side::Right).into();
        let r = y_exactness_check(&ModuleMap::scalar(&z, 2), 2, &[2]).unwrap();
        assert!(!r.pass);
        assert!(r.witness.is_some());
        assert!(y_exactness_check(&ModuleMap::scalar(&z, 2), 2, &[1]).is_err());
    }
}
