use num_bigint::BigInt;

use super::presented::PresentedHCModule;
use super::quotient::QuotientModule;
use super::tabulated::Side;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, preimage, subquotient, FgAbGroup, IntMatrix};
use crate::monoid::FiniteCommMonoid;

/// Solutions of a linear congruence system, as a group and a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionGroup {
    /// Solutions modulo the trivial ones (those valued in the relations).
    pub group: FgAbGroup,
    /// Basis (columns) of the lattice of integer solutions in the cover.
    pub basis: IntMatrix,
}

/// Solve `L x ∈ span(targets)` and divide by `span(trivial)`.
fn solution_group(l: &IntMatrix, targets: &IntMatrix, trivial: &IntMatrix) -> Result<SolutionGroup> {
    if targets.is_zero() && trivial.is_zero() {
        let basis = kernel_basis(l);
        return Ok(SolutionGroup {
            group: FgAbGroup::free(basis.cols()),
            basis,
        });
    }
    let basis = preimage(l, targets);
    let group = subquotient(&basis, trivial)?;
    Ok(SolutionGroup { group, basis })
}

/// Block offsets of `⊕_a F(a)` in element order.
fn offsets(ranks: &[usize]) -> Vec<usize> {
    let mut off = vec![0; ranks.len() + 1];
    for (a, r) in ranks.iter().enumerate() {
        off[a + 1] = off[a] + r;
    }
    off
}

/// `Der(C, M)`: families `δ(a) ∈ M(a)` with `δ(ab) = a_*δ(b) + b_*δ(a)`.
///
/// For `M = F/R` the equations are solved in `F` modulo `R(ab)`, and the
/// result is taken modulo the families valued in `R`.
pub fn derivations(c: &FiniteCommMonoid, m: &QuotientModule) -> Result<SolutionGroup> {
    if m.side() != Side::Left || m.monoid() != c {
        return Err(Error::BadParams("derivations take a left module over the same monoid".into()));
    }
    let f = m.cover();
    let off = offsets(f.ranks());
    let mut entries = Vec::new();
    let mut rel_blocks = Vec::new();
    let mut row = 0;
    for a in c.elements() {
        for b in c.elements() {
            let ab = c.mul(a, b);
            for i in 0..f.rank(ab) {
                entries.push((row + i, off[ab] + i, BigInt::from(1)));
            }
            for (i, j, v) in f.act(a, b).triplets() {
                entries.push((row + i, off[b] + j, -v.clone()));
            }
            for (i, j, v) in f.act(b, a).triplets() {
                entries.push((row + i, off[a] + j, -v.clone()));
            }
            rel_blocks.push(m.relations(ab).clone());
            row += f.rank(ab);
        }
    }
    let l = IntMatrix::from_triplets(row, off[c.size()], entries);
    let targets = IntMatrix::block_diag(&rel_blocks.iter().collect::<Vec<_>>());
    let trivial_blocks: Vec<&IntMatrix> = c.elements().map(|a| m.relations(a)).collect();
    solution_group(&l, &targets, &IntMatrix::block_diag(&trivial_blocks))
}

/// `Hom_{H(C)}(P, M)` for a presented left module `P`: images `φ(g) ∈ M(deg g)`
/// with `Σ coeff·c_*φ(g) = 0` in `M(d)` for every relation.
pub fn hom_from_presented(p: &PresentedHCModule, m: &QuotientModule) -> Result<SolutionGroup> {
    if p.side() != Side::Left || m.side() != Side::Left || p.monoid() != m.monoid() {
        return Err(Error::BadParams("Hom from a presented left module into a left module".into()));
    }
    let f = m.cover();
    let degrees: Vec<usize> = p.generators().iter().map(|(_, a)| *a).collect();
    let off = offsets(&degrees.iter().map(|&a| f.rank(a)).collect::<Vec<_>>());
    let mut columns_by_row = Vec::new();
    let mut rel_blocks = Vec::new();
    let mut row = 0;
    for r in p.relations() {
        for (g, t, v) in &r.terms {
            for (i, j, x) in f.act(*t, degrees[*g]).triplets() {
                columns_by_row.push((row + i, off[*g] + j, x * v));
            }
        }
        rel_blocks.push(m.relations(r.degree).clone());
        row += f.rank(r.degree);
    }
    let l = IntMatrix::from_triplets(row, off[degrees.len()], columns_by_row);
    let targets = IntMatrix::block_diag(&rel_blocks.iter().collect::<Vec<_>>());
    let trivial_blocks: Vec<&IntMatrix> = degrees.iter().map(|&a| m.relations(a)).collect();
    let trivial = if trivial_blocks.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::block_diag(&trivial_blocks)
    };
    solution_group(&l, &targets, &trivial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;
    use crate::module::{jstar, jstar_mod, omega, KCModule};
    use crate::monoid::{cyclic_group, trivial_monoid};

    #[test]
    fn small_derivation_groups() {
        let t = trivial_monoid();
        let m = jstar(&KCModule::regular(&t, Ring::Z), Side::Left);
        assert!(derivations(&t, &m.into()).unwrap().group.is_trivial());
        let z2 = cyclic_group(2).unwrap();
        let triv = KCModule::trivial(&z2, Ring::Z);
        let d = derivations(&z2, &jstar(&triv, Side::Left).into()).unwrap();
        assert!(d.group.is_trivial());
        let d4 = derivations(&z2, &jstar_mod(&triv, Side::Left, 4).unwrap()).unwrap();
        assert_eq!(d4.group, FgAbGroup::cyclic(2));
    }

    #[test]
    fn universal_property_on_z2() {
        let z2 = cyclic_group(2).unwrap();
        let o = omega(&z2);
        for m in [
            jstar(&KCModule::regular(&z2, Ring::Z), Side::Left).into(),
            jstar_mod(&KCModule::trivial(&z2, Ring::Z), Side::Left, 4).unwrap(),
            jstar_mod(&KCModule::trivial(&z2, Ring::Z), Side::Left, 2).unwrap(),
        ] {
            let der = derivations(&z2, &m).unwrap().group;
            let hom = hom_from_presented(&o, &m).unwrap().group;
            assert_eq!(der, hom);
        }
    }
}
