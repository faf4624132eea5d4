use std::fmt;

use super::kc::KCModule;
use super::tabulated::{jstar, pullback, ModuleViolation, Side, TabulatedHCModule};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_group, lattice_basis, FgAbGroup, IntMatrix, LatticeSolver, densify};
use crate::monoid::{FiniteCommMonoid, MonoidHom};

/// A module `F / R` with `F` tabulated (free values) and `R(a) ⊆ F(a)`
/// given by generating columns, stable under the structure maps. Values
/// may have torsion, e.g. the constant module `ℤ/4`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientModule {
    cover: TabulatedHCModule,
    relations: Vec<IntMatrix>,
}

impl QuotientModule {
    /// Validated: shapes match and every structure map sends `R` into `R`.
    pub fn new(cover: TabulatedHCModule, relations: Vec<IntMatrix>) -> Result<Self> {
        let q = QuotientModule::unchecked(cover, relations)?;
        let bad = q.violations();
        if bad.is_empty() {
            Ok(q)
        } else {
            Err(Error::InvalidModule(bad))
        }
    }

    pub(crate) fn unchecked(cover: TabulatedHCModule, relations: Vec<IntMatrix>) -> Result<Self> {
        let c = cover.monoid();
        if relations.len() != c.size() || c.elements().any(|a| relations[a].rows() != cover.rank(a)) {
            return Err(Error::BadParams("relations must be columns in each value of the cover".into()));
        }
        Ok(QuotientModule { cover, relations })
    }

    fn violations(&self) -> Vec<ModuleViolation> {
        let c = self.cover.monoid();
        let solvers: Vec<LatticeSolver> = self.relations.iter().map(LatticeSolver::new).collect();
        let mut bad = Vec::new();
        for t in c.elements() {
            for a in c.elements() {
                let ta = c.mul(t, a);
                let (src, dst) = match self.cover.side() {
                    Side::Left => (a, ta),
                    Side::Right => (ta, a),
                };
                let image = self.cover.act(t, a) * &self.relations[src];
                let rows = image.rows();
                if image.columns().iter().any(|col| !solvers[dst].contains(&densify(col, rows))) {
                    bad.push(ModuleViolation::RelationsNotPreserved { c: t, a });
                }
            }
        }
        bad
    }

    /// A torsion-free module, no relations.
    pub fn free(cover: TabulatedHCModule) -> Self {
        let relations = cover
            .ranks()
            .iter()
            .map(|&r| IntMatrix::zeros(r, 0))
            .collect();
        QuotientModule { cover, relations }
    }

    /// `F / kF`.
    pub fn mod_k(cover: TabulatedHCModule, k: u64) -> Result<Self> {
        if k == 0 {
            return Ok(QuotientModule::free(cover));
        }
        let relations = cover
            .ranks()
            .iter()
            .map(|&r| IntMatrix::identity(r).scale(&k.into()))
            .collect();
        QuotientModule::unchecked(cover, relations)
    }

    pub fn cover(&self) -> &TabulatedHCModule {
        &self.cover
    }

    pub fn side(&self) -> Side {
        self.cover.side()
    }

    pub fn monoid(&self) -> &FiniteCommMonoid {
        self.cover.monoid()
    }

    pub fn relations(&self, a: usize) -> &IntMatrix {
        &self.relations[a]
    }

    pub fn has_relations(&self) -> bool {
        self.relations.iter().any(|r| !r.is_zero())
    }

    /// `F(a) / R(a)`.
    pub fn value(&self, a: usize) -> FgAbGroup {
        cokernel_group(&self.relations[a])
    }

    pub fn values(&self) -> Vec<FgAbGroup> {
        self.monoid().elements().map(|a| self.value(a)).collect()
    }

    /// Relations replaced by a basis of the lattice they generate.
    pub fn reduced(&self) -> QuotientModule {
        QuotientModule {
            cover: self.cover.clone(),
            relations: self.relations.iter().map(lattice_basis).collect(),
        }
    }

    pub fn direct_sum(&self, other: &QuotientModule) -> Result<QuotientModule> {
        let cover = self.cover.direct_sum(&other.cover)?;
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
            .collect();
        Ok(QuotientModule { cover, relations })
    }

    pub fn pullback(&self, f: &MonoidHom) -> Result<QuotientModule> {
        let cover = pullback(f, &self.cover)?;
        let relations = f
            .source()
            .elements()
            .map(|a| self.relations[f.apply(a)].clone())
            .collect();
        Ok(QuotientModule { cover, relations })
    }
}

impl From<TabulatedHCModule> for QuotientModule {
    fn from(m: TabulatedHCModule) -> Self {
        QuotientModule::free(m)
    }
}

impl fmt::Debug for QuotientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.values().iter().map(ToString::to_string).collect();
        write!(f, "QuotientModule({}, values=[{}])", self.side().as_str(), values.join(", "))
    }
}

/// `j^*(A ⊗ ℤ/k)`: the constant family `A/kA`.
pub fn jstar_mod(a: &KCModule, side: Side, k: u64) -> Result<QuotientModule> {
    QuotientModule::mod_k(jstar(a, side), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;
    use crate::monoid::cyclic_group;

    #[test]
    fn constant_z_mod_4() {
        let z2 = cyclic_group(2).unwrap();
        let q = jstar_mod(&KCModule::trivial(&z2, Ring::Z), Side::Left, 4).unwrap();
        assert_eq!(q.values(), vec![FgAbGroup::cyclic(4); 2]);
        assert!(q.violations().is_empty());
    }

    #[test]
    fn relations_must_be_stable() {
        let z2 = cyclic_group(2).unwrap();
        let cover = jstar(&KCModule::regular(&z2, Ring::Z), Side::Left);
        // Span of e_0 alone is not stable under the swap.
        let rel = IntMatrix::from_rows(&[vec![1], vec![0]], 1);
        assert!(QuotientModule::new(cover.clone(), vec![rel.clone(), rel]).is_err());
        let diag = IntMatrix::from_rows(&[vec![1], vec![1]], 1);
        let q = QuotientModule::new(cover, vec![diag.clone(), diag]).unwrap();
        assert_eq!(q.value(0), FgAbGroup::free(1));
    }
}
