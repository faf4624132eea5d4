use num_bigint::BigInt;

use super::quotient::QuotientModule;
use super::tabulated::Side;
use crate::error::{Error, Result};
use crate::linalg::{densify, IntMatrix, LatticeSolver};

/// A natural map of modules, given on covers by one matrix per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: QuotientModule,
    target: QuotientModule,
    components: Vec<IntMatrix>,
}

fn inside(l: &IntMatrix, m: &IntMatrix) -> bool {
    if m.is_zero() {
        return true;
    }
    let solver = LatticeSolver::new(l);
    m.columns().iter().all(|c| solver.contains(&densify(c, m.rows())))
}

impl ModuleMap {
    /// Checks shapes, naturality on the covers, and that relations map
    /// into relations.
    pub fn new(source: QuotientModule, target: QuotientModule, components: Vec<IntMatrix>) -> Result<Self> {
        if source.side() != target.side() || source.monoid() != target.monoid() {
            return Err(Error::BadParams("module map between incompatible modules".into()));
        }
        let c = source.monoid().clone();
        if components.len() != c.size() {
            return Err(Error::BadParams("one component per element".into()));
        }
        let (f, g) = (source.cover(), target.cover());
        for a in c.elements() {
            if components[a].shape() != (g.rank(a), f.rank(a)) {
                return Err(Error::BadParams(format!("component at {a} has the wrong shape")));
            }
        }
        for x in c.elements() {
            for a in c.elements() {
                let ca = c.mul(x, a);
                let natural = match source.side() {
                    Side::Left => &components[ca] * f.act(x, a) == g.act(x, a) * &components[a],
                    Side::Right => &components[a] * f.act(x, a) == g.act(x, a) * &components[ca],
                };
                if !natural {
                    return Err(Error::BadParams(format!("not natural at ({x}, {a})")));
                }
            }
        }
        for a in c.elements() {
            if !inside(target.relations(a), &(&components[a] * source.relations(a))) {
                return Err(Error::BadParams(format!("relations at {a} do not map to relations")));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(m: &QuotientModule) -> Self {
        ModuleMap::scalar(m, 1)
    }

    /// Multiplication by `k`.
    pub fn scalar(m: &QuotientModule, k: i64) -> Self {
        let components = m
            .monoid()
            .elements()
            .map(|a| IntMatrix::identity(m.cover().rank(a)).scale(&BigInt::from(k)))
            .collect();
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            components,
        }
    }

    /// The identity of covers `F/R → F/R'` for relations `R ⊆ R'`.
    pub fn projection(source: &QuotientModule, target: &QuotientModule) -> Result<Self> {
        if source.cover() != target.cover() {
            return Err(Error::BadParams("projection between different covers".into()));
        }
        let components = source
            .monoid()
            .elements()
            .map(|a| IntMatrix::identity(source.cover().rank(a)))
            .collect();
        ModuleMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &QuotientModule {
        &self.source
    }

    pub fn target(&self) -> &QuotientModule {
        &self.target
    }

    pub fn component(&self, a: usize) -> &IntMatrix {
        &self.components[a]
    }

    /// Every component is onto modulo the target relations.
    pub fn is_surjective(&self) -> bool {
        self.source.monoid().elements().all(|a| {
            let span = IntMatrix::hstack(&[&self.components[a], self.target.relations(a)]);
            inside(&span, &IntMatrix::identity(self.target.cover().rank(a)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;
    use crate::module::{jstar, jstar_mod, KCModule};
    use crate::monoid::cyclic_group;

    #[test]
    fn reduction_mod_two() {
        let z2 = cyclic_group(2).unwrap();
        let triv = KCModule::trivial(&z2, Ring::Z);
        let z: QuotientModule = jstar(&triv, Side::Right).into();
        let z_2 = jstar_mod(&triv, Side::Right, 2).unwrap();
        let p = ModuleMap::projection(&z, &z_2).unwrap();
        assert!(p.is_surjective());
        assert!(!ModuleMap::scalar(&z, 2).is_surjective());
        assert!(ModuleMap::projection(&z_2, &z).is_err());
    }
}
