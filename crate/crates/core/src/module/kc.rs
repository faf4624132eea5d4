use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rank, IntMatrix, Ring};
use crate::monoid::FiniteCommMonoid;

/// Largest monoid for which characters are searched exhaustively.
const CHARACTER_SEARCH_LIMIT: usize = 20;

/// A module over the monoid algebra `K[C]`, `K ∈ {ℤ, ℚ}`.
///
/// Actions are integer matrices in both cases; over ℚ they are read as
/// rational matrices, which covers every module the engine constructs.
#[derive(Clone, PartialEq, Eq)]
pub struct KCModule {
    monoid: FiniteCommMonoid,
    ring: Ring,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl KCModule {
    /// Validated constructor: `action[1] = I`, `action[ab] = action[a]·action[b]`.
    /// (Commutativity of the actions follows from the second law.)
    pub fn new(monoid: FiniteCommMonoid, ring: Ring, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != monoid.size() || action.iter().any(|m| m.shape() != (rank, rank)) {
            return Err(Error::BadParams(format!(
                "a rank-{rank} K[C]-module needs {} square actions of size {rank}",
                monoid.size()
            )));
        }
        if !action[monoid.identity()].is_identity() {
            return Err(Error::BadParams("the identity must act trivially".into()));
        }
        for a in monoid.elements() {
            for b in monoid.elements() {
                if action[monoid.mul(a, b)] != &action[a] * &action[b] {
                    return Err(Error::BadParams(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(KCModule {
            monoid,
            ring,
            rank,
            action,
        })
    }

    pub fn monoid(&self) -> &FiniteCommMonoid {
        &self.monoid
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, c: usize) -> &IntMatrix {
        &self.action[c]
    }

    pub fn with_ring(&self, ring: Ring) -> KCModule {
        KCModule {
            ring,
            ..self.clone()
        }
    }

    /// `K` with every element acting as the identity.
    pub fn trivial(c: &FiniteCommMonoid, ring: Ring) -> KCModule {
        KCModule {
            monoid: c.clone(),
            ring,
            rank: 1,
            action: vec![IntMatrix::identity(1); c.size()],
        }
    }

    /// `K[C]` itself, `c` acting by `e_x ↦ e_{cx}`.
    pub fn regular(c: &FiniteCommMonoid, ring: Ring) -> KCModule {
        let m = c.size();
        let action = c
            .elements()
            .map(|t| IntMatrix::from_triplets(m, m, c.elements().map(|x| (c.mul(t, x), x, 1.into()))))
            .collect();
        KCModule {
            monoid: c.clone(),
            ring,
            rank: m,
            action,
        }
    }

    /// Rank one with `c` acting by `chi[c] ∈ {±1}`.
    pub fn character(c: &FiniteCommMonoid, ring: Ring, chi: &[i64]) -> Result<KCModule> {
        if chi.len() != c.size() || chi.iter().any(|v| v.abs() != 1) {
            return Err(Error::BadParams("a character takes values ±1 on every element".into()));
        }
        let action = chi.iter().map(|&v| IntMatrix::from_rows(&[vec![v]], 1)).collect();
        KCModule::new(c.clone(), ring, 1, action)
    }

    /// The sign module: the first nontrivial `±1`-character, ordering sign
    /// vectors lexicographically with `+1` before `−1`. For `ℤ/k` with k
    /// even this is `t ↦ (−1)^t`.
    pub fn sign(c: &FiniteCommMonoid, ring: Ring) -> Result<KCModule> {
        let chi = first_nontrivial_character(c)
            .ok_or_else(|| Error::BadParams("the monoid has no nontrivial sign character".into()))?;
        KCModule::character(c, ring, &chi)
    }

    /// `A ⊕ B`.
    pub fn direct_sum(&self, other: &KCModule) -> Result<KCModule> {
        if self.monoid != other.monoid {
            return Err(Error::BadParams("direct sum over different monoids".into()));
        }
        Ok(KCModule {
            monoid: self.monoid.clone(),
            ring: self.ring,
            rank: self.rank + other.rank,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
                .collect(),
        })
    }
}

impl fmt::Debug for KCModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KCModule({}, rank {})", self.ring.as_str(), self.rank)
    }
}

fn first_nontrivial_character(c: &FiniteCommMonoid) -> Option<Vec<i64>> {
    let m = c.size();
    if m > CHARACTER_SEARCH_LIMIT {
        return None;
    }
    // Bit i set means chi(element m-1-i) = −1, so counting up enumerates sign
    // vectors in lexicographic order.
    (1u64..(1 << m)).find_map(|bits| {
        let chi: Vec<i64> = (0..m)
            .map(|x| if bits >> (m - 1 - x) & 1 == 1 { -1 } else { 1 })
            .collect();
        let ok = chi[c.identity()] == 1
            && c.elements()
                .all(|a| c.elements().all(|b| chi[c.mul(a, b)] == chi[a] * chi[b]));
        ok.then_some(chi)
    })
}

/// Dimension over ℚ of `Hom_{K[C]}(A, B)`: matrices `Φ` with
/// `Φ·A(c) = B(c)·Φ` for all `c`.
pub fn kc_hom_rank(a: &KCModule, b: &KCModule) -> Result<usize> {
    if a.monoid != b.monoid {
        return Err(Error::BadParams("Hom between modules over different monoids".into()));
    }
    let (ra, rb) = (a.rank, b.rank);
    let var = |i: usize, k: usize| i * ra + k;
    let mut entries = Vec::new();
    let mut row = 0;
    for t in a.monoid.elements() {
        let (at, bt) = (&a.action[t], &b.action[t]);
        for i in 0..rb {
            for j in 0..ra {
                for k in 0..ra {
                    let v = at.get(k, j);
                    if v != 0.into() {
                        entries.push((row, var(i, k), v));
                    }
                }
                for k in 0..rb {
                    let v = bt.get(i, k);
                    if v != 0.into() {
                        entries.push((row, var(k, j), -v));
                    }
                }
                row += 1;
            }
        }
    }
    let system = IntMatrix::from_triplets(row, ra * rb, entries);
    Ok(ra * rb - rank(&system))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{cyclic_group, product_monoid, semilattice_chain};

    #[test]
    fn sign_characters() {
        let z2 = cyclic_group(2).unwrap();
        let s = KCModule::sign(&z2, Ring::Z).unwrap();
        assert_eq!(s.action(1), &IntMatrix::from_rows(&[vec![-1]], 1));
        let z4 = cyclic_group(4).unwrap();
        let s4 = KCModule::sign(&z4, Ring::Z).unwrap();
        let signs: Vec<_> = (0..4).map(|t| s4.action(t).get(0, 0)).collect();
        assert_eq!(signs, vec![1.into(), (-1).into(), 1.into(), (-1).into()]);
        let k = product_monoid(&z2, &z2).monoid;
        let sk = KCModule::sign(&k, Ring::Z).unwrap();
        let signs: Vec<_> = (0..4).map(|t| sk.action(t).get(0, 0)).collect();
        assert_eq!(signs, vec![1.into(), 1.into(), (-1).into(), (-1).into()]);
        assert!(KCModule::sign(&semilattice_chain(1).unwrap(), Ring::Z).is_err());
        assert!(KCModule::sign(&cyclic_group(3).unwrap(), Ring::Z).is_err());
    }

    #[test]
    fn regular_module_of_z2_swaps() {
        let z2 = cyclic_group(2).unwrap();
        let r = KCModule::regular(&z2, Ring::Z);
        assert_eq!(r.action(1), &IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2));
        // End of the regular module is K[C] itself.
        assert_eq!(kc_hom_rank(&r, &r).unwrap(), 2);
        let s = KCModule::sign(&z2, Ring::Q).unwrap();
        assert_eq!(kc_hom_rank(&r, &s).unwrap(), 1);
        assert_eq!(kc_hom_rank(&KCModule::trivial(&z2, Ring::Q), &s).unwrap(), 0);
    }

    #[test]
    fn non_multiplicative_action_is_rejected() {
        let z2 = cyclic_group(2).unwrap();
        let bad = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![2]], 1)];
        assert!(KCModule::new(z2, Ring::Z, 1, bad).is_err());
    }
}
