//! `S_n`-orbits of tuples. Permutations preserve the product of a tuple and
//! act by the identity on coefficients, so any operator built from the
//! action is block diagonal: one `|O| × |O|` block per orbit, tensored with
//! the identity on the coefficient block of the orbit's product.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::complex::{Direction, GammaChainComplex};
use super::sym::Perm;
use crate::linalg::{IntMatrix, LatticeSolver, SparseVec};

pub(crate) struct Orbits {
    /// Tuple indices of each orbit, ascending; orbits ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// `tuple → (orbit, position within orbit)`.
    pub position: Vec<(usize, usize)>,
}

impl Orbits {
    pub fn new(cx: &GammaChainComplex, n: usize) -> Orbits {
        let mut by_key: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for t in 0..cx.num_tuples(n) {
            let mut key = cx.tuple(n, t);
            key.sort_unstable();
            by_key.entry(key).or_default().push(t);
        }
        let mut orbits: Vec<Vec<usize>> = by_key.into_values().collect();
        orbits.sort_by_key(|o| o[0]);
        let mut position = vec![(0, 0); cx.num_tuples(n)];
        for (k, o) in orbits.iter().enumerate() {
            for (p, &t) in o.iter().enumerate() {
                position[t] = (k, p);
            }
        }
        Orbits { orbits, position }
    }

    /// The block of `Σ c_σ σ` on orbit `k`, in the complex's direction
    /// (push-forward, or its transpose on cochains).
    pub fn block(&self, cx: &GammaChainComplex, n: usize, k: usize, terms: &[(Perm, BigInt)]) -> IntMatrix {
        let orbit = &self.orbits[k];
        let mut entries = Vec::new();
        for (p, &t) in orbit.iter().enumerate() {
            let digits = cx.tuple(n, t);
            for (sigma, c) in terms {
                let q = self.position[cx.tuple_index(&sigma.permute(&digits))].1;
                match cx.direction() {
                    Direction::Homological => entries.push((q, p, c.clone())),
                    Direction::Cohomological => entries.push((p, q, c.clone())),
                }
            }
        }
        IntMatrix::from_triplets(orbit.len(), orbit.len(), entries)
    }
}

/// A subgroup of one degree that splits along orbits: `⊕_O V_O ⊗ ℤ^{r_O}`.
pub(crate) struct OrbitLattice {
    n: usize,
    /// Basis (columns) of `V_O` for every orbit.
    blocks: Vec<IntMatrix>,
    solvers: Vec<LatticeSolver>,
    /// First global column of every orbit.
    start: Vec<usize>,
    /// Global basis, columns ordered by orbit, coefficient index, block column.
    basis: IntMatrix,
}

/// `⊕_O V_O ⊗ ℤ^{r_O}` as global columns, ordered by orbit, coefficient
/// index, block column; also returns the first column of every orbit.
pub(crate) fn spread(cx: &GammaChainComplex, n: usize, orbits: &Orbits, blocks: &[IntMatrix]) -> (IntMatrix, Vec<usize>) {
    let mut start = Vec::with_capacity(blocks.len() + 1);
    let mut entries = Vec::new();
    let mut col = 0;
    for (k, block) in blocks.iter().enumerate() {
        start.push(col);
        let orbit = &orbits.orbits[k];
        let r = cx.coefficients().cover().rank(cx.tuple_product(n, orbit[0]));
        for j in 0..r {
            for (p, q, v) in block.triplets() {
                entries.push((cx.block_offset(n, orbit[p]) + j, col + q, v.clone()));
            }
            col += block.cols();
        }
    }
    start.push(col);
    (IntMatrix::from_triplets(cx.dim(n), col, entries), start)
}

impl OrbitLattice {
    pub fn new(cx: &GammaChainComplex, n: usize, orbits: &Orbits, blocks: Vec<IntMatrix>) -> OrbitLattice {
        let (basis, start) = spread(cx, n, orbits, &blocks);
        let solvers = blocks.iter().map(LatticeSolver::new).collect();
        OrbitLattice {
            n,
            basis,
            blocks,
            solvers,
            start,
        }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v` in the lattice basis, if `v` lies in the lattice.
    pub fn coordinates(&self, cx: &GammaChainComplex, orbits: &Orbits, v: &SparseVec) -> Option<SparseVec> {
        let mut pieces: BTreeMap<(usize, usize), Vec<BigInt>> = BTreeMap::new();
        for (idx, x) in v {
            let (digits, j) = cx.basis_element(self.n, *idx);
            let (k, p) = orbits.position[cx.tuple_index(&digits)];
            let len = orbits.orbits[k].len();
            pieces.entry((k, j)).or_insert_with(|| vec![BigInt::from(0); len])[p] = x.clone();
        }
        let mut out = Vec::new();
        for ((k, j), piece) in pieces {
            let y = self.solvers[k].solve(&piece)?;
            let base = self.start[k] + j * self.blocks[k].cols();
            out.extend(
                y.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != BigInt::from(0))
                    .map(|(q, c)| (base + q, c)),
            );
        }
        out.sort_by_key(|e| e.0);
        Some(out)
    }
}
