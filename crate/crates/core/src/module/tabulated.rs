use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::kc::KCModule;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Ring};
use crate::monoid::{product_monoid, FiniteCommMonoid, MonoidHom};

/// Variance of a module over `H(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Covariant: `c_*: M(a) → M(ca)`.
    Left,
    /// Contravariant: `c^*: N(ca) → N(a)`.
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::BadParams(format!("unknown side {s:?}"))),
        }
    }
}

/// A failed functor law with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law")]
pub enum ModuleViolation {
    BadShape { c: usize, a: usize },
    BadIdentity { a: usize },
    NotFunctorial { c1: usize, c2: usize, a: usize },
    RelationsNotPreserved { c: usize, a: usize },
}

/// An `H(C)`-module given by free groups `ℤ^{r_a}` and structure matrices.
///
/// `act[c][a]` is `c_*: M(a) → M(ca)` (shape `r_{ca} × r_a`) for left
/// modules and `c^*: N(ca) → N(a)` (shape `r_a × r_{ca}`) for right ones.
#[derive(Clone, PartialEq, Eq)]
pub struct TabulatedHCModule {
    side: Side,
    monoid: FiniteCommMonoid,
    ranks: Vec<usize>,
    act: Vec<Vec<IntMatrix>>,
}

impl TabulatedHCModule {
    /// Validated constructor.
    pub fn new(
        side: Side,
        monoid: FiniteCommMonoid,
        ranks: Vec<usize>,
        act: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        let m = TabulatedHCModule::from_parts(side, monoid, ranks, act)?;
        let bad = validate_module(&m);
        if bad.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(bad))
        }
    }

    /// Constructor that only checks array sizes; callers guarantee the laws.
    pub(crate) fn from_parts(
        side: Side,
        monoid: FiniteCommMonoid,
        ranks: Vec<usize>,
        act: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        let n = monoid.size();
        if ranks.len() != n || act.len() != n || act.iter().any(|row| row.len() != n) {
            return Err(Error::BadParams(format!(
                "module data must be indexed by the {n} monoid elements"
            )));
        }
        Ok(TabulatedHCModule {
            side,
            monoid,
            ranks,
            act,
        })
    }

    pub(crate) fn from_fn(
        side: Side,
        monoid: &FiniteCommMonoid,
        ranks: Vec<usize>,
        mut f: impl FnMut(usize, usize) -> IntMatrix,
    ) -> Self {
        let act = monoid
            .elements()
            .map(|c| monoid.elements().map(|a| f(c, a)).collect())
            .collect();
        TabulatedHCModule {
            side,
            monoid: monoid.clone(),
            ranks,
            act,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn monoid(&self) -> &FiniteCommMonoid {
        &self.monoid
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// The structure matrix stored for the pair `(c, a)`.
    pub fn act(&self, c: usize, a: usize) -> &IntMatrix {
        &self.act[c][a]
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `c_*: M(a) → M(ca)` or `c^*: N(ca) → N(a)` expected shape.
    fn expected_shape(&self, c: usize, a: usize) -> (usize, usize) {
        let ca = self.monoid.mul(c, a);
        match self.side {
            Side::Left => (self.ranks[ca], self.ranks[a]),
            Side::Right => (self.ranks[a], self.ranks[ca]),
        }
    }

    /// The zero module.
    pub fn zero(side: Side, monoid: &FiniteCommMonoid) -> Self {
        TabulatedHCModule::from_fn(side, monoid, vec![0; monoid.size()], |_, _| {
            IntMatrix::zeros(0, 0)
        })
    }

    /// Constant module `ℤ^r` with identity structure maps.
    pub fn constant(side: Side, monoid: &FiniteCommMonoid, r: usize) -> Self {
        TabulatedHCModule::from_fn(side, monoid, vec![r; monoid.size()], |_, _| {
            IntMatrix::identity(r)
        })
    }

    /// Direct sum, blocks in argument order.
    pub fn direct_sum(&self, other: &TabulatedHCModule) -> Result<Self> {
        if self.side != other.side || self.monoid != other.monoid {
            return Err(Error::BadParams("direct sum of incompatible modules".into()));
        }
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        Ok(TabulatedHCModule::from_fn(self.side, &self.monoid, ranks, |c, a| {
            IntMatrix::block_diag(&[&self.act[c][a], &other.act[c][a]])
        }))
    }
}

impl fmt::Debug for TabulatedHCModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TabulatedHCModule({}, ranks={:?})", self.side.as_str(), self.ranks)
    }
}

/// Check both functor laws exhaustively; returns every failing witness.
pub fn validate_module(m: &TabulatedHCModule) -> Vec<ModuleViolation> {
    let c = &m.monoid;
    let mut bad = Vec::new();
    for x in c.elements() {
        for a in c.elements() {
            if m.act[x][a].shape() != m.expected_shape(x, a) {
                bad.push(ModuleViolation::BadShape { c: x, a });
            }
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    let one = c.identity();
    for a in c.elements() {
        if !m.act[one][a].is_identity() {
            bad.push(ModuleViolation::BadIdentity { a });
        }
    }
    for c1 in c.elements() {
        for c2 in c.elements() {
            let c12 = c.mul(c1, c2);
            for a in c.elements() {
                let c2a = c.mul(c2, a);
                let composite = match m.side {
                    Side::Left => &m.act[c1][c2a] * &m.act[c2][a],
                    Side::Right => &m.act[c2][a] * &m.act[c1][c2a],
                };
                if composite != m.act[c12][a] {
                    bad.push(ModuleViolation::NotFunctorial { c1, c2, a });
                }
            }
        }
    }
    bad
}

/// Matrix sending basis vector `j` of a `cols`-dimensional space to basis
/// vector `f(j)` of a `rows`-dimensional one.
pub(crate) fn routing_matrix(rows: usize, cols: usize, f: impl Fn(usize) -> usize) -> IntMatrix {
    IntMatrix::from_triplets(rows, cols, (0..cols).map(|j| (f(j), j, 1.into())))
}

/// The representable modules: left `C^a(x) = ℤ[(x:a)]`, where `c'` sends
/// the basis element `c` to `c'c`; right `C_a(x) = ℤ[(a:x)]`, where
/// `c'^*: C_a(c'x) → C_a(x)` sends `c` to `c'c`.
pub fn std_projective(c: &FiniteCommMonoid, a: usize, side: Side) -> TabulatedHCModule {
    let basis: Vec<Vec<usize>> = c
        .elements()
        .map(|x| match side {
            Side::Left => c.quotient_set(x, a),
            Side::Right => c.quotient_set(a, x),
        })
        .collect();
    let position = |list: &Vec<usize>, v: usize| list.binary_search(&v).expect("basis closed under the action");
    let ranks = basis.iter().map(Vec::len).collect();
    TabulatedHCModule::from_fn(side, c, ranks, |t, x| {
        let tx = c.mul(t, x);
        match side {
            Side::Left => routing_matrix(basis[tx].len(), basis[x].len(), |j| {
                position(&basis[tx], c.mul(t, basis[x][j]))
            }),
            Side::Right => routing_matrix(basis[x].len(), basis[tx].len(), |j| {
                position(&basis[x], c.mul(t, basis[tx][j]))
            }),
        }
    })
}

/// `f^*(M)(a) = M(f(a))`.
pub fn pullback(f: &MonoidHom, m: &TabulatedHCModule) -> Result<TabulatedHCModule> {
    if f.target() != m.monoid() {
        return Err(Error::BadParams("pullback along a map into a different monoid".into()));
    }
    let src = f.source();
    let ranks = src.elements().map(|a| m.rank(f.apply(a))).collect();
    Ok(TabulatedHCModule::from_fn(m.side, src, ranks, |c, a| {
        m.act[f.apply(c)][f.apply(a)].clone()
    }))
}

/// External tensor product over `C_1 × C_2` (row-major pairs and bases).
pub fn boxtimes(m1: &TabulatedHCModule, m2: &TabulatedHCModule) -> Result<TabulatedHCModule> {
    if m1.side != m2.side {
        return Err(Error::BadParams("⊠ needs modules of the same side".into()));
    }
    let p = product_monoid(&m1.monoid, &m2.monoid);
    let n2 = m2.monoid.size();
    let ranks = p
        .monoid
        .elements()
        .map(|x| m1.rank(x / n2) * m2.rank(x % n2))
        .collect();
    Ok(TabulatedHCModule::from_fn(m1.side, &p.monoid, ranks, |c, a| {
        m1.act[c / n2][a / n2].kron(&m2.act[c % n2][a % n2])
    }))
}

/// `j^*(A)`: the constant family `A` with `c` acting as multiplication.
/// The same data serves as a left or a right module because `K[C]` is
/// commutative.
pub fn jstar(a: &KCModule, side: Side) -> TabulatedHCModule {
    let c = a.monoid();
    TabulatedHCModule::from_fn(side, c, vec![a.rank(); c.size()], |t, _| a.action(t).clone())
}

/// `j_*(M) = ⊕_x M(x)` with `c` routing block `x` to block `cx` via `c_*`.
pub fn jlower(m: &TabulatedHCModule, ring: Ring) -> Result<KCModule> {
    if m.side != Side::Left {
        return Err(Error::BadParams("j_* takes a left module".into()));
    }
    let c = &m.monoid;
    let offsets: Vec<usize> = m
        .ranks
        .iter()
        .scan(0, |acc, &r| {
            let o = *acc;
            *acc += r;
            Some(o)
        })
        .collect();
    let total = m.total_rank();
    let action = c
        .elements()
        .map(|t| {
            let mut entries = Vec::new();
            for x in c.elements() {
                let tx = c.mul(t, x);
                for (i, j, v) in m.act[t][x].triplets() {
                    entries.push((offsets[tx] + i, offsets[x] + j, v.clone()));
                }
            }
            IntMatrix::from_triplets(total, total, entries)
        })
        .collect();
    KCModule::new(c.clone(), ring, total, action)
}

/// Dimension over ℚ of `Hom_{H(C)}(M, N)` for tabulated modules of the same
/// side: families `φ_a` with `φ_{ca}·c_* = c_*·φ_a` (left) or
/// `φ_a·c^* = c^*·φ_{ca}` (right).
pub fn hom_rank(m: &TabulatedHCModule, n: &TabulatedHCModule) -> Result<usize> {
    if m.side != n.side || m.monoid != n.monoid {
        return Err(Error::BadParams("Hom between incompatible modules".into()));
    }
    let c = &m.monoid;
    // Unknowns: entries of φ_a (rank_N(a) × rank_M(a)), row-major, blocks by a.
    let mut offset = vec![0; c.size() + 1];
    for a in c.elements() {
        offset[a + 1] = offset[a] + n.rank(a) * m.rank(a);
    }
    let var = |a: usize, i: usize, j: usize| offset[a] + i * m.rank(a) + j;
    let mut entries = Vec::new();
    let mut row = 0;
    for t in c.elements() {
        for a in c.elements() {
            let ta = c.mul(t, a);
            // Left: φ_{ta} M_t − N_t φ_a = 0, an r_N(ta) × r_M(a) identity.
            // Right: φ_a M_t − N_t φ_{ta} = 0, an r_N(a) × r_M(ta) identity.
            let (src, dst) = match m.side {
                Side::Left => (a, ta),
                Side::Right => (ta, a),
            };
            let (mt, nt) = (&m.act[t][a], &n.act[t][a]);
            let (rows_out, cols_out) = (n.rank(dst), m.rank(src));
            for i in 0..rows_out {
                for j in 0..cols_out {
                    // (φ_dst · M_t)[i][j] = Σ_k φ_dst[i][k] M_t[k][j]
                    for k in 0..m.rank(dst) {
                        let v = mt.get(k, j);
                        if v != 0.into() {
                            entries.push((row, var(dst, i, k), v));
                        }
                    }
                    // (N_t · φ_src)[i][j] = Σ_k N_t[i][k] φ_src[k][j]
                    for k in 0..n.rank(src) {
                        let v = nt.get(i, k);
                        if v != 0.into() {
                            entries.push((row, var(src, k, j), -v));
                        }
                    }
                    row += 1;
                }
            }
        }
    }
    let unknowns = offset[c.size()];
    let system = IntMatrix::from_triplets(row, unknowns, entries);
    Ok(unknowns - crate::linalg::rank(&system))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{cyclic_group, semilattice_chain, trivial_monoid, truncated_add};

    fn suite() -> Vec<FiniteCommMonoid> {
        let z2 = cyclic_group(2).unwrap();
        vec![
            trivial_monoid(),
            z2.clone(),
            cyclic_group(3).unwrap(),
            semilattice_chain(1).unwrap(),
            truncated_add(2).unwrap(),
            product_monoid(&z2, &z2).monoid,
        ]
    }

    #[test]
    fn projectives_are_modules() {
        for c in suite() {
            for a in c.elements() {
                for side in [Side::Left, Side::Right] {
                    let p = std_projective(&c, a, side);
                    assert!(validate_module(&p).is_empty(), "{side:?} C{a} on {c:?}");
                }
            }
            let one = std_projective(&c, c.identity(), Side::Left);
            assert!(one.ranks().iter().all(|&r| r == 1));
        }
    }

    #[test]
    fn right_projective_over_z2() {
        let z2 = cyclic_group(2).unwrap();
        let p = std_projective(&z2, 0, Side::Right);
        assert_eq!(p.ranks(), &[1, 1]);
        for t in 0..2 {
            for a in 0..2 {
                assert_eq!(p.act(t, a), &IntMatrix::identity(1));
            }
        }
    }

    #[test]
    fn bad_identity_is_reported() {
        let c = cyclic_group(2).unwrap();
        let mut m = TabulatedHCModule::constant(Side::Left, &c, 1);
        m.act[0][1] = IntMatrix::from_rows(&[vec![2]], 1);
        let bad = validate_module(&m);
        assert!(bad.contains(&ModuleViolation::BadIdentity { a: 1 }));
    }

    #[test]
    fn pullbacks_and_products() {
        let z2 = cyclic_group(2).unwrap();
        let l = semilattice_chain(1).unwrap();
        let p = product_monoid(&l, &z2);
        let m = std_projective(&p.monoid, 3, Side::Left);
        let id = MonoidHom::identity(&p.monoid);
        assert_eq!(pullback(&id, &m).unwrap(), m);
        let m1 = pullback(&p.inc1, &m).unwrap();
        for a in l.elements() {
            assert_eq!(m1.rank(a), m.rank(p.pair(a, 0)));
        }
        assert!(validate_module(&m1).is_empty());
        // ⊠ with the constant rank-one module is the pullback along π_1.
        let n = std_projective(&l, 1, Side::Left);
        let boxed = boxtimes(&n, &TabulatedHCModule::constant(Side::Left, &z2, 1)).unwrap();
        assert_eq!(boxed, pullback(&p.proj1, &n).unwrap());
    }

    #[test]
    fn projectives_of_a_product_split() {
        let z2 = cyclic_group(2).unwrap();
        let p = product_monoid(&z2, &z2);
        for c1 in 0..2 {
            for c2 in 0..2 {
                for side in [Side::Left, Side::Right] {
                    let lhs = std_projective(&p.monoid, p.pair(c1, c2), side);
                    let rhs = boxtimes(&std_projective(&z2, c1, side), &std_projective(&z2, c2, side))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn jlower_of_unit_projective_is_regular() {
        for c in suite() {
            let m = std_projective(&c, c.identity(), Side::Left);
            let k = jlower(&m, Ring::Z).unwrap();
            assert_eq!(k, KCModule::regular(&c, Ring::Z));
        }
    }

    #[test]
    fn adjunction_dimensions_over_z2() {
        let z2 = cyclic_group(2).unwrap();
        let m = std_projective(&z2, 1, Side::Left);
        let a = KCModule::sign(&z2, Ring::Q).unwrap();
        let lhs = hom_rank(&m, &jstar(&a, Side::Left)).unwrap();
        let rhs = super::super::kc::kc_hom_rank(&jlower(&m, Ring::Q).unwrap(), &a).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, 1);
    }
}
