use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::pointed::{epsilon_map, PointedMap};
use crate::error::{Error, Result};
use crate::linalg::{
    homology_at, homology_dim_q, quotient_homology_at, quotient_homology_dim_q, FgAbGroup,
    IntMatrix, Ring,
};
use crate::module::{QuotientModule, Side, TabulatedHCModule};
use crate::monoid::FiniteCommMonoid;

/// Default cap on the total number of basis elements of a complex.
pub const DEFAULT_BUDGET: usize = 1_000_000;
/// Default top degree.
pub const DEFAULT_MAX_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `G_*(C, N)` for a right module `N`, with boundaries `∂_n`.
    Homological,
    /// `G^*(C, M)` for a left module `M`, with coboundaries `δ_n`.
    Cohomological,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Homological => "homological",
            Direction::Cohomological => "cohomological",
        }
    }

    pub fn side(self) -> Side {
        match self {
            Direction::Homological => Side::Right,
            Direction::Cohomological => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexOptions {
    pub budget: usize,
    pub ring: Ring,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            budget: DEFAULT_BUDGET,
            ring: Ring::Z,
        }
    }
}

/// Tuples of one degree: lexicographic index `Σ a_i m^{n-i}`, the product of
/// each tuple and the offset of its coefficient block.
#[derive(Clone, Debug)]
struct DegreeBasis {
    product: Vec<usize>,
    offset: Vec<usize>,
}

impl DegreeBasis {
    fn dim(&self) -> usize {
        *self.offset.last().expect("offset has a sentinel")
    }
}

#[derive(Clone, Debug)]
pub struct GammaChainComplex {
    direction: Direction,
    ring: Ring,
    monoid: FiniteCommMonoid,
    coefficients: QuotientModule,
    n_max: usize,
    bases: Vec<DegreeBasis>,
    /// Homological: `∂_n: C_n → C_{n-1}` for `0 ≤ n ≤ n_max` (`∂_0` has no
    /// rows). Cohomological: `δ_n: C^n → C^{n+1}` for `0 ≤ n < n_max`.
    differentials: Vec<IntMatrix>,
}

/// Basis sizes per degree from tuple counts by product, saturating.
fn degree_sizes(c: &FiniteCommMonoid, ranks: &[usize], n_max: usize) -> Vec<(u128, u128)> {
    let m = c.size();
    let mut count = vec![0u128; m];
    count[c.identity()] = 1;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let tuples: u128 = count.iter().fold(0u128, |acc, x| acc.saturating_add(*x));
        let dim = count
            .iter()
            .zip(ranks)
            .fold(0u128, |acc, (k, r)| acc.saturating_add(k.saturating_mul(*r as u128)));
        out.push((tuples, dim));
        if n < n_max {
            let mut next = vec![0u128; m];
            for (x, k) in count.iter().enumerate() {
                for a in c.elements() {
                    let y = c.mul(x, a);
                    next[y] = next[y].saturating_add(*k);
                }
            }
            count = next;
        }
    }
    out
}

/// Checks the basis-size budget of a prospective complex.
pub fn check_budget(c: &FiniteCommMonoid, ranks: &[usize], n_max: usize, budget: usize) -> Result<()> {
    let sizes = degree_sizes(c, ranks, n_max);
    let total = sizes
        .iter()
        .fold(0u128, |acc, (t, d)| acc.saturating_add((*t).max(*d)));
    if total > budget as u128 {
        return Err(Error::ComplexityBudget {
            requested: total.min(usize::MAX as u128) as usize,
            cap: budget,
        });
    }
    Ok(())
}

/// `build_complex` with the default budget over ℤ.
pub fn build_complex(
    c: &FiniteCommMonoid,
    coeff: &QuotientModule,
    n_max: usize,
    direction: Direction,
) -> Result<GammaChainComplex> {
    build_complex_with(c, coeff, n_max, direction, ComplexOptions::default())
}

pub fn build_complex_with(
    c: &FiniteCommMonoid,
    coeff: &QuotientModule,
    n_max: usize,
    direction: Direction,
    options: ComplexOptions,
) -> Result<GammaChainComplex> {
    if coeff.monoid() != c {
        return Err(Error::BadParams("coefficients live over a different monoid".into()));
    }
    if coeff.side() != direction.side() {
        return Err(Error::BadParams(format!(
            "{} complexes take {} modules",
            direction.as_str(),
            direction.side().as_str()
        )));
    }
    let ranks = coeff.cover().ranks().to_vec();
    check_budget(c, &ranks, n_max, options.budget)?;
    let m = c.size();
    let mut bases = Vec::with_capacity(n_max + 1);
    let mut product = vec![c.identity()];
    for n in 0..=n_max {
        if n > 0 {
            product = product
                .iter()
                .flat_map(|&p| c.elements().map(move |a| (p, a)))
                .map(|(p, a)| c.mul(p, a))
                .collect();
        }
        let mut offset = Vec::with_capacity(product.len() + 1);
        offset.push(0);
        for &p in &product {
            offset.push(offset.last().unwrap() + ranks[p]);
        }
        bases.push(DegreeBasis {
            product: product.clone(),
            offset,
        });
    }
    debug_assert!(bases.iter().enumerate().all(|(n, b)| b.product.len() == m.pow(n as u32)));
    let mut complex = GammaChainComplex {
        direction,
        ring: options.ring,
        monoid: c.clone(),
        coefficients: coeff.clone(),
        n_max,
        bases,
        differentials: Vec::new(),
    };
    complex.differentials = match direction {
        Direction::Homological => (0..=n_max).map(|n| complex.face_sum(n)).collect::<Result<_>>()?,
        Direction::Cohomological => (0..n_max).map(|n| complex.face_sum(n + 1)).collect::<Result<_>>()?,
    };
    complex.check_squares()?;
    Ok(complex)
}

impl GammaChainComplex {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// The same complex, with homology computed over `ring`.
    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn monoid(&self) -> &FiniteCommMonoid {
        &self.monoid
    }

    pub fn coefficients(&self) -> &QuotientModule {
        &self.coefficients
    }

    fn cover(&self) -> &TabulatedHCModule {
        self.coefficients.cover()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::IndexOutOfRange(format!("degree {n} above cap {}", self.n_max)));
        }
        Ok(())
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].dim()
    }

    pub fn num_tuples(&self, n: usize) -> usize {
        self.bases[n].product.len()
    }

    /// The tuple with lexicographic index `t` in degree `n`.
    pub fn tuple(&self, n: usize, mut t: usize) -> Vec<usize> {
        let m = self.monoid.size();
        let mut digits = vec![0; n];
        for k in (0..n).rev() {
            digits[k] = t % m;
            t /= m;
        }
        digits
    }

    pub fn tuple_index(&self, digits: &[usize]) -> usize {
        let m = self.monoid.size();
        digits.iter().fold(0, |acc, &a| acc * m + a)
    }

    /// Product of the tuple with index `t` in degree `n`.
    pub fn tuple_product(&self, n: usize, t: usize) -> usize {
        self.bases[n].product[t]
    }

    /// Offset of the coefficient block of tuple `t` in degree `n`.
    pub fn block_offset(&self, n: usize, t: usize) -> usize {
        self.bases[n].offset[t]
    }

    /// `(tuple, coefficient index)` of basis element `k` in degree `n`.
    pub fn basis_element(&self, n: usize, k: usize) -> (Vec<usize>, usize) {
        let off = &self.bases[n].offset;
        let t = off.partition_point(|&o| o <= k) - 1;
        (self.tuple(n, t), k - off[t])
    }

    pub fn basis_label(&self, n: usize, k: usize) -> String {
        let (tuple, j) = self.basis_element(n, k);
        let parts: Vec<String> = tuple.iter().map(|a| a.to_string()).collect();
        format!("({})#{j}", parts.join(","))
    }

    /// Homological: `∂_n: C_n → C_{n-1}` (`n ≤ n_max`). Cohomological:
    /// `δ_n: C^n → C^{n+1}` (`n < n_max`).
    pub fn differential(&self, n: usize) -> Result<&IntMatrix> {
        self.differentials
            .get(n)
            .ok_or_else(|| Error::IndexOutOfRange(format!("no differential at degree {n}")))
    }

    /// The incoming differential at degree `n`, with an empty matrix in
    /// the cohomological degree 0.
    fn incoming(&self, n: usize) -> Result<IntMatrix> {
        match self.direction {
            Direction::Homological => self.differential(n + 1).cloned(),
            Direction::Cohomological if n == 0 => Ok(IntMatrix::zeros(self.dim(0), 0)),
            Direction::Cohomological => self.differential(n - 1).cloned(),
        }
    }

    /// The image of a pointed map `f: [n] → [k]`: the push-forward
    /// `C_n → C_k` homologically, the pull-back `C^k → C^n` cohomologically.
    pub fn gamma_matrix(&self, f: &PointedMap) -> Result<IntMatrix> {
        self.combination(&[(f.clone(), BigInt::one())])
    }

    /// `Σ coeff · gamma_matrix(f)` over maps with a common source and target.
    pub fn combination(&self, terms: &[(PointedMap, BigInt)]) -> Result<IntMatrix> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::BadParams("empty combination of pointed maps".into()));
        };
        let (src, tgt) = (first.source(), first.target());
        if terms.iter().any(|(f, _)| f.source() != src || f.target() != tgt) {
            return Err(Error::DegreeMismatch("maps with different degrees".into()));
        }
        self.check_degree(src)?;
        self.check_degree(tgt)?;
        let c = &self.monoid;
        let module = self.cover();
        let (bs, bt) = (&self.bases[src], &self.bases[tgt]);
        let mut entries = Vec::new();
        let mut b = vec![c.identity(); tgt + 1];
        for ta in 0..bs.product.len() {
            let digits = self.tuple(src, ta);
            for (f, coeff) in terms {
                b.iter_mut().for_each(|x| *x = c.identity());
                for (i, &a) in digits.iter().enumerate() {
                    let j = f.apply(i + 1);
                    b[j] = c.mul(b[j], a);
                }
                let tb = self.tuple_index(&b[1..]);
                let block = module.act(b[0], bt.product[tb]);
                let (row_off, col_off) = match self.direction {
                    Direction::Homological => (bt.offset[tb], bs.offset[ta]),
                    Direction::Cohomological => (bs.offset[ta], bt.offset[tb]),
                };
                entries.extend(block.triplets().map(|(i, j, v)| (row_off + i, col_off + j, v * coeff)));
            }
        }
        let (rows, cols) = match self.direction {
            Direction::Homological => (bt.dim(), bs.dim()),
            Direction::Cohomological => (bs.dim(), bt.dim()),
        };
        Ok(IntMatrix::from_triplets(rows, cols, entries))
    }

    /// `Σ_i (−1)^i` over the faces `ε^i: [n] → [n−1]`; for `n = 0`, the
    /// empty map out of degree 0.
    fn face_sum(&self, n: usize) -> Result<IntMatrix> {
        if n == 0 {
            return Ok(IntMatrix::zeros(0, self.dim(0)));
        }
        let faces = (0..=n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                Ok((epsilon_map(i, n - 1)?, BigInt::from(sign)))
            })
            .collect::<Result<Vec<_>>>()?;
        self.combination(&faces)
    }

    pub fn check_squares(&self) -> Result<()> {
        for w in self.differentials.windows(2) {
            let product = match self.direction {
                Direction::Homological => &w[0] * &w[1],
                Direction::Cohomological => &w[1] * &w[0],
            };
            if !product.is_zero() {
                return Err(Error::CompositionNonzero);
            }
        }
        Ok(())
    }

    /// Generators of the relation subcomplex in degree `n`: the
    /// coefficient relations placed in every tuple block.
    pub fn relations(&self, n: usize) -> IntMatrix {
        let b = &self.bases[n];
        let mut entries = Vec::new();
        let mut col = 0;
        for (t, &p) in b.product.iter().enumerate() {
            let r = self.coefficients.relations(p);
            entries.extend(r.triplets().map(|(i, j, v)| (b.offset[t] + i, col + j, v.clone())));
            col += r.cols();
        }
        IntMatrix::from_triplets(b.dim(), col, entries)
    }

    /// The (co)homology in degree `n < n_max` over the complex's ring.
    pub fn homology(&self, n: usize) -> Result<FgAbGroup> {
        if n >= self.n_max {
            return Err(Error::IndexOutOfRange(format!(
                "degree {n} needs the complex up to degree {}",
                n + 1
            )));
        }
        let out = self.differential(n)?;
        let inc = self.incoming(n)?;
        if !self.coefficients.has_relations() {
            return match self.ring {
                Ring::Z => homology_at(out, &inc),
                Ring::Q => homology_dim_q(out, &inc).map(FgAbGroup::free),
            };
        }
        let here = self.relations(n);
        let target = match self.direction {
            Direction::Homological if n == 0 => IntMatrix::zeros(0, 0),
            Direction::Homological => self.relations(n - 1),
            Direction::Cohomological => self.relations(n + 1),
        };
        match self.ring {
            Ring::Z => quotient_homology_at(out, &inc, &target, &here),
            Ring::Q => quotient_homology_dim_q(out, &inc, &target, &here).map(FgAbGroup::free),
        }
    }

    /// Debugging dump: basis labels and differentials as sparse triplets.
    pub fn to_json(&self) -> Value {
        let monoid: Value = serde_json::from_str(&self.monoid.to_json()).expect("monoid json");
        let degrees: Vec<Value> = (0..=self.n_max)
            .map(|n| {
                let labels: Vec<String> = (0..self.dim(n)).map(|k| self.basis_label(n, k)).collect();
                json!({"degree": n, "dim": self.dim(n), "basis": labels})
            })
            .collect();
        let differentials: Vec<Value> = self
            .differentials
            .iter()
            .enumerate()
            .map(|(n, d)| {
                let entries: Vec<Value> = d
                    .triplets()
                    .map(|(i, j, v)| json!([i, j, crate::codec::bigint_value(v)]))
                    .collect();
                json!({"degree": n, "rows": d.rows(), "cols": d.cols(), "entries": entries})
            })
            .collect();
        json!({
            "direction": self.direction.as_str(),
            "ring": self.ring.as_str(),
            "n_max": self.n_max,
            "monoid": monoid,
            "degrees": degrees,
            "differentials": differentials,
        })
    }
}

/// Homology of a homological complex at degree `n`.
pub fn hochschild(complex: &GammaChainComplex, n: usize) -> Result<FgAbGroup> {
    complex.homology(n)
}

/// `HH^n(C, M)` for a left module, building the cochain complex to `n + 1`.
pub fn leech_cohomology(c: &FiniteCommMonoid, m: &QuotientModule, n: usize) -> Result<FgAbGroup> {
    build_complex(c, m, n + 1, Direction::Cohomological)?.homology(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;
    use crate::module::{derivations, jstar, jstar_mod, std_projective, KCModule};
    use crate::monoid::{cyclic_group, semilattice_chain, trivial_monoid, truncated_add};

    fn trivial_right(c: &FiniteCommMonoid) -> QuotientModule {
        jstar(&KCModule::trivial(c, Ring::Z), Side::Right).into()
    }

    fn trivial_left(c: &FiniteCommMonoid) -> QuotientModule {
        jstar(&KCModule::trivial(c, Ring::Z), Side::Left).into()
    }

    #[test]
    fn trivial_monoid_alternates() {
        let t = trivial_monoid();
        let cx = build_complex(&t, &trivial_right(&t), 5, Direction::Homological).unwrap();
        for n in 1..=5 {
            let d = cx.differential(n).unwrap();
            assert_eq!(d.shape(), (1, 1));
            assert_eq!(d.is_identity(), n % 2 == 0, "degree {n}");
            assert_eq!(d.is_zero(), n % 2 == 1);
        }
        for n in 1..5 {
            assert!(hochschild(&cx, n).unwrap().is_trivial());
        }
        assert_eq!(hochschild(&cx, 0).unwrap(), FgAbGroup::free(1));
    }

    #[test]
    fn z2_group_homology() {
        let z2 = cyclic_group(2).unwrap();
        let cx = build_complex(&z2, &trivial_right(&z2), 5, Direction::Homological).unwrap();
        assert_eq!(cx.dim(3), 8);
        let hh: Vec<FgAbGroup> = (0..5).map(|n| hochschild(&cx, n).unwrap()).collect();
        let z2g = FgAbGroup::cyclic(2);
        assert_eq!(hh, vec![FgAbGroup::free(1), z2g.clone(), FgAbGroup::trivial(), z2g, FgAbGroup::trivial()]);
        assert!(cx.differential(1).unwrap().is_zero());
    }

    #[test]
    fn z2_group_cohomology() {
        let z2 = cyclic_group(2).unwrap();
        let m = trivial_left(&z2);
        assert_eq!(leech_cohomology(&z2, &m, 0).unwrap(), FgAbGroup::free(1));
        assert!(leech_cohomology(&z2, &m, 1).unwrap().is_trivial());
        assert_eq!(leech_cohomology(&z2, &m, 2).unwrap(), FgAbGroup::cyclic(2));
    }

    #[test]
    fn first_cohomology_is_derivations() {
        for c in [cyclic_group(2).unwrap(), semilattice_chain(1).unwrap(), truncated_add(2).unwrap()] {
            let mut coefficients = vec![trivial_left(&c)];
            coefficients.extend(c.elements().map(|a| std_projective(&c, a, Side::Left).into()));
            coefficients.push(jstar_mod(&KCModule::trivial(&c, Ring::Z), Side::Left, 4).unwrap());
            for m in coefficients {
                let der = derivations(&c, &m).unwrap().group;
                assert_eq!(leech_cohomology(&c, &m, 1).unwrap(), der, "{m:?}");
            }
        }
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 coefficients over Z/2: H_1 of the bar complex is Z/2.
        let z2 = cyclic_group(2).unwrap();
        let n = jstar_mod(&KCModule::trivial(&z2, Ring::Z), Side::Right, 4).unwrap();
        let cx = build_complex(&z2, &n, 3, Direction::Homological).unwrap();
        assert_eq!(hochschild(&cx, 0).unwrap(), FgAbGroup::cyclic(4));
        assert_eq!(hochschild(&cx, 1).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(hochschild(&cx, 2).unwrap(), FgAbGroup::cyclic(2));
        let q = cx.with_ring(Ring::Q);
        assert_eq!(hochschild(&q, 0).unwrap(), FgAbGroup::trivial());
    }

    #[test]
    fn functoriality_of_faces() {
        let c = truncated_add(2).unwrap();
        let n: QuotientModule = std_projective(&c, 1, Side::Right).into();
        let m: QuotientModule = std_projective(&c, 1, Side::Left).into();
        let hom = build_complex(&c, &n, 3, Direction::Homological).unwrap();
        let coh = build_complex(&c, &m, 3, Direction::Cohomological).unwrap();
        for i in 0..=3 {
            for j in 0..=2 {
                let f = epsilon_map(i, 2).unwrap();
                let g = epsilon_map(j, 1).unwrap();
                let gf = f.then(&g).unwrap();
                assert_eq!(
                    hom.gamma_matrix(&gf).unwrap(),
                    &hom.gamma_matrix(&g).unwrap() * &hom.gamma_matrix(&f).unwrap()
                );
                assert_eq!(
                    coh.gamma_matrix(&gf).unwrap(),
                    &coh.gamma_matrix(&f).unwrap() * &coh.gamma_matrix(&g).unwrap()
                );
            }
        }
        assert!(hom.gamma_matrix(&PointedMap::identity(2)).unwrap().is_identity());
    }

    #[test]
    fn wrong_side_and_budget() {
        let z2 = cyclic_group(2).unwrap();
        assert!(matches!(
            build_complex(&z2, &trivial_left(&z2), 2, Direction::Homological),
            Err(Error::BadParams(_))
        ));
        let opts = ComplexOptions {
            budget: 10,
            ring: Ring::Z,
        };
        assert!(matches!(
            build_complex_with(&z2, &trivial_right(&z2), 5, Direction::Homological, opts),
            Err(Error::ComplexityBudget { cap: 10, .. })
        ));
    }

    #[test]
    fn labels() {
        let z2 = cyclic_group(2).unwrap();
        let cx = build_complex(&z2, &trivial_right(&z2), 2, Direction::Homological).unwrap();
        assert_eq!(cx.basis_label(0, 0), "()#0");
        assert_eq!(cx.basis_label(2, 2), "(1,0)#0");
        assert_eq!(cx.to_json()["degrees"][2]["dim"], 4);
    }
}
