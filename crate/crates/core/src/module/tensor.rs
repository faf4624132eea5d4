use num_bigint::BigInt;

use super::presented::{tabulate_presented, PresentedHCModule};
use super::quotient::QuotientModule;
use super::tabulated::{Side, TabulatedHCModule};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_group, FgAbGroup, IntMatrix};

/// `N ⊗_{H(C)} M` for a right module `N` and a left module `M = F/R`.
///
/// Generators are `N(a) ⊗ F(a)` for every `a`; relations are `z ⊗ ρ` for the
/// relations `ρ` of `M`, and the balancing relations
/// `c^*(z) ⊗ y − z ⊗ c_*(y)` for every `c`, `a`, basis `z ∈ N(ca)` and
/// basis `y ∈ F(a)`.
pub fn tensor_over_hc(n: &TabulatedHCModule, m: &QuotientModule) -> Result<FgAbGroup> {
    tensor_quotients(&QuotientModule::free(n.clone()), m)
}

/// The same for a right module with relations, `N = E/S`: the relations
/// `σ ⊗ y` are added.
pub fn tensor_quotients(nq: &QuotientModule, m: &QuotientModule) -> Result<FgAbGroup> {
    let n = nq.cover();
    if n.side() != Side::Right || m.side() != Side::Left {
        return Err(Error::BadParams("tensor product takes a right and a left module".into()));
    }
    if n.monoid() != m.monoid() {
        return Err(Error::BadParams("tensor product over different monoids".into()));
    }
    let c = n.monoid();
    let f = m.cover();
    let mut offset = vec![0; c.size() + 1];
    for a in c.elements() {
        offset[a + 1] = offset[a] + n.rank(a) * f.rank(a);
    }
    let gen = |a: usize, i: usize, j: usize| offset[a] + i * f.rank(a) + j;
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for a in c.elements() {
        for rho in m.relations(a).columns() {
            for i in 0..n.rank(a) {
                columns.push(rho.iter().map(|(j, v)| (gen(a, i, *j), v.clone())).collect());
            }
        }
    }
    for a in c.elements() {
        for sigma in nq.relations(a).columns() {
            for j in 0..f.rank(a) {
                columns.push(sigma.iter().map(|(i, v)| (gen(a, *i, j), v.clone())).collect());
            }
        }
    }
    for t in c.elements().filter(|&t| t != c.identity()) {
        for a in c.elements() {
            let ta = c.mul(t, a);
            let (nt, ft) = (n.act(t, a).columns(), f.act(t, a).columns());
            for (p, zcol) in nt.iter().enumerate() {
                for (q, ycol) in ft.iter().enumerate() {
                    let mut col: Vec<(usize, BigInt)> =
                        zcol.iter().map(|(i, v)| (gen(a, *i, q), v.clone())).collect();
                    col.extend(ycol.iter().map(|(j, v)| (gen(ta, p, *j), -v)));
                    columns.push(col);
                }
            }
        }
    }
    Ok(cokernel_group(&sparse_columns(offset[c.size()], columns)))
}

/// `N ⊗_{H(C)} P` for a presented left module, through its tabulation.
pub fn tensor_with_presented(n: &TabulatedHCModule, p: &PresentedHCModule) -> Result<FgAbGroup> {
    if p.side() != Side::Left {
        return Err(Error::BadParams("tensor product takes a left presented module".into()));
    }
    tensor_over_hc(n, &tabulate_presented(p).module)
}

/// The same group computed by right exactness and Yoneda: the cokernel of
/// `⊕_relations N(d) → ⊕_generators N(deg g)`, where a term `(g, c)` acts
/// through `c^*: N(c·deg g) → N(deg g)`.
pub fn tensor_with_presented_yoneda(n: &TabulatedHCModule, p: &PresentedHCModule) -> Result<FgAbGroup> {
    if n.side() != Side::Right || p.side() != Side::Left || n.monoid() != p.monoid() {
        return Err(Error::BadParams("tensor product of incompatible modules".into()));
    }
    let gens = p.generators();
    let mut offset = vec![0; gens.len() + 1];
    for (g, (_, a)) in gens.iter().enumerate() {
        offset[g + 1] = offset[g] + n.rank(*a);
    }
    let mut columns = Vec::new();
    for r in p.relations() {
        for z in 0..n.rank(r.degree) {
            let mut col = Vec::new();
            for (g, t, v) in &r.terms {
                let pull = n.act(*t, gens[*g].1).column(z);
                col.extend(pull.into_iter().map(|(i, x)| (offset[*g] + i, x * v)));
            }
            columns.push(col);
        }
    }
    Ok(cokernel_group(&sparse_columns(offset[gens.len()], columns)))
}

/// Column matrix from unsorted, possibly repeated column entries.
pub(crate) fn sparse_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> IntMatrix {
    let ncols = columns.len();
    let entries = columns
        .into_iter()
        .enumerate()
        .flat_map(|(j, col)| col.into_iter().map(move |(i, v)| (i, j, v)));
    IntMatrix::from_triplets(rows, ncols, entries)
}
