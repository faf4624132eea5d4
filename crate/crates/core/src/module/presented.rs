use num_bigint::BigInt;
use num_traits::Zero;

use super::quotient::QuotientModule;
use super::tabulated::{std_projective, Side, TabulatedHCModule};
use crate::error::{Error, Result};
use crate::linalg::{FgAbGroup, IntMatrix};
use crate::monoid::FiniteCommMonoid;

/// One relation: a formal combination `Σ coeff·(translator)·g` living in
/// `degree`. Terms are `(generator, translator, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub terms: Vec<(usize, usize, BigInt)>,
}

/// A module given by generators in prescribed degrees and relations.
///
/// For a left module the term `(g, c)` lives in degree `deg(g)·c`; for a
/// right module it lives in any degree `d` with `d·c = deg(g)`, so the
/// relation degree must satisfy that equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHCModule {
    side: Side,
    monoid: FiniteCommMonoid,
    generators: Vec<(String, usize)>,
    relations: Vec<Relation>,
}

impl PresentedHCModule {
    pub fn new(
        side: Side,
        monoid: FiniteCommMonoid,
        generators: Vec<(String, usize)>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if let Some((label, _)) = generators.iter().find(|(_, a)| *a >= monoid.size()) {
            return Err(Error::IndexOutOfRange(format!("degree of generator {label}")));
        }
        for (k, r) in relations.iter().enumerate() {
            if r.degree >= monoid.size() {
                return Err(Error::IndexOutOfRange(format!("degree of relation {k}")));
            }
            for &(g, c, _) in &r.terms {
                if g >= generators.len() || c >= monoid.size() {
                    return Err(Error::IndexOutOfRange(format!("term of relation {k}")));
                }
                let consistent = match side {
                    Side::Left => monoid.mul(generators[g].1, c) == r.degree,
                    Side::Right => monoid.mul(r.degree, c) == generators[g].1,
                };
                if !consistent {
                    return Err(Error::BadParams(format!(
                        "relation {k}: term ({g}, {c}) does not live in degree {}",
                        r.degree
                    )));
                }
            }
        }
        Ok(PresentedHCModule {
            side,
            monoid,
            generators,
            relations,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn monoid(&self) -> &FiniteCommMonoid {
        &self.monoid
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Basis of the free cover in degree `x`: pairs `(g, c)` in generator
    /// order, then ascending translator.
    pub fn free_basis(&self, x: usize) -> Vec<(usize, usize)> {
        let c = &self.monoid;
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(g, &(_, a))| {
                let translators = match self.side {
                    Side::Left => c.quotient_set(x, a),
                    Side::Right => c.quotient_set(a, x),
                };
                translators.into_iter().map(move |t| (g, t))
            })
            .collect()
    }
}

/// The differentials module: generators `d_a` in degree `a`, and for every
/// pair `a ≤ b` the Leibniz relation `d_{ab} − a·d_b − b·d_a` in degree `ab`.
pub fn omega(c: &FiniteCommMonoid) -> PresentedHCModule {
    let one = c.identity();
    let generators = c.elements().map(|a| (format!("d_{a}"), a)).collect();
    let mut relations = Vec::new();
    for a in c.elements() {
        for b in a..c.size() {
            let raw = [(c.mul(a, b), one, 1i64), (b, a, -1), (a, b, -1)];
            let mut terms: Vec<(usize, usize, BigInt)> = Vec::new();
            for (g, t, v) in raw {
                match terms.iter_mut().find(|(g2, t2, _)| (*g2, *t2) == (g, t)) {
                    Some(term) => term.2 += v,
                    None => terms.push((g, t, v.into())),
                }
            }
            terms.retain(|t| !t.2.is_zero());
            relations.push(Relation {
                degree: c.mul(a, b),
                terms,
            });
        }
    }
    PresentedHCModule {
        side: Side::Left,
        monoid: c.clone(),
        generators,
        relations,
    }
}

/// Tabulation of a presented module: the free cover `⊕_g C^{deg g}` (or
/// `⊕_g C_{deg g}`) modulo all translates of the relations.
#[derive(Clone, Debug)]
pub struct Tabulation {
    pub module: QuotientModule,
    /// `(generator, translator)` labels of the cover basis in each degree.
    pub basis: Vec<Vec<(usize, usize)>>,
}

impl Tabulation {
    pub fn values(&self) -> Vec<FgAbGroup> {
        self.module.values()
    }
}

pub fn tabulate_presented(p: &PresentedHCModule) -> Tabulation {
    let c = &p.monoid;
    let cover = p
        .generators
        .iter()
        .map(|&(_, a)| std_projective(c, a, p.side))
        .try_fold(TabulatedHCModule::zero(p.side, c), |acc, m| acc.direct_sum(&m))
        .expect("projectives over one monoid");
    let basis: Vec<Vec<(usize, usize)>> = c.elements().map(|x| p.free_basis(x)).collect();
    let index = |x: usize, key: (usize, usize)| {
        basis[x]
            .iter()
            .position(|&b| b == key)
            .expect("translated term lies in the cover basis")
    };
    let relations = c
        .elements()
        .map(|x| {
            let mut columns = Vec::new();
            for r in &p.relations {
                let translators: Vec<usize> = match p.side {
                    Side::Left => c.elements().filter(|&t| c.mul(t, r.degree) == x).collect(),
                    Side::Right => c.elements().filter(|&t| c.mul(x, t) == r.degree).collect(),
                };
                for t in translators {
                    let mut col: Vec<(usize, BigInt)> = r
                        .terms
                        .iter()
                        .map(|(g, c0, v)| (index(x, (*g, c.mul(t, *c0))), v.clone()))
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col.dedup_by(|later, earlier| {
                        if later.0 == earlier.0 {
                            earlier.1 += &later.1;
                            true
                        } else {
                            false
                        }
                    });
                    col.retain(|e| !e.1.is_zero());
                    columns.push(col);
                }
            }
            IntMatrix::from_columns(basis[x].len(), &columns)
        })
        .collect();
    let module = QuotientModule::unchecked(cover, relations).expect("shapes agree by construction");
    Tabulation { module, basis }
}
