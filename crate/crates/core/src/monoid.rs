//! Finite commutative monoids as validated multiplication tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest table a builder will produce.
pub const MAX_BUILD_SIZE: usize = 4096;

/// One violated monoid law, with the first failing witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law")]
pub enum LawViolation {
    BadShape { detail: String },
    OutOfRange { a: usize, b: usize, value: usize },
    BadIdentity { a: usize },
    NotCommutative { a: usize, b: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

/// A finite commutative monoid; elements are the indices `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteCommMonoid {
    identity: usize,
    table: Vec<Vec<usize>>,
}

/// Check the monoid laws; all violated laws are reported, each with its
/// first failing witness in lexicographic order.
pub fn validate_monoid(size: usize, identity: usize, table: Vec<Vec<usize>>) -> Result<FiniteCommMonoid> {
    let mut bad = Vec::new();
    if size == 0 {
        bad.push(LawViolation::BadShape {
            detail: "a monoid has at least one element".into(),
        });
    } else if table.len() != size || table.iter().any(|r| r.len() != size) {
        bad.push(LawViolation::BadShape {
            detail: format!("table must be {size}×{size}"),
        });
    } else if identity >= size {
        bad.push(LawViolation::BadShape {
            detail: format!("identity {identity} is not an element"),
        });
    }
    if bad.is_empty() {
        'range: for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= size {
                    bad.push(LawViolation::OutOfRange { a, b, value: v });
                    break 'range;
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::InvalidMonoid(bad));
    }
    let t = &table;
    if let Some(a) = (0..size).find(|&a| t[identity][a] != a) {
        bad.push(LawViolation::BadIdentity { a });
    }
    'comm: for a in 0..size {
        for b in a + 1..size {
            if t[a][b] != t[b][a] {
                bad.push(LawViolation::NotCommutative { a, b });
                break 'comm;
            }
        }
    }
    'assoc: for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    bad.push(LawViolation::NotAssociative { a, b, c });
                    break 'assoc;
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(FiniteCommMonoid { identity, table })
    } else {
        Err(Error::InvalidMonoid(bad))
    }
}

impl FiniteCommMonoid {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Product of a list of elements; the empty product is the identity.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// `(b:a) = {c : a·c = b}` in ascending order.
    pub fn quotient_set(&self, b: usize, a: usize) -> Vec<usize> {
        self.elements().filter(|&c| self.mul(a, c) == b).collect()
    }

    /// Whether every element is invertible.
    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|a| self.elements().any(|b| self.mul(a, b) == self.identity))
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MonoidJson {
            size: self.size(),
            identity: self.identity,
            table: self.table.clone(),
        })
        .expect("monoid serialises")
    }

    /// Parse and validate the JSON table format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MonoidJson = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        validate_monoid(raw.size, raw.identity, raw.table)
    }
}

// Field order is alphabetical so the text matches canonical sorted-key output.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidJson {
    identity: usize,
    size: usize,
    table: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteCommMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteCommMonoid(identity={}, table={:?})", self.identity, self.table)
    }
}

/// The standard families of test monoids, and products of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidBuilder {
    Trivial,
    CyclicGroup(usize),
    SemilatticeChain(usize),
    TruncatedAdd(usize),
    Product(Box<MonoidBuilder>, Box<MonoidBuilder>),
}

impl MonoidBuilder {
    pub fn build(&self) -> Result<FiniteCommMonoid> {
        match self {
            MonoidBuilder::Trivial => cyclic_group(1),
            MonoidBuilder::CyclicGroup(k) => cyclic_group(*k),
            MonoidBuilder::SemilatticeChain(m) => semilattice_chain(*m),
            MonoidBuilder::TruncatedAdd(cap) => truncated_add(*cap),
            MonoidBuilder::Product(a, b) => {
                let (a, b) = (a.build()?, b.build()?);
                if a.size() * b.size() > MAX_BUILD_SIZE {
                    return Err(Error::BadParams(format!("product larger than {MAX_BUILD_SIZE}")));
                }
                Ok(product_monoid(&a, &b).monoid)
            }
        }
    }

    /// Short display name, e.g. `Z/2` or `Z/2xZ/2`.
    pub fn label(&self) -> String {
        match self {
            MonoidBuilder::Trivial => "1".into(),
            MonoidBuilder::CyclicGroup(k) => format!("Z/{k}"),
            MonoidBuilder::SemilatticeChain(m) => format!("L{m}"),
            MonoidBuilder::TruncatedAdd(c) => format!("T{c}"),
            MonoidBuilder::Product(a, b) => format!("{}x{}", a.label(), b.label()),
        }
    }
}

impl fmt::Display for MonoidBuilder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidBuilder::Trivial => write!(f, "trivial"),
            MonoidBuilder::CyclicGroup(k) => write!(f, "cyclic_group({k})"),
            MonoidBuilder::SemilatticeChain(m) => write!(f, "semilattice_chain({m})"),
            MonoidBuilder::TruncatedAdd(c) => write!(f, "truncated_add({c})"),
            MonoidBuilder::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

impl FromStr for MonoidBuilder {
    type Err = Error;

    /// `trivial`, `cyclic_group(k)`, `semilattice_chain(m)`,
    /// `truncated_add(cap)`, or `*`-separated products of these.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut factors = s.split('*').map(parse_factor);
        let first = factors.next().expect("split yields one item")?;
        factors.try_fold(first, |acc, f| Ok(MonoidBuilder::Product(Box::new(acc), Box::new(f?))))
    }
}

fn parse_factor(s: &str) -> Result<MonoidBuilder> {
    let s = s.trim();
    if s == "trivial" {
        return Ok(MonoidBuilder::Trivial);
    }
    let bad = || Error::BadParams(format!("unknown monoid builder {s:?}"));
    let (name, rest) = s.split_once('(').ok_or_else(bad)?;
    let arg = rest.strip_suffix(')').ok_or_else(bad)?;
    let n: usize = arg.trim().parse().map_err(|_| bad())?;
    match name.trim() {
        "cyclic_group" => Ok(MonoidBuilder::CyclicGroup(n)),
        "semilattice_chain" => Ok(MonoidBuilder::SemilatticeChain(n)),
        "truncated_add" => Ok(MonoidBuilder::TruncatedAdd(n)),
        _ => Err(bad()),
    }
}

fn from_law(size: usize, law: impl Fn(usize, usize) -> usize) -> Result<FiniteCommMonoid> {
    if size > MAX_BUILD_SIZE {
        return Err(Error::BadParams(format!("monoid larger than {MAX_BUILD_SIZE}")));
    }
    let table = (0..size).map(|a| (0..size).map(|b| law(a, b)).collect()).collect();
    Ok(FiniteCommMonoid { identity: 0, table })
}

pub fn trivial_monoid() -> FiniteCommMonoid {
    cyclic_group(1).expect("order 1 is valid")
}

/// `ℤ/k` under addition.
pub fn cyclic_group(k: usize) -> Result<FiniteCommMonoid> {
    if k == 0 {
        return Err(Error::BadParams("cyclic_group needs k ≥ 1".into()));
    }
    from_law(k, |a, b| (a + b) % k)
}

/// `{e_0 = 1, e_1, …, e_m}` with `e_i·e_j = e_max(i,j)`.
pub fn semilattice_chain(m: usize) -> Result<FiniteCommMonoid> {
    from_law(m.saturating_add(1), |a, b| a.max(b))
}

/// `{0, …, cap}` with `a·b = min(a + b, cap)`.
pub fn truncated_add(cap: usize) -> Result<FiniteCommMonoid> {
    from_law(cap.saturating_add(1), |a, b| (a + b).min(cap))
}

/// A monoid homomorphism given by its values on the source elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: FiniteCommMonoid,
    target: FiniteCommMonoid,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: FiniteCommMonoid, target: FiniteCommMonoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::BadParams("homomorphism map has the wrong shape".into()));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::BadParams("homomorphism does not preserve the identity".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::BadParams(format!(
                        "homomorphism fails on the pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(MonoidHom { source, target, map })
    }

    pub fn identity(c: &FiniteCommMonoid) -> Self {
        MonoidHom {
            source: c.clone(),
            target: c.clone(),
            map: c.elements().collect(),
        }
    }

    pub fn source(&self) -> &FiniteCommMonoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteCommMonoid {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        if self.target != other.source {
            return Err(Error::BadParams("homomorphisms do not compose".into()));
        }
        Ok(MonoidHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }
}

/// `C_1 × C_2` with its structure maps.
#[derive(Clone, Debug)]
pub struct ProductMonoid {
    pub monoid: FiniteCommMonoid,
    pub inc1: MonoidHom,
    pub inc2: MonoidHom,
    pub proj1: MonoidHom,
    pub proj2: MonoidHom,
}

impl ProductMonoid {
    /// Index of the pair `(x1, x2)`.
    pub fn pair(&self, x1: usize, x2: usize) -> usize {
        x1 * self.proj2.target.size() + x2
    }
}

/// Componentwise product on pairs in row-major order.
pub fn product_monoid(c1: &FiniteCommMonoid, c2: &FiniteCommMonoid) -> ProductMonoid {
    let (m1, m2) = (c1.size(), c2.size());
    let pair = |x: usize, y: usize| x * m2 + y;
    let table = (0..m1 * m2)
        .map(|p| {
            (0..m1 * m2)
                .map(|q| pair(c1.mul(p / m2, q / m2), c2.mul(p % m2, q % m2)))
                .collect()
        })
        .collect();
    let monoid = FiniteCommMonoid {
        identity: pair(c1.identity(), c2.identity()),
        table,
    };
    let hom = |s: &FiniteCommMonoid, t: &FiniteCommMonoid, map: Vec<usize>| MonoidHom {
        source: s.clone(),
        target: t.clone(),
        map,
    };
    ProductMonoid {
        inc1: hom(c1, &monoid, c1.elements().map(|x| pair(x, c2.identity())).collect()),
        inc2: hom(c2, &monoid, c2.elements().map(|y| pair(c1.identity(), y)).collect()),
        proj1: hom(&monoid, c1, (0..m1 * m2).map(|p| p / m2).collect()),
        proj2: hom(&monoid, c2, (0..m1 * m2).map(|p| p % m2).collect()),
        monoid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validation_examples() {
        assert!(validate_monoid(2, 0, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(validate_monoid(2, 0, vec![vec![0, 1], vec![1, 1]]).is_ok());
        let Err(Error::InvalidMonoid(v)) = validate_monoid(2, 0, vec![vec![0, 1], vec![0, 0]]) else {
            panic!("non-commutative table accepted");
        };
        assert!(v.contains(&LawViolation::NotCommutative { a: 0, b: 1 }));
        let Err(Error::InvalidMonoid(v)) = validate_monoid(2, 0, vec![vec![0, 2], vec![1, 0]]) else {
            panic!("out-of-range entry accepted");
        };
        assert_eq!(v, vec![LawViolation::OutOfRange { a: 0, b: 1, value: 2 }]);
        let Err(Error::InvalidMonoid(v)) = validate_monoid(2, 1, vec![vec![0, 1], vec![1, 0]]) else {
            panic!("wrong identity accepted");
        };
        assert_eq!(v, vec![LawViolation::BadIdentity { a: 0 }]);
    }

    #[test]
    fn builder_tables() {
        assert_eq!(cyclic_group(2).unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            truncated_add(2).unwrap().table(),
            &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]
        );
        assert_eq!(semilattice_chain(1).unwrap().table(), &[vec![0, 1], vec![1, 1]]);
        assert!(cyclic_group(0).is_err());
        assert!(trivial_monoid().is_trivial());
    }

    #[test]
    fn builder_strings() {
        let b: MonoidBuilder = "cyclic_group(2)*semilattice_chain(1)".parse().unwrap();
        assert_eq!(b.to_string(), "cyclic_group(2)*semilattice_chain(1)");
        assert_eq!(b.build().unwrap().size(), 4);
        assert!("cyclic(2)".parse::<MonoidBuilder>().is_err());
        assert!("truncated_add(x)".parse::<MonoidBuilder>().is_err());
    }

    #[test]
    fn products() {
        let z2 = cyclic_group(2).unwrap();
        let k = product_monoid(&z2, &z2);
        assert_eq!(k.monoid.identity(), 0);
        assert!(k.monoid.elements().all(|x| k.monoid.mul(x, x) == 0));
        let l = semilattice_chain(1).unwrap();
        let p = product_monoid(&l, &z2);
        let et = p.pair(1, 1);
        assert_eq!(p.monoid.mul(et, et), p.pair(1, 0));
        let t = product_monoid(&trivial_monoid(), &l);
        assert_eq!(t.monoid.table(), l.table());
        for (inc, proj) in [(&p.inc1, &p.proj1), (&p.inc2, &p.proj2)] {
            let id = inc.then(proj).unwrap();
            assert_eq!(id, MonoidHom::identity(inc.source()));
        }
    }

    #[test]
    fn quotient_sets() {
        let z2 = cyclic_group(2).unwrap();
        assert_eq!(z2.quotient_set(0, 1), vec![1]);
        let l = semilattice_chain(1).unwrap();
        assert_eq!(l.quotient_set(1, 1), vec![0, 1]);
        for a in l.elements() {
            assert_eq!(l.quotient_set(a, 0), vec![a]);
        }
    }

    #[test]
    fn json_round_trip() {
        let z2 = cyclic_group(2).unwrap();
        let s = z2.to_json();
        assert_eq!(s, r#"{"identity":0,"size":2,"table":[[0,1],[1,0]]}"#);
        assert_eq!(FiniteCommMonoid::from_json(&s).unwrap().to_json(), s);
        assert!(matches!(
            FiniteCommMonoid::from_json(r#"{"identity":0,"size":2,"table":[[0,1],[1,0]],"x":1}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            FiniteCommMonoid::from_json(r#"{"identity":0,"size":2,"table":[[0,1],[1,5]]}"#),
            Err(Error::InvalidMonoid(_))
        ));
    }

    fn small_builder() -> impl Strategy<Value = MonoidBuilder> {
        prop_oneof![
            Just(MonoidBuilder::Trivial),
            (1usize..=9).prop_map(MonoidBuilder::CyclicGroup),
            (0usize..=8).prop_map(MonoidBuilder::SemilatticeChain),
            (0usize..=8).prop_map(MonoidBuilder::TruncatedAdd),
        ]
    }

    fn size_of(b: &MonoidBuilder) -> usize {
        b.build().unwrap().size()
    }

    proptest! {
        #[test]
        fn builders_and_small_products_validate(a in small_builder(), b in small_builder()) {
            let candidates = if size_of(&a) * size_of(&b) <= 9 {
                vec![a.clone(), MonoidBuilder::Product(Box::new(a), Box::new(b))]
            } else {
                vec![a]
            };
            for m in candidates {
                let c = m.build().unwrap();
                prop_assert!(validate_monoid(c.size(), c.identity(), c.table().to_vec()).is_ok());
                for a in c.elements() {
                    let total: usize = c.elements().map(|b| c.quotient_set(b, a).len()).sum();
                    prop_assert_eq!(total, c.size());
                }
            }
        }
    }
}
