use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`, stored 0-based: `images[i] = σ(i+1) − 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::BadParams(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        Perm::new(images.iter().map(|&v| v.wrapping_sub(1)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// The transposition of positions `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.images.swap(i, j);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    pub fn sign(&self) -> i64 {
        let n = self.images.len();
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Move the entry at position `i` to position `σ(i)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out = items.to_vec();
        for (i, item) in items.iter().enumerate() {
            out[self.images[i]] = item.clone();
        }
        out
    }

    /// All permutations of `{1..n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", one.join(" "))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rational combination of permutations of `{1..n}`: an element of `ℚ[S_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymGroupElement {
    n: usize,
    terms: BTreeMap<Perm, BigRational>,
}

impl SymGroupElement {
    pub fn zero(n: usize) -> Self {
        SymGroupElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymGroupElement::from_perm(Perm::identity(n))
    }

    pub fn from_perm(p: Perm) -> Self {
        let n = p.degree();
        SymGroupElement {
            n,
            terms: BTreeMap::from([(p, BigRational::one())]),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Perm, BigRational)>) -> Result<Self> {
        let mut e = SymGroupElement::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(Error::DegreeMismatch(format!("{p} is not in S_{n}")));
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, p: Perm, c: BigRational) {
        let entry = self.terms.entry(p.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Perm) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, s: &BigRational) -> SymGroupElement {
        if s.is_zero() {
            return SymGroupElement::zero(self.n);
        }
        SymGroupElement {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect(),
        }
    }

    /// `self − λ·id`.
    pub fn shift(&self, lambda: &BigRational) -> SymGroupElement {
        self - &SymGroupElement::identity(self.n).scale(lambda)
    }

    /// The image under `σ ↦ σ^{-1}`.
    pub fn antipode(&self) -> SymGroupElement {
        SymGroupElement {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect(),
        }
    }
}

impl<'a> Add<&'a SymGroupElement> for &'a SymGroupElement {
    type Output = SymGroupElement;
    fn add(self, rhs: &SymGroupElement) -> SymGroupElement {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymGroupElement> for &'a SymGroupElement {
    type Output = SymGroupElement;
    fn sub(self, rhs: &SymGroupElement) -> SymGroupElement {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl<'a> Mul<&'a SymGroupElement> for &'a SymGroupElement {
    type Output = SymGroupElement;
    /// Group-algebra product, `σ·τ = σ ∘ τ`.
    fn mul(self, rhs: &SymGroupElement) -> SymGroupElement {
        assert_eq!(self.n, rhs.n);
        let mut acc: BTreeMap<Perm, BigRational> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                *acc.entry(p.compose(q)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SymGroupElement {
            n: self.n,
            terms: acc,
        }
    }
}

impl fmt::Debug for SymGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}){p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sh_{p_1..p_k} = Σ sgn(σ)σ` over the permutations increasing on each
/// consecutive block of sizes `p_1, …, p_k`.
pub fn shuffle_element(parts: &[usize]) -> Result<SymGroupElement> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::BadParams("shuffle block sizes must be positive".into()));
    }
    let n: usize = parts.iter().sum();
    let mut terms = Vec::new();
    // Assign to every block the set of positions it occupies, in order.
    let mut images = vec![0; n];
    let mut free: Vec<usize> = (0..n).collect();
    fn rec(
        parts: &[usize],
        start: usize,
        free: &mut Vec<usize>,
        images: &mut Vec<usize>,
        terms: &mut Vec<(Perm, BigRational)>,
    ) {
        let Some((&p, rest)) = parts.split_first() else {
            let perm = Perm {
                images: images.clone(),
            };
            let s = perm.sign();
            terms.push((perm, BigRational::from_integer(s.into())));
            return;
        };
        for chosen in combinations(free.len(), p) {
            let positions: Vec<usize> = chosen.iter().map(|&k| free[k]).collect();
            for (off, &pos) in positions.iter().enumerate() {
                images[start + off] = pos;
            }
            let saved = free.clone();
            free.retain(|x| !positions.contains(x));
            rec(rest, start + p, free, images, terms);
            *free = saved;
        }
    }
    rec(parts, 0, &mut free, &mut images, &mut terms);
    SymGroupElement::from_terms(n, terms)
}

/// Increasing `k`-subsets of `0..n`, lexicographically.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Ordered compositions of `n` with at least `min_parts` positive parts.
pub fn compositions(n: usize, min_parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out.retain(|c| c.len() >= min_parts);
    out
}

/// Partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Adjacent transpositions generating the Young subgroup `Σ_{λ_1} × … × Σ_{λ_k}`.
pub fn young_generators(lambda: &[usize]) -> Vec<Perm> {
    let n: usize = lambda.iter().sum();
    let mut gens = Vec::new();
    let mut start = 0;
    for &l in lambda {
        for i in start..start + l.saturating_sub(1) {
            gens.push(Perm::transposition(n, i, i + 1));
        }
        start += l;
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_shuffles() {
        let s11 = shuffle_element(&[1, 1]).unwrap();
        let tau = Perm::transposition(2, 0, 1);
        let expect = SymGroupElement::from_terms(2, [(Perm::identity(2), q(1)), (tau, q(-1))]).unwrap();
        assert_eq!(s11, expect);
        assert_eq!(shuffle_element(&[3]).unwrap(), SymGroupElement::identity(3));
        assert_eq!(shuffle_element(&[1, 2]).unwrap().num_terms(), 3);
        assert_eq!(shuffle_element(&[2, 2]).unwrap().num_terms(), 6);
        assert_eq!(shuffle_element(&[1, 1, 1]).unwrap().num_terms(), 6);
        assert!(shuffle_element(&[0, 2]).is_err());
    }

    #[test]
    fn shuffles_are_increasing_on_blocks() {
        for (p, _) in shuffle_element(&[2, 3]).unwrap().terms() {
            assert!(p.apply(0) < p.apply(1));
            assert!(p.apply(2) < p.apply(3) && p.apply(3) < p.apply(4));
        }
    }

    #[test]
    fn counting() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(compositions(4, 2).len(), 7);
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(young_generators(&[2, 1, 2]).len(), 2);
    }

    #[test]
    fn permute_routes_entries() {
        let s = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(s.permute(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        let t = Perm::transposition(3, 0, 1);
        let st = s.compose(&t);
        assert_eq!(st.permute(&['a', 'b', 'c']), s.permute(&t.permute(&['a', 'b', 'c'])));
    }

    proptest! {
        #[test]
        fn group_algebra_is_associative(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
            let all = Perm::all(4);
            let x = &SymGroupElement::from_perm(all[a].clone()) + &SymGroupElement::identity(4);
            let y = SymGroupElement::from_perm(all[b].clone());
            let z = &SymGroupElement::from_perm(all[c].clone()) - &SymGroupElement::from_perm(all[a].clone());
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(all[a].compose(&all[b]).sign(), all[a].sign() * all[b].sign());
        }
    }
}
