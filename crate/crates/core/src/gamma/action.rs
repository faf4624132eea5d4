use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::complex::GammaChainComplex;
use super::pointed::PointedMap;
use super::sym::{Perm, SymGroupElement};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

/// Integer form `(numerators, common denominator)` of a group-algebra element.
pub(crate) fn integer_form(e: &SymGroupElement) -> (Vec<(Perm, BigInt)>, BigInt) {
    let denom = e.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let terms = e
        .terms()
        .map(|(p, c)| (p.clone(), c.numer() * (&denom / c.denom())))
        .collect();
    (terms, denom)
}

/// Integer matrix of `Σ c_σ σ` for integer coefficients.
pub(crate) fn perm_combination(complex: &GammaChainComplex, n: usize, terms: &[(Perm, BigInt)]) -> Result<IntMatrix> {
    if terms.is_empty() {
        return Ok(IntMatrix::zeros(complex.dim(n), complex.dim(n)));
    }
    let maps: Vec<(PointedMap, BigInt)> = terms
        .iter()
        .map(|(p, c)| (PointedMap::from_permutation(p.images()), c.clone()))
        .collect();
    complex.combination(&maps)
}

/// The action of `e ∈ ℚ[S_n]` on degree `n` of the complex: `σ` moves the
/// summand `(a_1..a_n)` to the one with `a_i` in position `σ(i)`, with the
/// identity on coefficients. On cochains this is the contravariant action
/// `ψ ↦ ψ∘σ`, so there `στ` acts as `matrix(τ)·matrix(σ)`.
pub fn sym_action(complex: &GammaChainComplex, n: usize, e: &SymGroupElement) -> Result<RatMatrix> {
    if e.degree() != n {
        return Err(Error::DegreeMismatch(format!(
            "element of S_{} acting in degree {n}",
            e.degree()
        )));
    }
    if n > complex.n_max() {
        return Err(Error::IndexOutOfRange(format!("degree {n} above cap {}", complex.n_max())));
    }
    let (terms, denom) = integer_form(e);
    Ok(RatMatrix::new(perm_combination(complex, n, &terms)?, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{build_complex, shuffle_element, Direction};
    use crate::linalg::Ring;
    use crate::module::{jstar, std_projective, KCModule, QuotientModule, Side};
    use crate::monoid::{cyclic_group, trivial_monoid, truncated_add};
    use proptest::prelude::*;

    #[test]
    fn shuffle_on_trivial_monoid_vanishes() {
        let t = trivial_monoid();
        let n: QuotientModule = jstar(&KCModule::trivial(&t, Ring::Z), Side::Right).into();
        let cx = build_complex(&t, &n, 2, Direction::Homological).unwrap();
        assert!(sym_action(&cx, 2, &shuffle_element(&[1, 1]).unwrap()).unwrap().is_zero());
        assert!(sym_action(&cx, 2, &SymGroupElement::identity(2)).unwrap().is_identity());
        assert!(sym_action(&cx, 3, &SymGroupElement::identity(2)).is_err());
    }

    #[test]
    fn routes_tuples() {
        let z2 = cyclic_group(2).unwrap();
        let n: QuotientModule = jstar(&KCModule::trivial(&z2, Ring::Z), Side::Right).into();
        let cx = build_complex(&z2, &n, 2, Direction::Homological).unwrap();
        let tau = SymGroupElement::from_perm(Perm::transposition(2, 0, 1));
        let m = sym_action(&cx, 2, &tau).unwrap();
        // (0,1) has index 1 and goes to (1,0), index 2.
        assert_eq!(m.get(2, 1), num_rational::BigRational::one());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn action_is_multiplicative(a in 0usize..24, b in 0usize..24, x in 0usize..3) {
            let c = truncated_add(2).unwrap();
            let all = Perm::all(4);
            let (s, t) = (all[a].clone(), all[b].clone());
            let st = SymGroupElement::from_perm(s.compose(&t));
            let (es, et) = (SymGroupElement::from_perm(s), SymGroupElement::from_perm(t));
            let right: QuotientModule = std_projective(&c, x, Side::Right).into();
            let hom = build_complex(&c, &right, 4, Direction::Homological).unwrap();
            let m = |e: &SymGroupElement| sym_action(&hom, 4, e).unwrap();
            prop_assert_eq!(m(&st), &m(&es) * &m(&et));
            let left: QuotientModule = std_projective(&c, x, Side::Left).into();
            let coh = build_complex(&c, &left, 4, Direction::Cohomological).unwrap();
            let m = |e: &SymGroupElement| sym_action(&coh, 4, e).unwrap();
            prop_assert_eq!(m(&st), &m(&et) * &m(&es));
        }
    }
}
