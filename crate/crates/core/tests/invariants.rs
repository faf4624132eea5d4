//! Cross-module invariants through the public API.

use monhom::codec::{canonical_string, decode_tabulated, tabulated_value};
use monhom::linalg::{rank, Snf};
use monhom::module::{jstar, std_projective, tensor_quotients, KCModule, QuotientModule, Side};
use monhom::suite::suite_coefficients;
use monhom::{
    build_complex, cokernel_group, derivations, omega, smith_normal_form, tabulate_presented, Direction,
    FgAbGroup, IntMatrix, MonoidBuilder, Ring,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn builders() -> impl Strategy<Value = MonoidBuilder> {
    let atom = prop_oneof![
        Just(MonoidBuilder::Trivial),
        (2usize..5).prop_map(MonoidBuilder::CyclicGroup),
        (1usize..3).prop_map(MonoidBuilder::SemilatticeChain),
        (1usize..4).prop_map(MonoidBuilder::TruncatedAdd),
    ];
    prop_oneof![
        3 => atom.clone(),
        1 => (atom.clone(), atom).prop_filter_map("small products", |(a, b)| {
            let p = MonoidBuilder::Product(Box::new(a), Box::new(b));
            (p.build().ok()?.size() <= 6).then_some(p)
        }),
    ]
}

fn matrices() -> impl Strategy<Value = IntMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(&rows, c))
    })
}

fn unimodular(m: &IntMatrix) -> bool {
    let d = m.determinant();
    d == BigInt::from(1) || d == BigInt::from(-1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn snf_certificate(a in matrices()) {
        let Snf { u, d, v } = smith_normal_form(&a);
        prop_assert_eq!(&(&u * &a) * &v, d.clone());
        prop_assert!(unimodular(&u) && unimodular(&v));
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i)).collect();
        for w in diag.windows(2) {
            let (x, y) = (&w[0], &w[1]);
            prop_assert!(*x >= BigInt::from(0));
            let divides = if x == &BigInt::from(0) { y == &BigInt::from(0) } else { y % x == BigInt::from(0) };
            prop_assert!(divides);
        }
        let g = cokernel_group(&a);
        prop_assert_eq!(g.free_rank(), a.rows() - rank(&a));
    }

    #[test]
    fn low_degrees_on_random_monoids(b in builders(), left in any::<bool>()) {
        let c = b.build().unwrap();
        let side = if left { Side::Left } else { Side::Right };
        let dir = if left { Direction::Cohomological } else { Direction::Homological };
        for k in suite_coefficients(&c, side) {
            let cx = build_complex(&c, &k.module, 3, dir).unwrap();
            cx.check_squares().unwrap();
            prop_assert_eq!(cx.homology(0).unwrap(), k.module.value(c.identity()));
            if left {
                prop_assert_eq!(cx.homology(1).unwrap(), derivations(&c, &k.module).unwrap().group);
            } else {
                let om = tabulate_presented(&omega(&c)).module;
                prop_assert_eq!(cx.homology(1).unwrap(), tensor_quotients(&k.module, &om).unwrap());
            }
        }
    }

    #[test]
    fn yoneda_and_module_codec(b in builders(), a in 0usize..6, x in 0usize..6) {
        let c = b.build().unwrap();
        let (a, x) = (a % c.size(), x % c.size());
        // C_a ⊗ C^x ≅ C^x(a).
        let ca: QuotientModule = std_projective(&c, a, Side::Right).into();
        let cx = std_projective(&c, x, Side::Left);
        let t = tensor_quotients(&ca, &cx.clone().into()).unwrap();
        prop_assert_eq!(t, FgAbGroup::free(cx.rank(a)));
        let text = canonical_string(&tabulated_value(&cx));
        prop_assert_eq!(decode_tabulated(&text, &c).unwrap(), cx);
    }
}

#[test]
fn rational_coefficients_forget_torsion() {
    let c = MonoidBuilder::CyclicGroup(3).build().unwrap();
    let n: QuotientModule = jstar(&KCModule::trivial(&c, Ring::Z), Side::Right).into();
    let z = build_complex(&c, &n, 4, Direction::Homological).unwrap();
    let q = z.clone().with_ring(Ring::Q);
    for d in 0..4 {
        assert_eq!(q.homology(d).unwrap().free_rank(), z.homology(d).unwrap().free_rank());
        assert!(q.homology(d).unwrap().torsion().is_empty());
    }
}
