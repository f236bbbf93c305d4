use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use svir_core::algebra::{antisymmetry_residual, bracket, parity_weight, ElementParity};
use svir_core::lattice::{lemma31_basis, lemma32_basis, unimodular_det};
use svir_core::parse::{parse_algebra, parse_module, parse_scalar, print_algebra, print_module};
use svir_core::repmod::{box_vectors, closure, BoxSpec, Family, ModuleSpec};
use svir_core::algebra::lemma32_bracket_witness;
use svir_core::scalar::gcd;
use svir_core::{
    AlgebraConfig, AlgebraElement, BasisElt, HalfInt, IndexVector, ModuleBasisVector, ModuleVector,
    Parity, Scalar, Symbols,
};

fn rank2() -> AlgebraConfig {
    AlgebraConfig::standard(2, vec![HalfInt::from_twice(1), HalfInt::ZERO]).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Small polynomials in the first four indeterminates.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(((-5i64..=5, 1i64..=4), prop::collection::vec(0u32..=2, 4)), 0..4).prop_map(
        |terms| {
            terms
                .into_iter()
                .map(|((n, d), exps)| {
                    exps.iter().enumerate().fold(Scalar::from_ratio(n, d), |acc, (v, &e)| {
                        acc * Scalar::var(v).pow(e as i32).unwrap()
                    })
                })
                .sum()
        },
    )
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            n
        } else {
            n.checked_div(&d).unwrap()
        }
    })
}

fn even_index() -> impl Strategy<Value = IndexVector> {
    prop::collection::vec(-3i64..=3, 2).prop_map(|c| IndexVector::even(&c))
}

fn odd_index() -> impl Strategy<Value = IndexVector> {
    (-3i64..=2, -3i64..=3).prop_map(|(a, b)| rank2().odd_twice(&[2 * a + 1, 2 * b]).unwrap())
}

fn basis_elt() -> impl Strategy<Value = BasisElt> {
    prop_oneof![
        4 => even_index().prop_map(BasisElt::L),
        4 => odd_index().prop_map(BasisElt::G),
        1 => Just(BasisElt::C),
    ]
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((scalar(), basis_elt()), 0..4).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (c, b) in terms {
            e.add_term(b, c);
        }
        e
    })
}

fn point() -> HashMap<String, BigRational> {
    [("d1", q(3, 7)), ("d2", q(-5, 11)), ("a", q(2, 13)), ("b", q(-7, 17)), ("a'", q(1, 3))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x - &x, Scalar::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(x in poly(), y in poly(), z in poly()) {
        let (p, q, r) = (x.numerator().clone(), y.numerator().clone(), z.numerator().clone());
        prop_assume!(!r.is_zero() && !(p.is_zero() && q.is_zero()));
        let (a, b) = (p.mul(&r), q.mul(&r));
        let g = gcd(&a, &b);
        prop_assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&r.monic()).is_some());
        let (ra, rb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
        prop_assert!(gcd(&ra, &rb).is_one());
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar(), y in scalar()) {
        let s = rank2().symbols().clone();
        let p = point();
        if let (Ok(ex), Ok(ey)) = (x.evaluate(&s, &p), y.evaluate(&s, &p)) {
            prop_assert_eq!((&x + &y).evaluate(&s, &p).unwrap(), &ex + &ey);
            prop_assert_eq!((&x * &y).evaluate(&s, &p).unwrap(), &ex * &ey);
        }
    }

    #[test]
    fn scalar_print_parse(x in scalar()) {
        let s = rank2().symbols().clone();
        let text = x.display(&s).to_string();
        prop_assert_eq!(parse_scalar(&s, &text).unwrap(), x);
    }

    #[test]
    fn algebra_print_parse(e in element()) {
        let c = rank2();
        let text = print_algebra(&e, c.symbols());
        prop_assert_eq!(parse_algebra(&c, &text).unwrap(), e);
    }

    #[test]
    fn module_print_parse(terms in prop::collection::vec((scalar(), even_index(), odd_index(), any::<bool>()), 0..4)) {
        let c = rank2();
        let mut v = ModuleVector::zero();
        for (k, e, o, is_x) in terms {
            let b = if is_x { ModuleBasisVector::x(e) } else { ModuleBasisVector::y(o) };
            v.add_term(b, k);
        }
        let text = print_module(&v, c.symbols());
        prop_assert_eq!(parse_module(&c, Family::SA, &text).unwrap(), v);
    }

    #[test]
    fn graded_antisymmetry(x in basis_elt(), y in basis_elt()) {
        prop_assert!(antisymmetry_residual(&rank2(), &x, &y).is_zero());
    }

    #[test]
    fn bracket_is_bilinear(x in element(), y in element(), z in element(), k in scalar()) {
        let c = rank2();
        prop_assert_eq!(bracket(&c, &x.add(&y), &z), bracket(&c, &x, &z).add(&bracket(&c, &y, &z)));
        prop_assert_eq!(bracket(&c, &x.scale(&k), &z), bracket(&c, &x, &z).scale(&k));
    }

    #[test]
    fn weights_add(x in basis_elt(), y in basis_elt()) {
        let c = rank2();
        let (ex, ey) = (AlgebraElement::basis(x), AlgebraElement::basis(y));
        let br = bracket(&c, &ex, &ey);
        let (pb, wb) = parity_weight(&c, &br);
        let (px, wx) = parity_weight(&c, &ex);
        let (py, wy) = parity_weight(&c, &ey);
        if !br.is_zero() {
            let odd = |p: ElementParity| p == ElementParity::Odd;
            prop_assert_eq!(odd(pb), odd(px) != odd(py));
            // A central term carries weight 0, which is also wx + wy then.
            prop_assert_eq!(wb.unwrap(), wx.unwrap() + wy.unwrap());
        }
    }

    #[test]
    fn embedding_is_injective(x in even_index(), y in even_index(), u in odd_index(), v in odd_index()) {
        let c = rank2();
        prop_assert_eq!(c.embed(&x) == c.embed(&y), x == y);
        prop_assert_eq!(c.embed(&u) == c.embed(&v), u == v);
    }

    #[test]
    fn lemma31_is_unimodular(n in 2usize..=4, k in 0u32..=6) {
        prop_assert_eq!(unimodular_det(&lemma31_basis(n, k)), 1);
    }

    #[test]
    fn lemma32_rank2(m in prop::collection::vec(-4i64..=4, 2)) {
        let c = rank2();
        let mu = IndexVector::even(&m);
        prop_assert_eq!(lemma32_basis(&mu).unwrap().basis.det().abs(), 1);
        prop_assert!(lemma32_bracket_witness(&c, &mu).unwrap().verified());
    }

    #[test]
    fn closure_is_monotone_and_idempotent(
        fam in prop_oneof![Just(Family::SA), Just(Family::SAPrime), Just(Family::SBPrime)],
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
        extra in any::<prop::sample::Index>(),
    ) {
        let c = rank2();
        let spec = ModuleSpec::symbolic(&c, fam).unwrap();
        let bx = BoxSpec::int(1).unwrap();
        let all = box_vectors(&c, fam, bx.radius());
        let small: BTreeSet<_> = picks.iter().map(|i| i.get(&all).clone()).collect();
        let mut big = small.clone();
        big.insert(extra.get(&all).clone());
        let cs = closure(&c, &spec, &small, &bx).unwrap();
        let cb = closure(&c, &spec, &big, &bx).unwrap();
        prop_assert!(small.is_subset(&cs));
        prop_assert!(cs.is_subset(&cb));
        prop_assert_eq!(closure(&c, &spec, &cs, &bx).unwrap(), cs);
    }
}

#[test]
fn lemma32_rank3_exhaustive() {
    let c = AlgebraConfig::standard(3, vec![HalfInt::from_twice(1), HalfInt::ZERO, HalfInt::ZERO]).unwrap();
    for a in -4..=4 {
        for b in -4..=4 {
            for d in -4..=4 {
                let mu = IndexVector::even(&[a, b, d]);
                let basis = lemma32_basis(&mu).unwrap();
                assert_eq!(basis.basis.det().abs(), 1, "{mu}");
                assert!(lemma32_bracket_witness(&c, &mu).unwrap().verified(), "{mu}");
            }
        }
    }
}

#[test]
fn declared_symbols_only() {
    let s = Symbols::new(["d1"]).unwrap();
    assert!(parse_scalar(&s, "d2").is_err());
    assert_eq!(
        IndexVector::zero(2).parity(),
        Parity::Even
    );
}
