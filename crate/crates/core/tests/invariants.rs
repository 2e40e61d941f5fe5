use num_rational::BigRational;
use proptest::prelude::*;

use arrangement_core::algebra::{Monomial, Polynomial};
use arrangement_core::arrangement::{Arrangement, IntersectionLattice};
use arrangement_core::classification::{classify, classify_over, Kind};
use arrangement_core::groebner::{buchberger, groebner_with_cofactors, normal_form, verify_groebner, Ideal};
use arrangement_core::{Field, Rat};

const L: usize = 3;

fn poly() -> impl Strategy<Value = Polynomial<Rat>> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4, 1i64..=3), 0..5).prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|((a, b, c), k, d)| (Monomial::new(&[a, b, c]), Rat::new(k, d)))
            .collect();
        Polynomial::from_terms(L, terms)
    })
}

fn arrangement(l: usize, max_n: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, l), 1..=max_n).prop_filter_map("degenerate", |rows| {
        let mut keep: Vec<Vec<i64>> = Vec::new();
        for r in rows {
            if r.iter().all(|&c| c == 0) {
                continue;
            }
            let probe = keep.iter().cloned().chain(std::iter::once(r.clone())).collect();
            if Arrangement::from_rows(probe).is_ok() {
                keep.push(r);
            }
        }
        Arrangement::from_rows(keep).ok().filter(|a| !a.is_empty())
    })
}

fn sorted(k: &Kind) -> Kind {
    match k.clone() {
        Kind::Free { mut exponents } => {
            exponents.sort_unstable();
            Kind::Free { exponents }
        }
        Kind::PlusOneGenerated { mut poexp, level } => {
            poexp.sort_unstable();
            Kind::PlusOneGenerated { poexp, level }
        }
        Kind::Other => Kind::Other,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalars_match_the_reference(a in poly(), b in poly()) {
        let to_big = |p: &Polynomial<Rat>| p.map_coeffs(|c| c.to_ratio());
        prop_assert_eq!(to_big(&(&a * &b)), &to_big(&a) * &to_big(&b));
        prop_assert_eq!(to_big(&(&a - &b)), &to_big(&a) - &to_big(&b));
    }

    #[test]
    fn groebner_bases_certify_themselves(gens in prop::collection::vec(poly(), 1..4)) {
        let gb = groebner_with_cofactors(&gens).unwrap();
        prop_assert!(verify_groebner(&gens, &gb));
        let plain = buchberger(&gens);
        prop_assert_eq!(plain.len(), gb.len());
        for g in &gens {
            prop_assert!(normal_form(g, &plain).unwrap().is_zero());
        }
    }

    #[test]
    fn products_lie_in_the_ideal(gens in prop::collection::vec(poly(), 1..3), f in poly()) {
        let ideal = Ideal::new(L, gens.clone()).unwrap();
        let p = &gens[0] * &f;
        prop_assert!(ideal.contains(&p).unwrap());
        let r = ideal.normal_form(&f).unwrap();
        prop_assert_eq!(ideal.normal_form(&r).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_matches_brute_force(a in arrangement(4, 6)) {
        prop_assert_eq!(a.lattice(), IntersectionLattice::brute_force(&a));
    }

    #[test]
    fn classification_is_invariant(a in arrangement(3, 6), seed in 0usize..100) {
        let c = classify(&a);
        let n = a.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + seed) % n).collect();
        let p = classify(&a.permuted(&perm).unwrap());
        prop_assert_eq!(sorted(&p.kind), sorted(&c.kind));
        prop_assert_eq!(&p.betti, &c.betti);
        let m: Vec<Vec<Rat>> = vec![
            vec![Rat::integer(1), Rat::integer(2), Rat::integer(0)],
            vec![Rat::integer(0), Rat::integer(1), Rat::integer(-1)],
            vec![Rat::integer(1), Rat::integer(0), Rat::integer(1)],
        ];
        let t = classify(&a.transform(&m).unwrap());
        prop_assert_eq!(sorted(&t.kind), sorted(&c.kind));
        prop_assert_eq!(&t.betti, &c.betti);
        if let Kind::Free { exponents } = &c.kind {
            prop_assert_eq!(exponents.iter().sum::<i64>(), n as i64);
        }
    }

    #[test]
    fn reference_scalar_agrees(a in arrangement(3, 5)) {
        let c = classify(&a);
        let r = classify_over::<BigRational>(&a);
        prop_assert_eq!(c.kind, r.kind);
        prop_assert_eq!(c.betti, r.betti);
    }
}
