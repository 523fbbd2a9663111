use chebotarev::abstract_model::{random_abstract_model, FiniteGroup, Measure, LIBRARY};
use chebotarev::algebra::{poly_factor, FieldElement, FieldRef, FiniteField, Poly};
use chebotarev::covers::{genus, make_cover, places_above_oracle, splitting_data, CoverDescriptor};
use chebotarev::descriptor::parse_rational;
use chebotarev::function_field::{places_up_to_degree, RationalFunction};
use chebotarev::theorem::{gamma_choices, make_gamma_context, measure, phi_fiber_count};
use proptest::prelude::*;

fn field_for(choice: usize) -> FieldRef {
    match choice % 4 {
        0 => FiniteField::prime(5).unwrap(),
        1 => FiniteField::prime(7).unwrap(),
        2 => FiniteField::standard(3, 2).unwrap(),
        _ => FiniteField::standard(2, 3).unwrap(),
    }
}

fn poly_from(k: &FieldRef, idx: &[u64]) -> Poly {
    let order = k.order() as u64;
    Poly::new(
        k,
        idx.iter()
            .map(|&i| FieldElement::from_index(k, (i % order) as u128))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(choice in 0usize..4, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let k = field_for(choice);
        let n = k.order() as u64;
        let (a, b, c) = [a, b, c].map(|i| FieldElement::from_index(&k, (i % n) as u128)).into();
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow(k.order() - 1).is_one());
        }
    }

    #[test]
    fn factorization_round_trip(choice in 0usize..4, coeffs in prop::collection::vec(0u64..1000, 1..9)) {
        let k = field_for(choice);
        let f = poly_from(&k, &coeffs);
        prop_assume!(!f.is_zero());
        let fac = poly_factor(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
    }

    #[test]
    fn product_formula(choice in 0usize..4,
                       num in prop::collection::vec(0u64..1000, 1..7),
                       den in prop::collection::vec(0u64..1000, 1..7)) {
        let k = field_for(choice);
        let (num, den) = (poly_from(&k, &num), poly_from(&k, &den));
        prop_assume!(!num.is_zero() && !den.is_zero());
        let f = RationalFunction::new(num, den).unwrap();
        let support = f.support().unwrap();
        let total: i64 = support.iter().map(|(p, v)| v * p.degree() as i64).sum();
        prop_assert_eq!(total, 0);
        // the display form parses back
        prop_assert_eq!(parse_rational(&k, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn random_kummer_matches_oracle(coeffs in prop::collection::vec(0u64..5, 2..5), n_choice in 0usize..2) {
        let k = FiniteField::prime(5).unwrap();
        let n = [2, 4][n_choice];
        let f = RationalFunction::from_poly(poly_from(&k, &coeffs));
        let Ok(cover) = make_cover(&k, &CoverDescriptor::Kummer { n, f }) else {
            return Ok(());
        };
        for place in places_up_to_degree(&k, 1, 100).unwrap() {
            let data = splitting_data(&cover, &place).unwrap();
            let fiber = places_above_oracle(&cover, &place, 1_000_000).unwrap();
            prop_assert!(fiber.disagreements(&data).is_empty(), "{:?}", fiber.disagreements(&data));
            let total: Measure = cover
                .group()
                .elements()
                .iter()
                .map(|g| measure(&data, &cover, g).unwrap())
                .sum();
            prop_assert_eq!(total, Measure::from_integer(1));
        }
    }

    #[test]
    fn random_artin_schreier_matches_oracle(num in prop::collection::vec(0u64..5, 1..5),
                                            pole in 0u64..5, with_pole in any::<bool>()) {
        let k = FiniteField::prime(5).unwrap();
        let mut f = RationalFunction::from_poly(poly_from(&k, &num));
        if with_pole {
            let den = Poly::linear(&FieldElement::from_u64(&k, pole));
            f = f.add(&RationalFunction::new(Poly::one(&k), den).unwrap());
        }
        let Ok(cover) = make_cover(&k, &CoverDescriptor::ArtinSchreier { f }) else {
            return Ok(());
        };
        for place in places_up_to_degree(&k, 2, 100).unwrap() {
            let data = splitting_data(&cover, &place).unwrap();
            let fiber = places_above_oracle(&cover, &place, 1_000_000).unwrap();
            prop_assert!(fiber.disagreements(&data).is_empty());
        }
    }

    #[test]
    fn klein_four_genus_splits(a in prop::collection::vec(0u64..5, 2..5), b in prop::collection::vec(0u64..5, 2..5)) {
        let k = FiniteField::prime(5).unwrap();
        let f1 = RationalFunction::from_poly(poly_from(&k, &a));
        let f2 = RationalFunction::from_poly(poly_from(&k, &b));
        let kummer = |f: RationalFunction| CoverDescriptor::Kummer { n: 2, f };
        let both = CoverDescriptor::Composite(vec![kummer(f1.clone()), kummer(f2.clone())]);
        let Ok(cover) = make_cover(&k, &both) else {
            return Ok(());
        };
        let g = |f: RationalFunction| genus(&make_cover(&k, &kummer(f)).unwrap()).unwrap();
        prop_assert_eq!(genus(&cover).unwrap(), g(f1.clone()) + g(f2.clone()) + g(f1.mul(&f2)));
    }

    #[test]
    fn coset_partition(which in 0usize..4) {
        let k = FiniteField::prime(5).unwrap();
        let s = ["kummer:2:x^3+x", "as:x^2+1/x", "compose:[kummer:4:x,const:3]", "const:2"][which];
        let d = chebotarev::descriptor::parse_cover(&k, s).unwrap();
        let cover = make_cover(&k, &d).unwrap();
        let n = cover.geometric_order();
        for place in places_up_to_degree(&k, 1, 100).unwrap() {
            let data = splitting_data(&cover, &place).unwrap();
            let mut fibers = 0;
            for gamma in gamma_choices(&cover) {
                let ctx = make_gamma_context(&cover, &gamma).unwrap();
                fibers += phi_fiber_count(&ctx, &data).unwrap();
            }
            prop_assert_eq!(fibers, n);
        }
    }

    #[test]
    fn abstract_models(group in 0usize..LIBRARY.len(), seed in any::<u64>()) {
        let g = FiniteGroup::library(LIBRARY[group]).unwrap();
        let model = random_abstract_model(&g, seed);
        prop_assert!(model.validate().is_ok());
        for i in 0..model.places.len() {
            let total: Measure = g.elements().map(|x| model.measure(i, x).unwrap()).sum();
            prop_assert_eq!(total, Measure::from_integer(1));
            // unramified places put all mass on one conjugacy class
            if model.places[i].inertia.len() == 1 {
                let rep = model.places[i].frobenius_rep;
                let class = g.conjugacy_class(rep);
                for x in g.elements() {
                    let m = model.measure(i, x).unwrap();
                    let expected = if class.contains(&x) { Measure::new(1, class.len() as u64) } else { Measure::from_integer(0) };
                    prop_assert_eq!(m, expected);
                }
            }
        }
    }
}

#[test]
fn group_element_parsing_matches_display() {
    let k = FiniteField::prime(5).unwrap();
    let d = chebotarev::descriptor::parse_cover(&k, "compose:[kummer:2:x,const:3]").unwrap();
    let cover = make_cover(&k, &d).unwrap();
    for g in cover.group().elements() {
        assert_eq!(cover.group().parse_element(&g.to_string()).unwrap(), g);
    }
    assert!(cover.group().parse_element("(1,2,3)").is_err());
}
