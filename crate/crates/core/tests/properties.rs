use proptest::prelude::*;
use racg_hecke_core::catalog;
use racg_hecke_core::hecke::{adjoint, conditional_expectation, hecke_multiply, inner_product, trace};
use racg_hecke_core::multipliers::{radial_multiplier, wordlength_projection, Sign, SignedSetVector};
use racg_hecke_core::word::reduce;
use racg_hecke_core::{Clique, CoxeterGraph, HeckeElement, PolyScalar, Rational};

fn graph(i: usize) -> CoxeterGraph {
    catalog::test_graphs().swap_remove(i).1
}

/// Up to three basis terms with small polynomial coefficients.
fn element(g: &CoxeterGraph, raw: &[(Vec<u8>, i64, i64)]) -> HeckeElement {
    let rank = g.rank() as u8;
    HeckeElement::from_terms(raw.iter().map(|(letters, c0, c1)| {
        let letters: Vec<u8> = letters.iter().map(|l| l % rank).collect();
        let coeff = PolyScalar::from_terms([(0, Rational::integer(*c0 as i128)), (1, Rational::integer(*c1 as i128))]);
        (reduce(g, &letters).unwrap(), coeff)
    }))
}

fn raw_element() -> impl Strategy<Value = Vec<(Vec<u8>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(any::<u8>(), 0..5), -3i64..4, -2i64..3), 1..4)
}

fn mul(g: &CoxeterGraph, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    hecke_multiply(g, a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(gi in 0usize..6, a in raw_element(), b in raw_element(), c in raw_element()) {
        let g = graph(gi);
        let (a, b, c) = (element(&g, &a), element(&g, &b), element(&g, &c));
        prop_assert_eq!(mul(&g, &mul(&g, &a, &b), &c), mul(&g, &a, &mul(&g, &b, &c)));
    }

    #[test]
    fn adjoint_reverses_products(gi in 0usize..6, a in raw_element(), b in raw_element()) {
        let g = graph(gi);
        let (a, b) = (element(&g, &a), element(&g, &b));
        prop_assert_eq!(adjoint(&g, &mul(&g, &a, &b)), mul(&g, &adjoint(&g, &b), &adjoint(&g, &a)));
        prop_assert_eq!(adjoint(&g, &adjoint(&g, &a)), a);
    }

    #[test]
    fn trace_is_tracial(gi in 0usize..6, a in raw_element(), b in raw_element()) {
        let g = graph(gi);
        let (a, b) = (element(&g, &a), element(&g, &b));
        prop_assert_eq!(trace(&mul(&g, &a, &b)), trace(&mul(&g, &b, &a)));
        prop_assert_eq!(inner_product(&g, &a, &b), trace(&mul(&g, &adjoint(&g, &b), &a)));
    }

    #[test]
    fn expectation_is_a_bimodule_projection(gi in 0usize..6, subset in 0u64..32, x in raw_element(), a in raw_element(), b in raw_element()) {
        let g = graph(gi);
        let subset = subset & g.all();
        let e = |y: &HeckeElement| conditional_expectation(&g, subset, y).unwrap();
        let x = element(&g, &x);
        let a = e(&element(&g, &a));
        let b = e(&element(&g, &b));
        prop_assert_eq!(e(&e(&x)), e(&x));
        prop_assert_eq!(e(&mul(&g, &mul(&g, &a, &x), &b)), mul(&g, &mul(&g, &a, &e(&x)), &b));
        prop_assert_eq!(trace(&e(&x)), trace(&x));
    }

    #[test]
    fn radial_multipliers_form_a_semigroup(gi in 0usize..6, x in raw_element(), r in 1i128..=8, s in 1i128..=8) {
        let g = graph(gi);
        let x = element(&g, &x);
        let (r, s) = (Rational::new(r, 8), Rational::new(s, 8));
        let twice = radial_multiplier(r, &radial_multiplier(s, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, radial_multiplier(r * s, &x).unwrap());
        prop_assert_eq!(radial_multiplier(Rational::integer(1), &x).unwrap(), x);
    }

    #[test]
    fn wordlength_projection_is_idempotent(gi in 0usize..6, x in raw_element(), n in 0usize..5) {
        let g = graph(gi);
        let x = element(&g, &x);
        let once = wordlength_projection(n, &x);
        prop_assert_eq!(wordlength_projection(n, &once), once.clone());
        prop_assert!(once.max_length() <= n);
    }

    #[test]
    fn signed_set_pairing_matches_subset_sum(a in 0u64..64, b in 0u64..64, sa in any::<bool>(), sb in any::<bool>()) {
        let sign = |plus: bool| if plus { Sign::Plus } else { Sign::Minus };
        let of = |plus: bool, size: u32| if plus || size.is_multiple_of(2) { 1i64 } else { -1 };
        let common = a & b;
        let mut direct = 0;
        let mut omega = common;
        loop {
            direct += of(sa, omega.count_ones()) * of(sb, omega.count_ones());
            if omega == 0 {
                break;
            }
            omega = (omega - 1) & common;
        }
        let k6 = catalog::complete(6);
        let x = SignedSetVector::new(Clique::new(&k6, a).unwrap(), sign(sa));
        let y = SignedSetVector::new(Clique::new(&k6, b).unwrap(), sign(sb));
        prop_assert_eq!(x.pairing(&y), direct);
    }
}
