//! Conventions fixed by exhaustive search; each test pins the adopted choice
//! and shows the alternative reading fails.

use racg_hecke_core::catalog;
use racg_hecke_core::multipliers::{aux_sum, aux_sum_check, cutdown_identity_check, f_indicator, CutdownConvention};
use racg_hecke_core::suites::aux_instances;
use racg_hecke_core::word::{multiply, right_descents, DEFAULT_BALL_CAP};
use racg_hecke_core::Clique;

#[test]
fn cutdown_needs_plus_dilation_on_input() {
    let g = catalog::free(3);
    for n in 0..=2 {
        let standard = cutdown_identity_check(&g, n, 4, CutdownConvention::Standard, DEFAULT_BALL_CAP).unwrap();
        assert!(standard.passed(), "n = {n}: {:?}", standard.failures.first());
    }
    let swapped = cutdown_identity_check(&g, 2, 4, CutdownConvention::Swapped, DEFAULT_BALL_CAP).unwrap();
    assert!(!swapped.passed());
}

#[test]
fn reindexing_raises_the_parameter() {
    for (name, g) in catalog::small_test_graphs() {
        let mut reversed_failures = 0;
        let instances = aux_instances(&g, 4, 2, DEFAULT_BALL_CAP).unwrap();
        for i in &instances {
            assert!(aux_sum_check(&g, &i.x, &i.u_prime, &i.u_doubleprime, &i.v, i.a).unwrap(), "{name}");
            let lowered = i.a - 2 * i.u_prime.len() as i64 + 2 * i.u_doubleprime.len() as i64;
            let lhs = aux_sum(&g, &i.x, &i.u_prime, &i.u_doubleprime, &i.v, i.a, lowered).unwrap();
            let shift = multiply(&g, &i.u_prime, &i.u_doubleprime).unwrap();
            let sv = multiply(&g, &shift, &i.v).unwrap();
            let lam = Clique::new(&g, right_descents(&g, &i.v) & !right_descents(&g, &sv)).unwrap();
            if lhs != f_indicator(&g, &i.v, lam, i.a) as i64 {
                reversed_failures += 1;
            }
        }
        let shifted = instances.iter().any(|i| i.u_prime.len() != i.u_doubleprime.len());
        assert!(!shifted || reversed_failures > 0, "{name}: the lowered parameter never fails");
    }
}
