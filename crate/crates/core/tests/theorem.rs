use proptest::prelude::*;

use genus2_scrolls::instance::{build_instance, InstanceSpec};
use genus2_scrolls::scroll::{curve_quadrics_exact, expected_curve_quadrics, expected_scroll_quadrics};
use genus2_scrolls::verify::{compute_quadrics, expected_overlap, verify_ideal_sum};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_sum_and_dimensions(d in 6usize..=11, seed in any::<u64>(), big in any::<bool>()) {
        let p = if big { 10007 } else { 7919 };
        let inst = build_instance(&InstanceSpec::new(p, d, seed)).unwrap();
        let r = verify_ideal_sum(&inst).unwrap();
        prop_assert!(r.theorem_holds);
        prop_assert!(r.qs_in_qc && r.qv_in_qc);
        prop_assert_eq!(r.dims.q_c, expected_curve_quadrics(d));
        prop_assert_eq!(r.dims.q_s, expected_scroll_quadrics(d, 2));
        prop_assert_eq!(r.dims.q_v, expected_scroll_quadrics(d, 3));
        prop_assert_eq!(r.dims.q_overlap, expected_overlap(d));
        prop_assert_eq!(r.dims.q_s + r.dims.q_v - r.dims.q_overlap, r.dims.q_sum);
    }

    // sampled quadrics through many points agree with the kernel of
    // Sym^2 L(H) -> L(2H)
    #[test]
    fn sampled_curve_quadrics_are_exact(d in 6usize..=10, seed in any::<u64>()) {
        let inst = build_instance(&InstanceSpec::new(10007, d, seed)).unwrap();
        let q = compute_quadrics(&inst, &mut inst.spec.rng(1)).unwrap();
        let exact = curve_quadrics_exact(&inst.emb);
        prop_assert_eq!(q.c.space(), exact.space());
    }
}
