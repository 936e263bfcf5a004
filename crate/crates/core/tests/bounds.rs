use num_traits::Signed;
use proptest::prelude::*;

use mostar::duality::{
    alpha2, claim2_pair, claim2_solution, dprime_feasible, dual_feasible, lift_certificate, min_affine_hyperbola,
    CaseTag,
};
use mostar::families::{extremal_split, split_from_spec, SplitSpec};
use mostar::graph::mostar_index;
use mostar::rational::{int, ratio, to_f64};
use mostar::split_bounds::{
    audit_split_edges, claim3_bound, g_bound, m_star, split_bound_chain, split_case, theorem2_piecewise, SplitCase,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hyperbola_min_below_samples(beta in 0.0f64..10.0, gamma in 0.01f64..10.0, delta in 0.01f64..10.0,
                                   t in 0.0001f64..=1.0) {
        let h = min_affine_hyperbola(beta, gamma, delta).unwrap();
        let x = t * delta;
        let f = beta / x + gamma * x;
        prop_assert!(h.value <= f + 1e-9 * f.abs().max(1.0));
        if let Some(a) = h.argmin {
            prop_assert!(a > 0.0 && a <= delta);
            let fa = beta / a + gamma * a;
            prop_assert!((fa - h.value).abs() <= 1e-9 * fa.abs().max(1.0));
        }
    }
}

#[test]
fn hyperbola_rejects_bad_input() {
    assert!(min_affine_hyperbola(-1.0, 1.0, 1.0).is_err());
    assert!(min_affine_hyperbola(1.0, 0.0, 1.0).is_err());
    assert!(min_affine_hyperbola(1.0, 1.0, 0.0).is_err());
    assert!(min_affine_hyperbola(f64::NAN, 1.0, 1.0).is_err());
    assert_eq!(min_affine_hyperbola(0.0, 2.0, 1.0).unwrap().argmin, None);
}

#[test]
fn g_is_maximized_next_to_m_star() {
    for n in 2..=30 {
        for k in 1..n {
            let max = k * (n - k);
            let values: Vec<_> = (0..=max).map(|m| g_bound(n, k, m).unwrap()).collect();
            let best = values.iter().max().unwrap();
            let star = m_star(n, k);
            let lo = star.floor().to_integer().try_into().unwrap_or(usize::MAX).min(max);
            let hi = star.ceil().to_integer().try_into().unwrap_or(usize::MAX).min(max);
            assert!(values[lo] == *best || values[hi] == *best, "(n,k) = ({n},{k})");
            // unimodal: nondecreasing up to the peak, nonincreasing after
            let peak = values.iter().position(|v| v == best).unwrap();
            assert!(values[..=peak].windows(2).all(|w| w[0] <= w[1]));
            assert!(values[peak..].windows(2).all(|w| w[0] >= w[1]));
            // piecewise bound equals max over integer m only up to rounding of m*
            assert!(*best <= theorem2_piecewise(n, k).unwrap().value);
            if split_case(n, k) == SplitCase::Low {
                assert_eq!(peak, max);
            }
        }
    }
}

#[test]
fn lifting_feasible_through_order_200() {
    let orders: Vec<usize> = (2..=40).chain((50..=200).step_by(10)).collect();
    for n in orders {
        let ks: Vec<usize> = if n <= 40 { (1..=n / 2).collect() } else { (1..=n / 2).step_by(7).chain([n / 2]).collect() };
        for k in ks {
            let pair = claim2_solution(n, k).unwrap();
            let cert = lift_certificate(&pair, n, k);
            let feas = dual_feasible(&cert, 1e-9);
            assert!(feas.feasible, "({n},{k}) {:?}: worst {:?}", pair.case, feas.worst_at);
            assert!(!feas.worst_slack.is_negative(), "({n},{k}) negative exact slack");
            assert_eq!(feas.violations, 0);
        }
    }
}

#[test]
fn pair_satisfies_dprime() {
    for num in 1..=500 {
        let alpha = ratio(num, 1000);
        let pair = claim2_pair(&alpha);
        let (p, q) = pair.to_f64();
        let rep = dprime_feasible(p, q, to_f64(&alpha), 1e-9).unwrap();
        assert!(rep.feasible, "alpha = {num}/1000: {:?}", rep.violated);
        let expected = if to_f64(&alpha) <= alpha2() { CaseTag::LowAlpha } else { CaseTag::HighAlpha };
        assert_eq!(pair.case, expected, "alpha = {num}/1000");
    }
    assert!(dprime_feasible(0.1, 0.1, 0.7, 1e-9).is_err());
}

#[test]
fn split_chain_on_extremal_graphs() {
    for n in 2..=14 {
        for k in 1..n {
            for m in 0..=k * (n - k) {
                let (spec, g) = extremal_split(n, k, m).unwrap();
                assert_eq!(spec.cross_degrees.iter().sum::<usize>(), m);
                let mo = mostar_index(&g);
                let chain = split_bound_chain(n, k, m).unwrap();
                assert!(chain.is_ordered(), "({n},{k},{m})");
                assert!(int(mo as i64) <= chain.g_value, "({n},{k},{m}) Mo = {mo}");
                let audit = audit_split_edges(&g, k);
                assert!(audit.identities_hold(), "({n},{k},{m})");
                assert!(audit.clique_sum as i64 <= claim3_bound(n, k, m).unwrap().ceil().to_integer().try_into().unwrap());
            }
        }
    }
}

#[test]
fn split_spec_validation() {
    assert!(SplitSpec::new(5, 2, vec![3, 1]).is_ok());
    assert!(SplitSpec::new(5, 2, vec![1, 3]).is_err());
    assert!(SplitSpec::new(5, 2, vec![4, 1]).is_err());
    let g = split_from_spec(&SplitSpec::new(5, 2, vec![3, 3]).unwrap()).unwrap();
    assert_eq!(g.size(), 1 + 6);
}
