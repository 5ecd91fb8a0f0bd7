mod common;

use common::connected_graph;
use leafspan::bounds::girth_parameter;
use leafspan::constructive::{construct_theorem1, construct_theorem2, ConstructError, ConstructionTrace};
use leafspan::{bound_theorem1, bound_theorem2, chain_metric, girth, s_count, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn first_construction_beyond_exact_sizes(g in connected_graph(2, 30)) {
        let (t, trace) = construct_theorem1(&g).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert!(Rational::from_integer(t.leaf_count() as i64) >= bound_theorem1(s_count(&g)));
        let steps = ConstructionTrace::parse_log(&trace.to_log()).unwrap();
        prop_assert_eq!(&steps, &trace.steps);
        let again = trace.replay(&g).unwrap();
        prop_assert_eq!(again.edges(), t.edges());
    }

    #[test]
    fn second_construction_beyond_exact_sizes(g in connected_graph(2, 24)) {
        let k = chain_metric(&g).max(1);
        match construct_theorem2(&g, k) {
            Ok((t, trace)) => {
                prop_assert!(t.validate().is_ok());
                let bound = bound_theorem2(g.vertex_count(), girth_parameter(girth(&g)), k).unwrap();
                prop_assert!(Rational::from_integer(t.leaf_count() as i64) >= bound);
                let again = trace.replay(&g).unwrap();
        prop_assert_eq!(again.edges(), t.edges());
            }
            Err(ConstructError::BoundNotMet { v, .. }) => prop_assert!(v > 12),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn tampered_traces_are_rejected() {
    let g = leafspan::extremal::gen_triangle_tree(3).unwrap();
    let (_, trace) = construct_theorem1(&g).unwrap();
    let mut steps = trace.steps.clone();
    steps.pop();
    assert!(leafspan::constructive::replay_steps(&g, &steps, None).is_err());
    let mut bad = trace.clone();
    if let Some(s) = bad.steps.iter_mut().find(|s| s.args.len() >= 2) {
        s.args[1] = 999;
    }
    assert!(bad.replay(&g).is_err());
}
