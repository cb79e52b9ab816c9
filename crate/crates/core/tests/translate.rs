mod common;

use common::{all_frames, config, models, sized, Ops};
use conacc_core::kripke::engine::truth_set_fast;
use conacc_core::kripke::{truth_set, FrameClass};
use conacc_core::syntax::{desugar, metrics, parse, render, Formula, LanguageTag};
use conacc_core::translate::{
    equivalent_bounded, reduce_announcements, reduce_announcements_with_fuel, replay, to_diamond, Equivalence,
};
use proptest::prelude::*;

const FUEL: usize = 100_000;

fn with_announcements(max_depth: usize) -> BoxedStrategy<Formula> {
    sized(Ops::Full, &["p", "q"], 8)
        .prop_filter("announcement depth", move |f| {
            metrics(f).announcement_depth <= max_depth
        })
        .boxed()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn translation_is_equivalent(f in sized(Ops::Static, &["p", "q"], 8)) {
        let g = to_diamond(&f).unwrap();
        prop_assert!(LanguageTag::Diamond.contains(&desugar(&g)), "{}", render(&g));
        prop_assert!(equivalent_bounded(&f, &g, FrameClass::K, 3).unwrap().is_equivalent(), "{}", render(&f));
    }

    #[test]
    fn sliced_engine_agrees_with_recursive_eval(f in sized(Ops::Full, &["p", "q"], 9)) {
        for fr in all_frames(2) {
            for m in models(&fr, &["p", "q"]) {
                prop_assert_eq!(truth_set_fast(&m, &f), truth_set(&m, &f), "{}", render(&f));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn reduction_is_equivalent_and_replays(f in with_announcements(2)) {
        let r = reduce_announcements_with_fuel(&f, FUEL).unwrap();
        prop_assert!(!r.formula.has_announcement());
        prop_assert_eq!(replay(&f, &r.trace).unwrap(), r.formula.clone());
        prop_assert!(
            equivalent_bounded(&f, &r.formula, FrameClass::K, 3).unwrap().is_equivalent(),
            "{} vs {}", render(&f), render(&r.formula)
        );
    }
}

#[test]
fn equivalence_examples() {
    let f = |t: &str| parse(t).unwrap();
    assert!(equivalent_bounded(&f("C p"), &f("C ~p"), FrameClass::K, 3)
        .unwrap()
        .is_equivalent());
    let g = f("A p & [] q");
    assert!(equivalent_bounded(&g, &g, FrameClass::K, 3).unwrap().is_equivalent());
    match equivalent_bounded(&f("A p"), &f("C p"), FrameClass::K, 2).unwrap() {
        Equivalence::Differs(pm) => {
            let m = &pm.model;
            let at = |t: &str| truth_set(m, &f(t)).contains(pm.point);
            assert_ne!(at("A p"), at("C p"));
            assert!(pm.model.len() <= 2);
        }
        Equivalence::Equivalent => panic!("•p and ∇p differ"),
    }
}

#[test]
fn moore_reductions() {
    for (text, valid) in [("[! A p] ~A p", true), ("[! ~A p] ~A p", true), ("[! A p] A p", false)] {
        let r = reduce_announcements(&parse(text).unwrap());
        assert!(!r.formula.has_announcement());
        let e = equivalent_bounded(&r.formula, &Formula::Top, FrameClass::K, 3).unwrap();
        assert_eq!(e.is_equivalent(), valid, "{text}");
    }
}
