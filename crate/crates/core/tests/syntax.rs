mod common;

use std::collections::HashSet;

use common::{all_frames, config, formula, models, sized, Ops};
use conacc_core::kripke::eval;
use conacc_core::syntax::{
    count_formulas, desugar, enumerate_formulas, equal_up_to_sugar, metrics, parse, render, render_parenthesized,
    render_unicode, Formula, LanguageTag,
};
use proptest::prelude::*;

/// Every tree over leaves `p`, `⊤`, `⊥` with ¬, • and ∧ of exactly `size` nodes.
fn bullet_trees(size: usize) -> Vec<Formula> {
    if size == 1 {
        return vec![Formula::Atom("p".into()), Formula::Top, Formula::Bot];
    }
    let mut out = vec![];
    for f in bullet_trees(size - 1) {
        out.push(Formula::Not(Box::new(f.clone())));
        out.push(Formula::Acc(Box::new(f)));
    }
    for left in 1..size - 1 {
        for a in bullet_trees(left) {
            for b in bullet_trees(size - 1 - left) {
                out.push(Formula::And(Box::new(a.clone()), Box::new(b)));
            }
        }
    }
    out
}

#[test]
fn bullet_count_matches_recursive_counter() {
    let counts = count_formulas(1, LanguageTag::Bullet, 3);
    assert_eq!(counts[1..], [3, 6, 21]);
    for k in 1..=5 {
        let oracle: HashSet<Formula> = bullet_trees(k).into_iter().collect();
        let got: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Bullet, k)
            .filter(|f| metrics(f).size == k)
            .collect();
        assert_eq!(got.len(), oracle.len(), "size {k}");
        assert_eq!(got.into_iter().collect::<HashSet<_>>(), oracle, "size {k}");
        assert_eq!(count_formulas(1, LanguageTag::Bullet, k)[k], oracle.len() as u128);
    }
}

#[test]
fn enumeration_is_exhaustive_and_duplicate_free() {
    for lang in LanguageTag::ALL {
        let fs: Vec<Formula> = enumerate_formulas(&["p", "q"], lang, 5).collect();
        let set: HashSet<&Formula> = fs.iter().collect();
        assert_eq!(set.len(), fs.len(), "{lang}");
        assert!(fs.iter().all(|f| desugar(f) == *f));
    }
}

#[test]
fn desugar_preserves_truth_on_small_models() {
    let fs: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Diamond, 4)
        .flat_map(|f| {
            let neg = Formula::not(f.clone());
            [
                Formula::noncon(f.clone()),
                Formula::ess(f.clone()),
                Formula::boxed(f.clone()),
                Formula::implies(f.clone(), neg.clone()),
                Formula::iff(f.clone(), Formula::con(neg.clone())),
                Formula::or(f.clone(), Formula::acc(neg)),
                Formula::ann_whether(f.clone(), Formula::acc(f)),
            ]
        })
        .collect();
    for fr in all_frames(2) {
        for m in models(&fr, &["p"]) {
            for f in &fs {
                let d = desugar(f);
                for w in 0..m.len() {
                    assert_eq!(eval(&m, w, f).unwrap(), eval(&m, w, &d).unwrap(), "{}", render(f));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn render_round_trips(f in formula(Ops::Full, &["p", "q", "r"], 6).prop_filter("size", |f| f.raw_size() <= 12)) {
        prop_assert_eq!(parse(&render(&f)).unwrap(), f.clone());
        prop_assert_eq!(parse(&render_parenthesized(&f)).unwrap(), f.clone());
        let d = desugar(&f);
        prop_assert_eq!(desugar(&d), d.clone());
        prop_assert!(equal_up_to_sugar(&f, &d));
        prop_assert_eq!(metrics(&f).size, d.raw_size());
    }

    #[test]
    fn unicode_output_is_stable(f in sized(Ops::Full, &["p", "q"], 10)) {
        let u = render_unicode(&f);
        prop_assert_eq!(render_unicode(&parse(&render(&f)).unwrap()), u);
    }
}
