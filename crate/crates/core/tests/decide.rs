mod common;

use common::all_frames;
use conacc_core::decide::{
    conjecture_sweep_with, defines_property, distinguishing_formula, find_countermodel, sat_bounded, valid_bounded,
    ConjectureBounds, Report, Verdict, Witness,
};
use conacc_core::kripke::{enumerate_frames, eval, frame_valid, FrameClass};
use conacc_core::proof::SystemName;
use conacc_core::suite::serial_pair;
use conacc_core::syntax::{enumerate_formulas, parse, render, Formula, LanguageTag};

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn generic_instances(system: SystemName) -> Vec<(&'static str, Formula)> {
    system
        .schemas()
        .iter()
        .map(|s| (s.name, s.generic_instance()))
        .collect()
}

#[test]
fn axioms_are_sound_at_four_worlds() {
    let tautologies = ["C p | ~C p", "A(p & q) -> A(p & q) | r", "(D p -> O q) & D p -> O q"];
    for t in tautologies {
        assert!(valid_bounded(&f(t), FrameClass::K, 4).unwrap(), "{t}");
    }
    let static_claims = [
        "C p <-> <> p & <> ~p",
        "A p <-> p & <> ~p",
        "C p -> A p | A ~p",
        "A(p -> q) & A(~p -> r) -> C p",
        "A q -> ([] p <-> D p & O(~q -> p))",
    ];
    for t in static_claims {
        assert!(valid_bounded(&f(t), FrameClass::K, 4).unwrap(), "{t}");
    }
    for (system, class) in [
        (SystemName::K, FrameClass::K),
        (SystemName::T, FrameClass::T),
        (SystemName::K4, FrameClass::Four),
    ] {
        for (name, g) in generic_instances(system) {
            assert!(valid_bounded(&g, class, 4).unwrap(), "{name} on {class}");
        }
    }
}

#[test]
fn reduction_axioms_are_sound_at_three_worlds() {
    let k: Vec<&str> = SystemName::K.schemas().iter().map(|s| s.name).collect();
    for (name, g) in generic_instances(SystemName::PalK) {
        if !k.contains(&name) {
            assert!(valid_bounded(&g, FrameClass::K, 3).unwrap(), "{name}");
        }
    }
}

#[test]
fn holding_bounds_are_monotone() {
    for g in enumerate_formulas(&["p"], LanguageTag::NablaBullet, 5) {
        let holds: Vec<bool> = (1..=3).map(|n| valid_bounded(&g, FrameClass::K, n).unwrap()).collect();
        assert!(holds.windows(2).all(|w| w[0] || !w[1]), "{}", render(&g));
    }
}

#[test]
fn bounded_validity_is_the_conjunction_of_frame_validity() {
    let mut fs: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Full, 4)
        .filter(|g| !g.has_announcement())
        .collect();
    fs.extend(["C(p & q) -> C p | C q", "A(p -> q) & A(~p -> r) -> A p", "D p -> D D p"].map(f));
    for g in &fs {
        for n in 1..=3 {
            let by_frames = (1..=n)
                .flat_map(|k| enumerate_frames(k, FrameClass::K))
                .all(|fr| frame_valid(&fr, g).unwrap().is_valid());
            assert_eq!(
                valid_bounded(g, FrameClass::K, n).unwrap(),
                by_frames,
                "{} at {n}",
                render(g)
            );
        }
    }
}

/// Replaces the report's witness with the one read back from its JSON text.
fn through_json(r: &Report) -> Report {
    let text = r.to_json().to_string();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut out = r.clone();
    out.witness = Some(Witness::from_json(&v["witness"]).unwrap());
    out
}

#[test]
fn refutations_recheck_from_their_interchange_form() {
    let mut reports = vec![];
    for g in enumerate_formulas(&["p"], LanguageTag::NablaBullet, 4) {
        let r = find_countermodel(&g, FrameClass::K, 3).unwrap();
        if r.verdict == Verdict::Refuted {
            reports.push(r);
        }
    }
    assert!(!reports.is_empty());
    reports.push(find_countermodel(&f("A(p -> q) & A(~p -> r) -> A p"), FrameClass::K, 3).unwrap());
    reports.push(find_countermodel(&f("[! A p] A p"), FrameClass::K, 3).unwrap());
    reports.push(sat_bounded(&f("C p & A q"), FrameClass::T, 3).unwrap());
    reports.push(defines_property(&f("A p -> p"), FrameClass::T, 2).unwrap());
    reports.push(defines_property(&f("D p"), FrameClass::Four, 2).unwrap());
    let (a, b) = serial_pair();
    reports.push(distinguishing_formula(&a, &b, LanguageTag::Diamond, &["p"], 6).unwrap());
    for r in &reports {
        assert_eq!(r.verdict, Verdict::Refuted, "{}", r.to_human());
        assert!(r.recheck(), "{}", r.to_human());
        let back = through_json(r);
        assert_eq!(back.witness, r.witness);
        assert!(back.recheck());
    }
}

#[test]
fn countermodels_are_minimal_and_in_class() {
    for (text, class) in [
        ("A(p -> q) & A(~p -> r) -> A p", FrameClass::K),
        ("D p -> D D p", FrameClass::K),
        ("A p & A ~q -> C(p & q)", FrameClass::T),
    ] {
        let g = f(text);
        let r = find_countermodel(&g, class, 3).unwrap();
        let Some(Witness::Countermodel(pm)) = &r.witness else {
            panic!("{text} holds")
        };
        assert!(class.holds(&pm.model.frame));
        assert!(!eval(&pm.model, pm.point, &g).unwrap());
        let n = pm.model.len();
        assert!(n == 1 || valid_bounded(&g, class, n - 1).unwrap(), "{text}");
    }
}

#[test]
fn definability_matches_frame_classes() {
    for (text, class) in [
        ("A q & D p & O(~q -> p) -> O(~q -> O(~r -> p))", FrameClass::Four),
        ("A(p -> A p) -> p", FrameClass::B),
    ] {
        let g = f(text);
        let r = defines_property(&g, class, 3).unwrap();
        assert!(r.holds(), "{}", r.to_human());
        for fr in all_frames(3) {
            assert_eq!(frame_valid(&fr, &g).unwrap().is_valid(), class.holds(&fr));
        }
    }
}

#[test]
fn conjecture_sweep_reports_each_instance_once() {
    let b = ConjectureBounds {
        max_worlds: 3,
        max_exponent_sum: 3,
        max_heart_len: 1,
        max_delta_power: 2,
    };
    let reports = conjecture_sweep_with(&b).unwrap();
    assert!(reports
        .iter()
        .any(|r| r.label.as_deref() == Some("anchor") && r.holds()));
    assert!(reports.iter().all(Report::recheck));
    let mut labels: Vec<&str> = reports.iter().filter_map(|r| r.label.as_deref()).collect();
    let total = labels.len();
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), total);
}
