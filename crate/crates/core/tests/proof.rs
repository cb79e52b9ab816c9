use conacc_core::decide::valid_bounded;
use conacc_core::proof::{builtin_corpus, check_proof, taut_check, LineFault, Proof, SystemName};
use conacc_core::syntax::{parse, render, Formula};
use proptest::prelude::*;

const HAND_WRITTEN: &str = r#"{
  "system": "K",
  "premises": ["p"],
  "lines": [
    {"formula": "p", "just": {"kind": "premise", "index": 1}},
    {"formula": "D p", "just": {"kind": "r1", "from": [1]}},
    {"formula": "A ~p -> ~p", "just": {"kind": "axiom", "name": "A1"}},
    {"formula": "D p & p", "just": {"kind": "taut"}}
  ]
}"#;

#[test]
fn hand_written_file_reports_the_bad_line() {
    let proof = Proof::from_json(HAND_WRITTEN).unwrap();
    let errs = check_proof(&proof).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].line, 4);
    assert!(matches!(errs[0].fault, LineFault::NotATautology));
}

#[test]
fn repaired_file_checks() {
    let text = HAND_WRITTEN.replace(
        r#"{"formula": "D p & p", "just": {"kind": "taut"}}"#,
        r#"{"formula": "p -> D p -> D p & p", "just": {"kind": "taut"}},
    {"formula": "D p -> D p & p", "just": {"kind": "mp", "from": [1, 4]}},
    {"formula": "D p & p", "just": {"kind": "mp", "from": [2, 5]}}"#,
    );
    let proof = Proof::from_json(&text).unwrap();
    assert_eq!(check_proof(&proof), Ok(()));
    assert_eq!(proof.conclusion(), Some(&parse("D p & p").unwrap()));
}

#[test]
fn malformed_files_are_rejected() {
    assert!(Proof::from_json("{").is_err());
    assert!(Proof::from_json(&HAND_WRITTEN.replace("\"premises\"", "\"extra\": 1, \"premises\"")).is_err());
    assert!(Proof::from_json(&HAND_WRITTEN.replace("A ~p -> ~p", "A ~p ->")).is_err());
    assert!(Proof::from_json(&HAND_WRITTEN.replace("\"K\"", "\"S5\"")).is_err());
}

#[test]
fn corpus_files_round_trip_and_check() {
    let corpus = builtin_corpus();
    assert!(corpus.len() >= 10);
    for e in &corpus {
        let text = e.proof.to_json().to_string();
        let back = Proof::from_json(&text).unwrap();
        assert_eq!(back, e.proof, "{}", e.name);
        assert_eq!(check_proof(&back), Ok(()), "{}", e.name);
    }
}

#[test]
fn corpus_conclusions_are_valid_on_their_classes() {
    for e in builtin_corpus() {
        let concl = e.proof.conclusion().unwrap();
        let class = e.proof.system.frame_class();
        assert!(valid_bounded(concl, class, 3).unwrap(), "{}: {}", e.name, render(concl));
    }
}

#[test]
fn every_system_is_covered() {
    let corpus = builtin_corpus();
    for s in [
        SystemName::K,
        SystemName::KD,
        SystemName::K4,
        SystemName::T,
        SystemName::PalK,
    ] {
        assert!(corpus.iter().any(|e| e.proof.system == s), "{s}");
    }
}

fn renaming() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec("[a-z][a-z0-9_]{0,3}", 3).prop_filter("keywords and clashes", |v| {
        v.iter().all(|a| conacc_core::syntax::is_atom_name(a)) && v[0] != v[1] && v[1] != v[2] && v[0] != v[2]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn injective_renaming_preserves_checked_proofs(names in renaming()) {
        let map = |a: &str| match a {
            "p" => names[0].clone(),
            "q" => names[1].clone(),
            "r" => names[2].clone(),
            other => format!("{other}_x"),
        };
        for e in builtin_corpus() {
            let renamed = e.proof.rename_atoms(&map);
            prop_assert_eq!(check_proof(&renamed), Ok(()), "{}", e.name);
        }
    }

    #[test]
    fn collapsing_renaming_preserves_checked_proofs(target in "[a-z]") {
        prop_assume!(conacc_core::syntax::is_atom_name(&target));
        for e in builtin_corpus() {
            let renamed = e.proof.rename_atoms(&|_| target.clone());
            prop_assert_eq!(check_proof(&renamed), Ok(()), "{}", e.name);
        }
    }
}

/// Truth-table oracle by direct recursion over all assignments.
fn classical(f: &Formula, v: &dyn Fn(&Formula) -> bool) -> bool {
    use Formula as F;
    match f {
        F::Top => true,
        F::Bot => false,
        F::Not(a) => !classical(a, v),
        F::And(a, b) => classical(a, v) && classical(b, v),
        F::Or(a, b) => classical(a, v) || classical(b, v),
        F::Implies(a, b) => !classical(a, v) || classical(b, v),
        F::Iff(a, b) => classical(a, v) == classical(b, v),
        F::NonCon(a) => !v(&F::Con(a.clone())),
        F::Ess(a) => !v(&F::Acc(a.clone())),
        F::Box(a) => !v(&F::Diamond(Box::new(F::not(a.as_ref().clone())))),
        _ => v(f),
    }
}

#[test]
fn taut_agrees_with_direct_truth_tables() {
    let letters = ["p", "q", "C p", "A p", "A q"].map(|t| parse(t).unwrap());
    let pieces = [
        "p", "q", "C p", "D p", "A p", "O p", "O q", "p & q", "~C p", "true", "false",
    ];
    let fs: Vec<Formula> = pieces
        .iter()
        .flat_map(|a| pieces.iter().map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            [
                "({a}) -> ({b})",
                "({a}) <-> ({b})",
                "({a}) | ~({b})",
                "(({a}) -> ({b})) -> ({a}) -> ({b}) | ({a})",
            ]
            .map(|t| parse(&t.replace("{a}", a).replace("{b}", b)).unwrap())
        })
        .collect();
    for g in fs {
        let want = (0..1u32 << letters.len()).all(|bits| {
            classical(&g, &|leaf| {
                let i = letters.iter().position(|l| l == leaf).expect("known letter");
                bits >> i & 1 == 1
            })
        });
        assert_eq!(taut_check(&g).unwrap(), want, "{}", render(&g));
    }
}
