mod common;

use common::{all_frames, config, models, sized, Ops};
use conacc_core::kripke::engine::{block_plan, valuation_count, Evaluator, Program, Valuations};
use conacc_core::kripke::{
    enumerate_frames, eval, frame_valid, mirror_reduction, reflexive_closure, reflexivize_dead_ends, truth_set, Frame,
    FrameClass, Model, WorldSet,
};
use conacc_core::syntax::{enumerate_formulas, parse, render, Formula, FormulaDag, LanguageTag, Node};
use proptest::prelude::*;

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

/// Runs `prog` on every valuation of `frame` at once; returns the evaluator and
/// the mask of meaningful valuation bits.
fn run_all(prog: &Program, frame: &Frame) -> (Evaluator, u64) {
    let total = valuation_count(prog.atoms().len(), frame.len()).unwrap();
    let (words, blocks, mask) = block_plan(total);
    assert_eq!((words, blocks), (1, 1), "test frames fit one word");
    let mut ev = Evaluator::new();
    ev.run(prog, frame.successor_sets(), Valuations::Block { base: 0, words });
    (ev, mask)
}

// ---- direct semantics, written independently of the library evaluator ----

fn succ_values(fr: &Frame, w: usize, set: WorldSet) -> (bool, bool) {
    let s = fr.successors(w);
    let some_true = s.iter().any(|t| set.contains(t));
    let some_false = s.iter().any(|t| !set.contains(t));
    (some_true, some_false)
}

fn direct_con(fr: &Frame, w: usize, set: WorldSet) -> bool {
    let (t, f) = succ_values(fr, w, set);
    t && f
}

fn direct_acc(fr: &Frame, w: usize, set: WorldSet) -> bool {
    set.contains(w) && succ_values(fr, w, set).1
}

fn direct_noncon(fr: &Frame, w: usize, set: WorldSet) -> bool {
    let s = fr.successors(w);
    s.iter().all(|t| set.contains(t)) || s.iter().all(|t| !set.contains(t))
}

fn direct_ess(fr: &Frame, w: usize, set: WorldSet) -> bool {
    !set.contains(w) || fr.successors(w).iter().all(|t| set.contains(t))
}

fn direct_box(fr: &Frame, w: usize, set: WorldSet) -> bool {
    fr.successors(w).iter().all(|t| set.contains(t))
}

#[test]
fn fact_clauses_on_all_frames_up_to_four_worlds() {
    let con = f("C p");
    let acc = f("A p");
    let con_tr = f("<> p & <> ~p");
    let acc_tr = f("p & <> ~p");
    for fr in all_frames(4) {
        for m in models(&fr, &["p"]) {
            let p = m.atom("p");
            let sets = [&con, &acc, &con_tr, &acc_tr].map(|g| truth_set(&m, g));
            for w in 0..fr.len() {
                let want_con = direct_con(&fr, w, p);
                let want_acc = direct_acc(&fr, w, p);
                assert_eq!(sets[0].contains(w), want_con);
                assert_eq!(sets[2].contains(w), want_con);
                assert_eq!(sets[1].contains(w), want_acc);
                assert_eq!(sets[3].contains(w), want_acc);
            }
        }
    }
}

#[test]
fn defined_operators_match_their_direct_clauses() {
    let bodies: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Full, 3).collect();
    for fr in all_frames(3) {
        for m in models(&fr, &["p"]) {
            for phi in &bodies {
                let set = truth_set(&m, phi);
                let d = truth_set(&m, &Formula::noncon(phi.clone()));
                let o = truth_set(&m, &Formula::ess(phi.clone()));
                let b = truth_set(&m, &Formula::boxed(phi.clone()));
                for w in 0..fr.len() {
                    assert_eq!(d.contains(w), direct_noncon(&fr, w, set), "D {}", render(phi));
                    assert_eq!(o.contains(w), direct_ess(&fr, w, set), "O {}", render(phi));
                    assert_eq!(b.contains(w), direct_box(&fr, w, set), "[] {}", render(phi));
                }
            }
        }
    }
}

fn locality_on(max_worlds: usize, max_size: usize) {
    let fs: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Full, max_size).collect();
    for fr in all_frames(max_worlds) {
        let n = fr.len();
        for base in models(&fr, &["p"]) {
            let expected: Vec<WorldSet> = fs.iter().map(|g| truth_set(&base, g)).collect();
            for q in 0..1u64 << n {
                let m = base
                    .clone()
                    .with_atom("q", WorldSet(q))
                    .with_atom("r", WorldSet(!q & WorldSet::full(n).0));
                for (g, want) in fs.iter().zip(&expected) {
                    assert_eq!(truth_set(&m, g), *want, "{}", render(g));
                }
            }
        }
    }
}

#[test]
fn locality_in_unused_atoms() {
    locality_on(2, 4);
    locality_on(3, 3);
}

#[test]
fn eval_agrees_with_truth_set() {
    let fs: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::Full, 4).collect();
    for fr in all_frames(2) {
        for m in models(&fr, &["p"]) {
            for g in &fs {
                let set = truth_set(&m, g);
                for w in 0..fr.len() {
                    assert_eq!(eval(&m, w, g).unwrap(), set.contains(w));
                }
            }
        }
    }
}

#[test]
fn mirror_reduction_preserves_every_small_formula() {
    let dag = FormulaDag::with_max_size(&["p", "q"], LanguageTag::NablaBullet, 6);
    assert_eq!(dag.level(6).len(), 7212);
    let (prog, slots) = Program::from_dag(&dag);
    let mut violations = 0usize;
    for fr in all_frames(3) {
        let mirrored = mirror_reduction(&fr);
        let (a, mask) = run_all(&prog, &fr);
        let (b, _) = run_all(&prog, &mirrored);
        for &s in &slots {
            for w in 0..fr.len() {
                if (a.slot(s, w)[0] ^ b.slot(s, w)[0]) & mask != 0 {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn mirror_reduction_preserves_frame_validity() {
    let fs: Vec<Formula> = enumerate_formulas(&["p"], LanguageTag::NablaBullet, 4).collect();
    for fr in all_frames(3) {
        let mirrored = mirror_reduction(&fr);
        for g in &fs {
            assert_eq!(
                frame_valid(&fr, g).unwrap().is_valid(),
                frame_valid(&mirrored, g).unwrap().is_valid(),
                "{}",
                render(g)
            );
        }
    }
}

#[test]
fn mirror_reduction_drops_only_lone_loops() {
    for fr in all_frames(3) {
        let m = mirror_reduction(&fr);
        for w in 0..fr.len() {
            let lone = fr.successors(w) == WorldSet::singleton(w);
            let want = if lone { WorldSet::EMPTY } else { fr.successors(w) };
            assert_eq!(m.successors(w), want);
        }
    }
}

#[test]
fn rival_reductions_change_frame_validity() {
    // dropping every loop of a dead-end successor: s→t against the arrowless pair
    let arrow = Frame::from_pairs(2, &[(0, 1)]).unwrap();
    let arrowless = Frame::from_pairs(1, &[]).unwrap();
    assert!(!frame_valid(&arrow, &f("O p")).unwrap().is_valid());
    assert!(frame_valid(&arrowless, &f("O p")).unwrap().is_valid());
    // removing all loops: complete two-world frame against s↔t
    let complete = Frame::from_pairs(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
    let swap = Frame::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
    assert!(!frame_valid(&complete, &f("D p")).unwrap().is_valid());
    assert!(frame_valid(&swap, &f("D p")).unwrap().is_valid());
    // the main-text reduction leaves both frames alone
    assert_eq!(mirror_reduction(&arrow), arrow);
    assert_eq!(mirror_reduction(&complete), complete);
}

#[test]
fn dead_ends_stay_non_contingent_and_non_accidental() {
    let dag = FormulaDag::with_max_size(&["p", "q"], LanguageTag::NablaBullet, 6);
    let (prog, slots) = Program::from_dag(&dag);
    let modal: Vec<u32> = dag
        .nodes()
        .iter()
        .zip(&slots)
        .filter(|(n, _)| matches!(n, Node::Con(_) | Node::Acc(_)))
        .map(|(_, &s)| s)
        .collect();
    for fr in all_frames(3) {
        let dead: Vec<usize> = (0..fr.len()).filter(|&w| fr.successors(w).is_empty()).collect();
        if dead.is_empty() {
            continue;
        }
        let serial = reflexivize_dead_ends(&fr);
        let (a, mask) = run_all(&prog, &fr);
        let (b, _) = run_all(&prog, &serial);
        for &w in &dead {
            for &s in &modal {
                assert_eq!(a.slot(s, w)[0] & mask, 0);
                assert_eq!(b.slot(s, w)[0] & mask, 0);
            }
        }
        for &s in &slots {
            for w in 0..fr.len() {
                assert_eq!((a.slot(s, w)[0] ^ b.slot(s, w)[0]) & mask, 0);
            }
        }
    }
}

#[test]
fn closures_land_in_their_class_and_are_idempotent() {
    for fr in all_frames(4) {
        let serial = reflexivize_dead_ends(&fr);
        assert!(FrameClass::D.holds(&serial));
        assert_eq!(reflexivize_dead_ends(&serial), serial);
        for w in 0..fr.len() {
            let added = if fr.successors(w).is_empty() {
                WorldSet::singleton(w)
            } else {
                WorldSet::EMPTY
            };
            assert_eq!(serial.successors(w), WorldSet(fr.successors(w).0 | added.0));
        }
        let refl = reflexive_closure(&fr);
        assert!(FrameClass::T.holds(&refl));
        assert_eq!(reflexive_closure(&refl), refl);
        if FrameClass::T.holds(&fr) {
            assert_eq!(refl, fr);
        }
        if FrameClass::D.holds(&fr) {
            assert_eq!(serial, fr);
        }
    }
}

#[test]
fn class_predicates_match_their_definitions() {
    for fr in all_frames(3) {
        let n = fr.len();
        let r = |a: usize, b: usize| fr.has_edge(a, b);
        let all = |p: &dyn Fn(usize, usize, usize) -> bool| (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| p(a, b, c))));
        let serial = (0..n).all(|a| (0..n).any(|b| r(a, b)));
        let reflexive = (0..n).all(|a| r(a, a));
        let symmetric = all(&|a, b, _| !r(a, b) || r(b, a));
        let transitive = all(&|a, b, c| !(r(a, b) && r(b, c)) || r(a, c));
        let euclidean = all(&|a, b, c| !(r(a, b) && r(a, c)) || r(b, c));
        let convergent = all(&|a, b, c| !(r(a, b) && r(a, c)) || (0..n).any(|v| r(b, v) && r(c, v)));
        assert!(FrameClass::K.holds(&fr));
        assert_eq!(FrameClass::D.holds(&fr), serial);
        assert_eq!(FrameClass::T.holds(&fr), reflexive);
        assert_eq!(FrameClass::B.holds(&fr), symmetric);
        assert_eq!(FrameClass::Four.holds(&fr), transitive);
        assert_eq!(FrameClass::Five.holds(&fr), euclidean);
        assert_eq!(FrameClass::Conv.holds(&fr), convergent);
    }
    for c in [FrameClass::D, FrameClass::T, FrameClass::B, FrameClass::Four] {
        let listed = enumerate_frames(3, c).count();
        let filtered = enumerate_frames(3, FrameClass::K).filter(|fr| c.holds(fr)).count();
        assert_eq!(listed, filtered, "{c}");
    }
}

fn mirror_violations(g: &Formula) -> usize {
    let prog = Program::compile(g, &["p", "q"]);
    let mut count = 0;
    for fr in all_frames(3) {
        let (a, mask) = run_all(&prog, &fr);
        let (b, _) = run_all(&prog, &mirror_reduction(&fr));
        count += (0..fr.len())
            .filter(|&w| (a.root(&prog, w)[0] ^ b.root(&prog, w)[0]) & mask != 0)
            .count();
    }
    count
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn mirror_reduction_preserves_random_formulas(g in sized(Ops::NablaBullet, &["p", "q"], 9)) {
        prop_assert_eq!(mirror_violations(&g), 0, "{}", render(&g));
    }
}

#[test]
fn model_with_unlisted_atom_is_empty_there() {
    let m = Model::new(Frame::from_pairs(2, &[(0, 1)]).unwrap());
    assert_eq!(m.atom("p"), WorldSet::EMPTY);
    assert!(!eval(&m, 0, &f("p")).unwrap());
}
