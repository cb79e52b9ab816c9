#![allow(dead_code)]

use conacc_core::kripke::{enumerate_frames, Frame, FrameClass, Model, WorldSet};
use conacc_core::syntax::{metrics, Formula};
use proptest::prelude::*;
use proptest::test_runner::Config;

/// Which constructors a generated formula may use.
#[derive(Clone, Copy, Debug)]
pub enum Ops {
    /// ¬, ∧, ∇, • and their sugar (∨, →, ↔, Δ, ∘).
    NablaBullet,
    /// Every static operator, sugar included.
    Static,
    /// Every constructor.
    Full,
}

fn leaf(atoms: &'static [&'static str]) -> BoxedStrategy<Formula> {
    let names = proptest::sample::select(atoms).prop_map(|a| Formula::Atom(a.to_string()));
    prop_oneof![6 => names, 1 => Just(Formula::Top), 1 => Just(Formula::Bot)].boxed()
}

pub fn formula(ops: Ops, atoms: &'static [&'static str], depth: u32) -> BoxedStrategy<Formula> {
    leaf(atoms)
        .prop_recursive(depth, 24, 2, move |inner| {
            let i = || inner.clone();
            let mut arms: Vec<BoxedStrategy<Formula>> = vec![
                i().prop_map(Formula::not).boxed(),
                (i(), i()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
                (i(), i()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
                (i(), i()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
                (i(), i()).prop_map(|(a, b)| Formula::iff(a, b)).boxed(),
                i().prop_map(Formula::con).boxed(),
                i().prop_map(Formula::noncon).boxed(),
                i().prop_map(Formula::acc).boxed(),
                i().prop_map(Formula::ess).boxed(),
            ];
            if !matches!(ops, Ops::NablaBullet) {
                arms.push(i().prop_map(Formula::diamond).boxed());
                arms.push(i().prop_map(Formula::boxed).boxed());
            }
            if matches!(ops, Ops::Full) {
                arms.push((i(), i()).prop_map(|(a, b)| Formula::ann(a, b)).boxed());
                arms.push((i(), i()).prop_map(|(a, b)| Formula::ann_whether(a, b)).boxed());
            }
            proptest::strategy::Union::new(arms)
        })
        .boxed()
}

/// Formulas whose desugared size is at most `max_size`.
pub fn sized(ops: Ops, atoms: &'static [&'static str], max_size: usize) -> BoxedStrategy<Formula> {
    formula(ops, atoms, 5)
        .prop_filter("desugared size bound", move |f| metrics(f).size <= max_size)
        .boxed()
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        max_global_rejects: 1 << 20,
        ..Config::default()
    }
}

pub fn all_frames(max_worlds: usize) -> impl Iterator<Item = Frame> {
    (1..=max_worlds).flat_map(|n| enumerate_frames(n, FrameClass::K))
}

/// Every model on `frame` with the given atoms.
pub fn models(frame: &Frame, atoms: &[&str]) -> Vec<Model> {
    let n = frame.len();
    let total = 1u64 << (n * atoms.len());
    (0..total)
        .map(|v| {
            let mut m = Model::new(frame.clone());
            for (i, a) in atoms.iter().enumerate() {
                let bits = (v >> (i * n)) & ((1u64 << n) - 1);
                m.set_atom(a, WorldSet(bits));
            }
            m
        })
        .collect()
}
