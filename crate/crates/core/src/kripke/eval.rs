//! The reference satisfaction relation.
//!
//! This evaluator follows the truth clauses one world at a time, handles every
//! connective (sugar included) directly, and builds a fresh submodel for each
//! announcement. It is slow and serves as the oracle for [`super::engine`].

use std::collections::BTreeMap;

use super::{KripkeError, Model, WorldSet};
use crate::syntax::Formula;

/// Truth of `f` at world index `s` of `m`.
pub fn eval(m: &Model, s: usize, f: &Formula) -> Result<bool, KripkeError> {
    if s >= m.len() {
        return Err(KripkeError::WorldOutOfRange(s));
    }
    Ok(holds(m, s, f))
}

/// The set of worlds of `m` satisfying `f`.
pub fn truth_set(m: &Model, f: &Formula) -> WorldSet {
    let mut out = WorldSet::EMPTY;
    for w in 0..m.len() {
        if holds(m, w, f) {
            out.insert(w);
        }
    }
    out
}

/// The submodel on the worlds satisfying `psi`.
pub fn restrict(m: &Model, psi: &Formula) -> Result<Model, KripkeError> {
    restrict_to_set(m, truth_set(m, psi))
}

pub(crate) fn restrict_to_set(m: &Model, keep: WorldSet) -> Result<Model, KripkeError> {
    let (frame, old) = m.frame.restrict_to(keep)?;
    let mut valuation = BTreeMap::new();
    for (atom, set) in m.valuation() {
        let mut sub = WorldSet::EMPTY;
        for (new, &w) in old.iter().enumerate() {
            if set.contains(w) {
                sub.insert(new);
            }
        }
        if !sub.is_empty() {
            valuation.insert(atom.clone(), sub);
        }
    }
    let mut out = Model::new(frame);
    for (atom, set) in valuation {
        out.set_atom(&atom, set);
    }
    Ok(out)
}

fn holds(m: &Model, s: usize, f: &Formula) -> bool {
    let succ = m.frame.successors(s);
    let some = |g: &Formula, want: bool| succ.iter().any(|t| holds(m, t, g) == want);
    match f {
        Formula::Atom(name) => m.atom(name).contains(s),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(a) => !holds(m, s, a),
        Formula::And(a, b) => holds(m, s, a) && holds(m, s, b),
        Formula::Or(a, b) => holds(m, s, a) || holds(m, s, b),
        Formula::Implies(a, b) => !holds(m, s, a) || holds(m, s, b),
        Formula::Iff(a, b) => holds(m, s, a) == holds(m, s, b),
        Formula::Con(a) => some(a, true) && some(a, false),
        // all successors agree
        Formula::NonCon(a) => !some(a, true) || !some(a, false),
        Formula::Acc(a) => holds(m, s, a) && some(a, false),
        // if true here, true at every successor
        Formula::Ess(a) => !holds(m, s, a) || !some(a, false),
        Formula::Diamond(a) => some(a, true),
        Formula::Box(a) => !some(a, false),
        Formula::Ann(psi, body) => announce(m, s, psi, body),
        Formula::AnnWhether(psi, body) => {
            let neg = Formula::not((**psi).clone());
            announce(m, s, psi, body) && announce(m, s, &neg, body)
        }
    }
}

fn announce(m: &Model, s: usize, psi: &Formula, body: &Formula) -> bool {
    let keep = truth_set(m, psi);
    if !keep.contains(s) {
        return true;
    }
    let sub = restrict_to_set(m, keep).expect("restriction contains s");
    let s_new = (keep.0 & ((1u64 << s) - 1)).count_ones() as usize;
    holds(&sub, s_new, body)
}
