//! Translation into the `◇`-language and elimination of announcements.

mod reduce;

use thiserror::Error;

pub use reduce::{
    reduce_announcements, reduce_announcements_with_fuel, replay, ReduceError, Reduction, ReductionAxiom,
    ReductionStep, ReductionTrace,
};

use crate::decide::{search, DecideError};
use crate::kripke::{FrameClass, PointedModel};
use crate::syntax::{atoms, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula contains announcements; reduce them first")]
    AnnouncementPresent,
}

/// Rewrites `∇`, `•` and their duals in terms of `◇`:
/// `∇φ ↦ ◇φ ∧ ◇¬φ` and `•φ ↦ φ ∧ ◇¬φ`.
pub fn to_diamond(f: &Formula) -> Result<Formula, TranslateError> {
    use Formula as F;
    let con = |a: Formula| F::and(F::diamond(a.clone()), F::diamond(F::not(a)));
    let acc = |a: Formula| F::and(a.clone(), F::diamond(F::not(a)));
    Ok(match f {
        F::Ann(..) | F::AnnWhether(..) => return Err(TranslateError::AnnouncementPresent),
        F::Con(a) => con(to_diamond(a)?),
        F::NonCon(a) => F::not(con(to_diamond(a)?)),
        F::Acc(a) => acc(to_diamond(a)?),
        F::Ess(a) => F::not(acc(to_diamond(a)?)),
        _ => {
            let mut out = f.clone();
            for child in out.children_mut() {
                *child = to_diamond(child)?;
            }
            out
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// A pointed model where exactly one of the two formulas holds.
    Differs(PointedModel),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

/// Compares `f` and `g` at every world of every model over frames of class
/// `c` with at most `max_worlds` worlds. Announcements are evaluated directly.
pub fn equivalent_bounded(
    f: &Formula,
    g: &Formula,
    c: FrameClass,
    max_worlds: usize,
) -> Result<Equivalence, DecideError> {
    let iff = Formula::iff(f.clone(), g.clone());
    let names: Vec<String> = atoms(&iff).into_iter().collect();
    let scan = search::scan(&iff, &names, c, max_worlds, false)?;
    Ok(match scan.hit {
        None => Equivalence::Equivalent,
        Some(hit) => Equivalence::Differs(hit.pointed_model(&names)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::eval;
    use crate::syntax::{parse, LanguageTag};

    #[test]
    fn diamond_translation_examples() {
        assert_eq!(
            to_diamond(&parse("C p").unwrap()).unwrap(),
            parse("<>p & <>~p").unwrap()
        );
        assert_eq!(to_diamond(&parse("A p").unwrap()).unwrap(), parse("p & <>~p").unwrap());
        assert_eq!(to_diamond(&parse("p").unwrap()).unwrap(), parse("p").unwrap());
        assert_eq!(
            to_diamond(&parse("[!p] q").unwrap()),
            Err(TranslateError::AnnouncementPresent)
        );
        let out = to_diamond(&parse("D O (p | C q)").unwrap()).unwrap();
        assert!(LanguageTag::Diamond.contains(&out));
    }

    #[test]
    fn equivalence_examples() {
        let p = |t: &str| parse(t).unwrap();
        assert!(equivalent_bounded(&p("C p"), &p("C ~p"), FrameClass::K, 3)
            .unwrap()
            .is_equivalent());
        let f = p("C q");
        assert!(equivalent_bounded(&f, &f, FrameClass::K, 2).unwrap().is_equivalent());
        match equivalent_bounded(&p("A p"), &p("C p"), FrameClass::K, 2).unwrap() {
            Equivalence::Differs(pm) => {
                let a = eval(&pm.model, pm.point, &p("A p")).unwrap();
                let b = eval(&pm.model, pm.point, &p("C p")).unwrap();
                assert_ne!(a, b);
                assert_eq!(pm.model.len(), 2);
            }
            Equivalence::Equivalent => panic!("A p and C p differ"),
        }
    }

    #[test]
    fn vacuous_announcement_is_identity() {
        for text in ["C p", "A(p -> q)", "D q & <> p", "[!q] A p"] {
            let f = parse(text).unwrap();
            let r = reduce_announcements(&Formula::ann(Formula::Top, f.clone()));
            assert!(!r.formula.has_announcement());
            assert!(equivalent_bounded(&r.formula, &f, FrameClass::K, 3)
                .unwrap()
                .is_equivalent());
        }
    }
}
