//! Announcement elimination by the reduction axioms.
//!
//! Each step rewrites one announcement `[ψ]φ` whose `ψ` is announcement-free,
//! choosing the axiom by the head of `φ`. Redexes are found in preorder, and
//! an announcement whose `ψ` still contains announcements is entered through
//! `ψ` first.

use std::fmt;

use thiserror::Error;

use crate::syntax::{render, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionAxiom {
    /// `[ψ]p ↔ (ψ → p)`, also used for `⊤` and `⊥`.
    AP,
    /// `[ψ]¬φ ↔ (ψ → ¬[ψ]φ)`
    AN,
    /// `[ψ](φ∧χ) ↔ ([ψ]φ ∧ [ψ]χ)`
    AC,
    /// `[ψ][χ]φ ↔ [ψ ∧ [ψ]χ]φ`
    AA,
    /// `[ψ]∇φ ↔ (ψ → ∇[ψ]φ ∧ ∇[ψ]¬φ)`
    ANabla,
    /// `[ψ]•φ ↔ (ψ → •[ψ]φ)`
    ABullet,
    /// `[ψ]Δφ ↔ (ψ → Δ[ψ]φ ∨ Δ[ψ]¬φ)`
    ADelta,
    /// `[ψ]∘φ ↔ (ψ → ∘[ψ]φ)`
    ACirc,
    /// `[ψ]◇φ ↔ (ψ → ◇(ψ ∧ [ψ]φ))`
    ADiamond,
    /// Expansion of an abbreviation under an announcement.
    Desugar,
}

impl ReductionAxiom {
    pub const ALL: [ReductionAxiom; 10] = [
        ReductionAxiom::AP,
        ReductionAxiom::AN,
        ReductionAxiom::AC,
        ReductionAxiom::AA,
        ReductionAxiom::ANabla,
        ReductionAxiom::ABullet,
        ReductionAxiom::ADelta,
        ReductionAxiom::ACirc,
        ReductionAxiom::ADiamond,
        ReductionAxiom::Desugar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionAxiom::AP => "AP",
            ReductionAxiom::AN => "AN",
            ReductionAxiom::AC => "AC",
            ReductionAxiom::AA => "AA",
            ReductionAxiom::ANabla => "A∇",
            ReductionAxiom::ABullet => "A•",
            ReductionAxiom::ADelta => "ADelta",
            ReductionAxiom::ACirc => "ACirc",
            ReductionAxiom::ADiamond => "ADiamond",
            ReductionAxiom::Desugar => "DESUGAR",
        }
    }

    pub fn from_name(name: &str) -> Option<ReductionAxiom> {
        ReductionAxiom::ALL.into_iter().find(|a| a.name() == name)
    }

    /// Rewrites `before` by this axiom, if it has the right shape.
    pub fn apply(self, before: &Formula) -> Option<Formula> {
        use Formula as F;
        if self == ReductionAxiom::Desugar {
            return desugar_step(before);
        }
        let F::Ann(psi, body) = before else {
            return None;
        };
        let psi = (**psi).clone();
        let ann = |x: Formula| F::ann(psi.clone(), x);
        let guarded = |x: Formula| F::implies(psi.clone(), x);
        match (self, &**body) {
            (ReductionAxiom::AP, F::Atom(_) | F::Top | F::Bot) => Some(guarded((**body).clone())),
            (ReductionAxiom::AN, F::Not(a)) => Some(guarded(F::not(ann((**a).clone())))),
            (ReductionAxiom::AC, F::And(a, b)) => Some(F::and(ann((**a).clone()), ann((**b).clone()))),
            (ReductionAxiom::AA, F::Ann(chi, phi)) => {
                Some(F::ann(F::and(psi.clone(), ann((**chi).clone())), (**phi).clone()))
            }
            (ReductionAxiom::ANabla, F::Con(a)) => Some(guarded(F::and(
                F::con(ann((**a).clone())),
                F::con(ann(F::not((**a).clone()))),
            ))),
            (ReductionAxiom::ABullet, F::Acc(a)) => Some(guarded(F::acc(ann((**a).clone())))),
            (ReductionAxiom::ADelta, F::NonCon(a)) => Some(guarded(F::or(
                F::noncon(ann((**a).clone())),
                F::noncon(ann(F::not((**a).clone()))),
            ))),
            (ReductionAxiom::ACirc, F::Ess(a)) => Some(guarded(F::ess(ann((**a).clone())))),
            (ReductionAxiom::ADiamond, F::Diamond(a)) => {
                Some(guarded(F::diamond(F::and(psi.clone(), ann((**a).clone())))))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ReductionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One-level expansion of `[?ψ]φ`, or of a derived connective directly under
/// an announcement.
fn desugar_step(f: &Formula) -> Option<Formula> {
    use Formula as F;
    match f {
        F::AnnWhether(psi, body) => Some(F::and(
            F::ann((**psi).clone(), (**body).clone()),
            F::ann(F::not((**psi).clone()), (**body).clone()),
        )),
        F::Ann(psi, body) => {
            let expanded = match &**body {
                F::Or(a, b) => F::not(F::and(F::not((**a).clone()), F::not((**b).clone()))),
                F::Implies(a, b) => F::not(F::and((**a).clone(), F::not((**b).clone()))),
                F::Iff(a, b) => F::and(
                    F::implies((**a).clone(), (**b).clone()),
                    F::implies((**b).clone(), (**a).clone()),
                ),
                F::Box(a) => F::not(F::diamond(F::not((**a).clone()))),
                F::AnnWhether(..) => desugar_step(body)?,
                _ => return None,
            };
            Some(F::ann((**psi).clone(), expanded))
        }
        _ => None,
    }
}

/// The axiom the strategy uses for a redex.
fn choose(redex: &Formula) -> ReductionAxiom {
    use Formula as F;
    match redex {
        F::AnnWhether(..) => ReductionAxiom::Desugar,
        F::Ann(_, body) => match &**body {
            F::Atom(_) | F::Top | F::Bot => ReductionAxiom::AP,
            F::Not(_) => ReductionAxiom::AN,
            F::And(..) => ReductionAxiom::AC,
            F::Ann(..) => ReductionAxiom::AA,
            F::Con(_) => ReductionAxiom::ANabla,
            F::Acc(_) => ReductionAxiom::ABullet,
            F::NonCon(_) => ReductionAxiom::ADelta,
            F::Ess(_) => ReductionAxiom::ACirc,
            F::Diamond(_) => ReductionAxiom::ADiamond,
            F::Or(..) | F::Implies(..) | F::Iff(..) | F::Box(_) | F::AnnWhether(..) => ReductionAxiom::Desugar,
        },
        _ => unreachable!("redexes are announcements"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Child indices from the root to the rewritten subformula.
    pub path: Vec<usize>,
    pub axiom: ReductionAxiom,
    pub before: Formula,
    pub after: Formula,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One line per step: index, axiom, position, before and after.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let path: Vec<String> = s.path.iter().map(usize::to_string).collect();
            let at = if path.is_empty() {
                "root".to_string()
            } else {
                path.join(".")
            };
            out.push_str(&format!(
                "{}\t{}\t@{}\t{}\t=>\t{}\n",
                i + 1,
                s.axiom,
                at,
                render(&s.before),
                render(&s.after)
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub formula: Formula,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("reduction did not finish within {0} steps")]
    OutOfFuel(usize),
    #[error("step {step}: no subformula at the recorded position")]
    BadPath { step: usize },
    #[error("step {step}: subformula differs from the recorded one")]
    Mismatch { step: usize },
    #[error("step {step}: {axiom} does not produce the recorded result")]
    WrongRewrite { step: usize, axiom: ReductionAxiom },
}

const DEFAULT_FUEL: usize = 10_000_000;

/// Eliminates all announcements from `f`.
pub fn reduce_announcements(f: &Formula) -> Reduction {
    reduce_announcements_with_fuel(f, DEFAULT_FUEL).expect("reduction terminates")
}

pub fn reduce_announcements_with_fuel(f: &Formula, fuel: usize) -> Result<Reduction, ReduceError> {
    let mut current = f.clone();
    let mut trace = ReductionTrace::default();
    while let Some(path) = find_redex(&current, Vec::new()) {
        if trace.steps.len() >= fuel {
            return Err(ReduceError::OutOfFuel(fuel));
        }
        let slot = subterm_mut(&mut current, &path).expect("redex path is valid");
        let axiom = choose(slot);
        let after = axiom.apply(slot).expect("chosen axiom applies");
        let before = std::mem::replace(slot, after.clone());
        trace.steps.push(ReductionStep {
            path,
            axiom,
            before,
            after,
        });
    }
    Ok(Reduction {
        formula: current,
        trace,
    })
}

fn find_redex(f: &Formula, mut path: Vec<usize>) -> Option<Vec<usize>> {
    match f {
        Formula::Ann(psi, _) | Formula::AnnWhether(psi, _) => {
            if psi.has_announcement() {
                path.push(0);
                find_redex(psi, path)
            } else {
                Some(path)
            }
        }
        _ => f.children().into_iter().enumerate().find_map(|(i, c)| {
            let mut p = path.clone();
            p.push(i);
            find_redex(c, p)
        }),
    }
}

fn subterm_mut<'a>(f: &'a mut Formula, path: &[usize]) -> Option<&'a mut Formula> {
    match path.split_first() {
        None => Some(f),
        Some((&i, rest)) => {
            let child = f.children_mut().into_iter().nth(i)?;
            subterm_mut(child, rest)
        }
    }
}

/// Re-applies a trace to `input`, checking every step.
pub fn replay(input: &Formula, trace: &ReductionTrace) -> Result<Formula, ReduceError> {
    let mut current = input.clone();
    for (step, s) in trace.steps.iter().enumerate() {
        let slot = subterm_mut(&mut current, &s.path).ok_or(ReduceError::BadPath { step })?;
        if *slot != s.before {
            return Err(ReduceError::Mismatch { step });
        }
        if s.axiom.apply(slot).as_ref() != Some(&s.after) {
            return Err(ReduceError::WrongRewrite { step, axiom: s.axiom });
        }
        *slot = s.after.clone();
    }
    Ok(current)
}
