//! Formulas of the contingency/accident language and their concrete syntax.
//!
//! The primitive modalities are `∇` (contingency, written `C`), `•` (accident,
//! written `A`) and `◇` (written `<>`). `Δ`, `∘` and `□` are kept as their own
//! constructors so that formulas print the way they were written, and are
//! removed by [`desugar`] when a canonical form is needed.

mod enumerate;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use enumerate::{count_formulas, enumerate_formulas, FormulaDag, Node, NodeId};
pub use parse::{is_atom_name, parse, ParseError};
pub use print::{render, render_parenthesized, render_unicode};

/// Abstract syntax tree of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `∇φ`: some successor satisfies φ and some successor falsifies it.
    Con(Box<Formula>),
    /// `Δφ`, sugar for `¬∇φ`.
    NonCon(Box<Formula>),
    /// `•φ`: φ holds here and some successor falsifies it.
    Acc(Box<Formula>),
    /// `∘φ`, sugar for `¬•φ`.
    Ess(Box<Formula>),
    Diamond(Box<Formula>),
    /// `□φ`, sugar for `¬◇¬φ`.
    Box(Box<Formula>),
    /// `[ψ]φ`: public announcement of `announced`, then `body`.
    Ann(Box<Formula>, Box<Formula>),
    /// `[?ψ]φ`, sugar for `[ψ]φ ∧ [¬ψ]φ`.
    AnnWhether(Box<Formula>, Box<Formula>),
}

/// Sub-languages used by enumeration and membership tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LanguageTag {
    /// `∇` and `•`.
    NablaBullet,
    Nabla,
    Bullet,
    /// `◇` only.
    Diamond,
    /// Every operator, announcements included.
    Full,
}

impl LanguageTag {
    pub const ALL: [LanguageTag; 5] = [
        LanguageTag::NablaBullet,
        LanguageTag::Nabla,
        LanguageTag::Bullet,
        LanguageTag::Diamond,
        LanguageTag::Full,
    ];

    pub fn allows_con(self) -> bool {
        matches!(self, Self::NablaBullet | Self::Nabla | Self::Full)
    }

    pub fn allows_acc(self) -> bool {
        matches!(self, Self::NablaBullet | Self::Bullet | Self::Full)
    }

    pub fn allows_diamond(self) -> bool {
        matches!(self, Self::Diamond | Self::Full)
    }

    pub fn allows_announcements(self) -> bool {
        matches!(self, Self::Full)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::NablaBullet => "nabla-bullet",
            Self::Nabla => "nabla",
            Self::Bullet => "bullet",
            Self::Diamond => "diamond",
            Self::Full => "full",
        }
    }

    /// Whether `f` lies in this language once its sugar is expanded.
    pub fn contains(self, f: &Formula) -> bool {
        fn walk(lang: LanguageTag, f: &Formula) -> bool {
            match f {
                Formula::Atom(_) | Formula::Top | Formula::Bot => true,
                Formula::Not(a) => walk(lang, a),
                Formula::And(a, b) => walk(lang, a) && walk(lang, b),
                Formula::Con(a) => lang.allows_con() && walk(lang, a),
                Formula::Acc(a) => lang.allows_acc() && walk(lang, a),
                Formula::Diamond(a) => lang.allows_diamond() && walk(lang, a),
                Formula::Ann(a, b) => lang.allows_announcements() && walk(lang, a) && walk(lang, b),
                _ => unreachable!("desugared formula"),
            }
        }
        walk(self, &desugar(f))
    }
}

impl std::str::FromStr for LanguageTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nabla-bullet" | "nabla_bullet" | "nb" => Ok(Self::NablaBullet),
            "nabla" => Ok(Self::Nabla),
            "bullet" => Ok(Self::Bullet),
            "diamond" => Ok(Self::Diamond),
            "full" => Ok(Self::Full),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size and nesting measures of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    /// Node count after desugaring.
    pub size: usize,
    /// Maximal nesting of `∇`, `•`, `◇`.
    pub modal_depth: usize,
    /// Maximal nesting of announcements.
    pub announcement_depth: usize,
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.to_string())
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn con(a: Formula) -> Formula {
        Formula::Con(Box::new(a))
    }
    pub fn noncon(a: Formula) -> Formula {
        Formula::NonCon(Box::new(a))
    }
    pub fn acc(a: Formula) -> Formula {
        Formula::Acc(Box::new(a))
    }
    pub fn ess(a: Formula) -> Formula {
        Formula::Ess(Box::new(a))
    }
    pub fn diamond(a: Formula) -> Formula {
        Formula::Diamond(Box::new(a))
    }
    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }
    pub fn ann(announced: Formula, body: Formula) -> Formula {
        Formula::Ann(Box::new(announced), Box::new(body))
    }
    pub fn ann_whether(announced: Formula, body: Formula) -> Formula {
        Formula::AnnWhether(Box::new(announced), Box::new(body))
    }

    /// Left-nested conjunction of a nonempty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut it = items.into_iter();
        let first = it.next().expect("conjunction of an empty list");
        it.fold(first, Formula::and)
    }

    /// Right-nested implication `a1 -> (a2 -> ... -> goal)`.
    pub fn implies_chain<I>(premises: I, goal: Formula) -> Formula
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        premises.into_iter().rev().fold(goal, |acc, p| Formula::implies(p, acc))
    }

    /// Immediate subformulas, in left-to-right order.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Atom(_) | Top | Bot => vec![],
            Not(a) | Con(a) | NonCon(a) | Acc(a) | Ess(a) | Diamond(a) | Box(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Ann(a, b) | AnnWhether(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn children_mut(&mut self) -> Vec<&mut Formula> {
        use Formula::*;
        match self {
            Atom(_) | Top | Bot => vec![],
            Not(a) | Con(a) | NonCon(a) | Acc(a) | Ess(a) | Diamond(a) | Box(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Ann(a, b) | AnnWhether(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn has_announcement(&self) -> bool {
        matches!(self, Formula::Ann(..) | Formula::AnnWhether(..))
            || self.children().into_iter().any(Formula::has_announcement)
    }

    /// Replaces atoms by formulas; atoms not in the map are left alone.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(name) => map(name).unwrap_or_else(|| self.clone()),
            _ => {
                let mut out = self.clone();
                for child in out.children_mut() {
                    *child = child.substitute(map);
                }
                out
            }
        }
    }

    /// Node count of the formula as written (no desugaring).
    pub fn raw_size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::raw_size).sum::<usize>()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Expands every abbreviation. The result uses only atoms, `⊤`, `⊥`, `¬`, `∧`,
/// `∇`, `•`, `◇` and `[ψ]`.
pub fn desugar(f: &Formula) -> Formula {
    use Formula as F;
    let d = |x: &Formula| desugar(x);
    match f {
        F::Atom(_) | F::Top | F::Bot => f.clone(),
        F::Not(a) => F::not(d(a)),
        F::And(a, b) => F::and(d(a), d(b)),
        F::Or(a, b) => F::not(F::and(F::not(d(a)), F::not(d(b)))),
        F::Implies(a, b) => F::not(F::and(d(a), F::not(d(b)))),
        F::Iff(a, b) => {
            let (a, b) = (d(a), d(b));
            F::and(
                F::not(F::and(a.clone(), F::not(b.clone()))),
                F::not(F::and(b, F::not(a))),
            )
        }
        F::Con(a) => F::con(d(a)),
        F::NonCon(a) => F::not(F::con(d(a))),
        F::Acc(a) => F::acc(d(a)),
        F::Ess(a) => F::not(F::acc(d(a))),
        F::Diamond(a) => F::diamond(d(a)),
        F::Box(a) => F::not(F::diamond(F::not(d(a)))),
        F::Ann(a, b) => F::ann(d(a), d(b)),
        F::AnnWhether(a, b) => {
            let (a, b) = (d(a), d(b));
            F::and(F::ann(a.clone(), b.clone()), F::ann(F::not(a), b))
        }
    }
}

/// Structural equality modulo abbreviations.
pub fn equal_up_to_sugar(a: &Formula, b: &Formula) -> bool {
    a == b || desugar(a) == desugar(b)
}

/// The atom names occurring in `f`.
pub fn atoms(f: &Formula) -> BTreeSet<String> {
    fn walk(f: &Formula, acc: &mut BTreeSet<String>) {
        if let Formula::Atom(name) = f {
            acc.insert(name.clone());
        }
        for c in f.children() {
            walk(c, acc);
        }
    }
    let mut acc = BTreeSet::new();
    walk(f, &mut acc);
    acc
}

pub fn metrics(f: &Formula) -> Metrics {
    fn walk(f: &Formula) -> Metrics {
        let kids: Vec<Metrics> = f.children().into_iter().map(walk).collect();
        let size = 1 + kids.iter().map(|m| m.size).sum::<usize>();
        let modal = kids.iter().map(|m| m.modal_depth).max().unwrap_or(0);
        let ann = kids.iter().map(|m| m.announcement_depth).max().unwrap_or(0);
        match f {
            Formula::Con(_) | Formula::Acc(_) | Formula::Diamond(_) => Metrics {
                size,
                modal_depth: modal + 1,
                announcement_depth: ann,
            },
            Formula::Ann(..) => Metrics {
                size,
                modal_depth: modal,
                announcement_depth: ann + 1,
            },
            _ => Metrics {
                size,
                modal_depth: modal,
                announcement_depth: ann,
            },
        }
    }
    walk(&desugar(f))
}
