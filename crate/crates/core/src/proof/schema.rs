use std::collections::BTreeMap;
use std::mem::discriminant;

use crate::syntax::{desugar, parse, Formula};

/// Metavariable names. They cannot clash with object atoms, which are ASCII.
pub const PHI: &str = "φ";
pub const PSI: &str = "ψ";
pub const CHI: &str = "χ";
/// Ranges over atoms only.
pub const PI: &str = "π";

pub fn is_metavariable(name: &str) -> bool {
    matches!(name, PHI | PSI | CHI | PI)
}

/// Bindings from metavariable names to desugared formulas.
pub type Substitution = BTreeMap<String, Formula>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    /// As written, with abbreviations; matching desugars it.
    pub pattern: Formula,
    core: Formula,
}

impl Schema {
    /// Builds a schema from ASCII text whose atoms `phi`, `psi`, `chi`, `pi`
    /// stand for the metavariables.
    pub fn new(name: &'static str, text: &str) -> Schema {
        let raw = parse(text).expect("schema text parses");
        let pattern = raw.substitute(&|a| {
            let meta = match a {
                "phi" => PHI,
                "psi" => PSI,
                "chi" => CHI,
                "pi" => PI,
                other => panic!("schema `{name}` uses object atom `{other}`"),
            };
            Some(Formula::Atom(meta.to_string()))
        });
        let core = desugar(&pattern);
        Schema { name, pattern, core }
    }

    /// The instance obtained by replacing metavariables.
    pub fn instantiate(&self, bindings: &[(&str, Formula)]) -> Formula {
        self.pattern
            .substitute(&|a| bindings.iter().find(|(m, _)| *m == a).map(|(_, f)| f.clone()))
    }

    /// The instance with `φ ↦ p`, `ψ ↦ q`, `χ ↦ r`, `π ↦ p`.
    pub fn generic_instance(&self) -> Formula {
        let atom = |n: &str| Formula::Atom(n.to_string());
        self.instantiate(&[(PHI, atom("p")), (PSI, atom("q")), (CHI, atom("r")), (PI, atom("p"))])
    }
}

/// Matches `f` against the schema's pattern, both desugared. The first
/// occurrence of a metavariable fixes its binding; later ones must agree.
pub fn match_schema(s: &Schema, f: &Formula) -> Option<Substitution> {
    let mut subst = Substitution::new();
    unify(&s.core, &desugar(f), &mut subst).then_some(subst)
}

/// Like [`match_schema`] for an already desugared formula.
pub(crate) fn match_core(s: &Schema, core: &Formula) -> bool {
    unify(&s.core, core, &mut Substitution::new())
}

fn unify(pattern: &Formula, f: &Formula, subst: &mut Substitution) -> bool {
    if let Formula::Atom(name) = pattern {
        if is_metavariable(name) {
            if name == PI && !matches!(f, Formula::Atom(_)) {
                return false;
            }
            return match subst.get(name) {
                Some(bound) => bound == f,
                None => {
                    subst.insert(name.clone(), f.clone());
                    true
                }
            };
        }
    }
    if discriminant(pattern) != discriminant(f) {
        return false;
    }
    match (pattern, f) {
        (Formula::Atom(a), Formula::Atom(b)) => a == b,
        _ => {
            let (pc, fc) = (pattern.children(), f.children());
            pc.len() == fc.len() && pc.into_iter().zip(fc).all(|(p, g)| unify(p, g, subst))
        }
    }
}
