use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::schema::match_core;
use super::system::SystemName;
use super::taut::{taut_check, TautError};
use crate::syntax::{desugar, parse, render, Formula, ParseError};

/// How a line is obtained. Line references are 1-based and must point at
/// strictly earlier lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Justification {
    /// A schema of the system; `A0` is the tautology oracle.
    Axiom {
        name: String,
    },
    Taut,
    /// `from = [i, j]` with line `j` equal to `line i → this line`.
    Mp {
        from: [usize; 2],
    },
    R1 {
        from: [usize; 1],
    },
    R2 {
        from: [usize; 1],
    },
    R3 {
        from: [usize; 1],
    },
    R4 {
        from: [usize; 1],
    },
    Premise {
        index: usize,
    },
}

impl Justification {
    pub fn mp(i: usize, j: usize) -> Justification {
        Justification::Mp { from: [i, j] }
    }

    pub fn axiom(name: &str) -> Justification {
        Justification::Axiom { name: name.to_string() }
    }

    /// Lines this justification refers to.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::Mp { from } => from.to_vec(),
            Justification::R1 { from }
            | Justification::R2 { from }
            | Justification::R3 { from }
            | Justification::R4 { from } => from.to_vec(),
            _ => vec![],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Justification::Axiom { name } => name.clone(),
            Justification::Taut => "TAUT".into(),
            Justification::Mp { from: [i, j] } => format!("MP {i},{j}"),
            Justification::R1 { from: [i] } => format!("R1 {i}"),
            Justification::R2 { from: [i] } => format!("R2 {i}"),
            Justification::R3 { from: [i] } => format!("R3 {i}"),
            Justification::R4 { from: [i] } => format!("R4 {i}"),
            Justification::Premise { index } => format!("premise {index}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub system: SystemName,
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    /// The same proof with every atom renamed by `map`.
    pub fn rename_atoms(&self, map: &dyn Fn(&str) -> String) -> Proof {
        let sub = |f: &Formula| f.substitute(&|a| Some(Formula::Atom(map(a))));
        Proof {
            system: self.system,
            premises: self.premises.iter().map(sub).collect(),
            lines: self
                .lines
                .iter()
                .map(|l| Line {
                    formula: sub(&l.formula),
                    just: l.just.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProofFile::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Proof, ProofFileError> {
        let file: ProofFile = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
        file.try_into()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("system {}\n", self.system);
        for (k, p) in self.premises.iter().enumerate() {
            out.push_str(&format!("premise {}: {}\n", k + 1, render(p)));
        }
        for (i, l) in self.lines.iter().enumerate() {
            out.push_str(&format!(
                "{:>3}. {}    [{}]\n",
                i + 1,
                render(&l.formula),
                l.just.describe()
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("malformed proof file: {0}")]
    Json(String),
    #[error("formula `{text}` does not parse: {source}")]
    Formula { text: String, source: ParseError },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofFile {
    system: SystemName,
    #[serde(default)]
    premises: Vec<String>,
    lines: Vec<LineFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    formula: String,
    just: Justification,
}

impl From<&Proof> for ProofFile {
    fn from(p: &Proof) -> ProofFile {
        ProofFile {
            system: p.system,
            premises: p.premises.iter().map(render).collect(),
            lines: p
                .lines
                .iter()
                .map(|l| LineFile {
                    formula: render(&l.formula),
                    just: l.just.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ProofFile> for Proof {
    type Error = ProofFileError;

    fn try_from(file: ProofFile) -> Result<Proof, ProofFileError> {
        let p = |text: String| parse(&text).map_err(|source| ProofFileError::Formula { text, source });
        Ok(Proof {
            system: file.system,
            premises: file.premises.into_iter().map(p).collect::<Result<_, _>>()?,
            lines: file
                .lines
                .into_iter()
                .map(|l| {
                    Ok(Line {
                        formula: p(l.formula)?,
                        just: l.just,
                    })
                })
                .collect::<Result<_, ProofFileError>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineFault {
    #[error("no axiom `{0}` in this system")]
    UnknownAxiom(String),
    #[error("not an instance of {0}")]
    NotAnInstance(String),
    #[error("not a tautology")]
    NotATautology,
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error("line {0} is not an earlier line")]
    BadReference(usize),
    #[error("line {0} is not `{1} → this line` for line {1}")]
    MpMismatch(usize, usize),
    #[error("line {0} is not an equivalence")]
    NotAnEquivalence(usize),
    #[error("{0} applied to line {1} does not give this line")]
    RuleMismatch(&'static str, usize),
    #[error("no premise {0}")]
    BadPremise(usize),
    #[error("does not match premise {0}")]
    PremiseMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {fault}")]
pub struct LineError {
    pub line: usize,
    pub fault: LineFault,
}

/// The fixed set of single-line justification mutations for line `line`
/// (1-based) of `proof`: the next schema of the system, `A0` and `Taut` for
/// axioms; an axiom for `Taut`; swapped and self-referencing MP; the other
/// rule of the same pair, and self-reference, for R1..R4; the next premise.
pub fn mutations(proof: &Proof, line: usize) -> Vec<Justification> {
    let names: Vec<&str> = proof.system.schemas().iter().map(|s| s.name).collect();
    let mut out = vec![];
    match &proof.lines[line - 1].just {
        Justification::Axiom { name } => {
            if let Some(pos) = names.iter().position(|n| n == name) {
                out.push(Justification::axiom(names[(pos + 1) % names.len()]));
            }
            out.push(Justification::axiom("A0"));
            out.push(Justification::Taut);
        }
        Justification::Taut => out.push(Justification::axiom("A1")),
        &Justification::Mp { from: [a, b] } => {
            out.push(Justification::mp(b, a));
            out.push(Justification::mp(a, line));
        }
        &Justification::R1 { from } => {
            out.push(Justification::R2 { from });
            out.push(Justification::R1 { from: [line] });
        }
        &Justification::R2 { from } => out.push(Justification::R1 { from }),
        &Justification::R3 { from } => out.push(Justification::R4 { from }),
        &Justification::R4 { from } => out.push(Justification::R3 { from }),
        &Justification::Premise { index } => out.push(Justification::Premise { index: index + 1 }),
    }
    out
}

/// Checks every line and returns all faults, in line order.
pub fn check_proof(p: &Proof) -> Result<(), Vec<LineError>> {
    let cores: Vec<Formula> = p.lines.iter().map(|l| desugar(&l.formula)).collect();
    let errors: Vec<LineError> = p
        .lines
        .iter()
        .enumerate()
        .filter_map(|(i, line)| {
            check_line(p, &cores, i, line)
                .err()
                .map(|fault| LineError { line: i + 1, fault })
        })
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn check_line(p: &Proof, cores: &[Formula], i: usize, line: &Line) -> Result<(), LineFault> {
    let here = &cores[i];
    let earlier = |k: usize| {
        if (1..=i).contains(&k) {
            Ok(&cores[k - 1])
        } else {
            Err(LineFault::BadReference(k))
        }
    };
    let rule = |name: &'static str, k: usize, expect: Formula| {
        if desugar(&expect) == *here {
            Ok(())
        } else {
            Err(LineFault::RuleMismatch(name, k))
        }
    };
    match &line.just {
        Justification::Axiom { name } if name == "A0" => taut(here),
        Justification::Taut => taut(here),
        Justification::Axiom { name } => {
            let schema = p
                .system
                .schema(name)
                .ok_or_else(|| LineFault::UnknownAxiom(name.clone()))?;
            if match_core(schema, here) {
                Ok(())
            } else {
                Err(LineFault::NotAnInstance(schema.name.to_string()))
            }
        }
        &Justification::Mp { from: [a, b] } => {
            let (fa, fb) = (earlier(a)?, earlier(b)?);
            if *fb == desugar(&Formula::implies(fa.clone(), here.clone())) {
                Ok(())
            } else {
                Err(LineFault::MpMismatch(b, a))
            }
        }
        &Justification::R1 { from: [k] } => rule("R1", k, Formula::noncon(earlier(k)?.clone())),
        &Justification::R2 { from: [k] } => rule("R2", k, Formula::ess(earlier(k)?.clone())),
        &Justification::R3 { from: [k] } => {
            let (a, b) = equivalence_sides(earlier(k)?).ok_or(LineFault::NotAnEquivalence(k))?;
            rule("R3", k, Formula::iff(Formula::noncon(a), Formula::noncon(b)))
        }
        &Justification::R4 { from: [k] } => {
            let (a, b) = equivalence_sides(earlier(k)?).ok_or(LineFault::NotAnEquivalence(k))?;
            rule("R4", k, Formula::iff(Formula::ess(a), Formula::ess(b)))
        }
        &Justification::Premise { index } => {
            let premise = index
                .checked_sub(1)
                .and_then(|k| p.premises.get(k))
                .ok_or(LineFault::BadPremise(index))?;
            if desugar(premise) == *here {
                Ok(())
            } else {
                Err(LineFault::PremiseMismatch(index))
            }
        }
    }
}

fn taut(f: &Formula) -> Result<(), LineFault> {
    if taut_check(f)? {
        Ok(())
    } else {
        Err(LineFault::NotATautology)
    }
}

/// Reads `α ↔ β` back from its desugared shape `¬(α∧¬β) ∧ ¬(β∧¬α)`.
fn equivalence_sides(core: &Formula) -> Option<(Formula, Formula)> {
    use Formula::{And, Not};
    let Formula::And(l, r) = core else { return None };
    let (Not(l), Not(r)) = (l.as_ref(), r.as_ref()) else {
        return None;
    };
    let (And(a, nb), And(b2, na2)) = (l.as_ref(), r.as_ref()) else {
        return None;
    };
    let (Not(b), Not(a2)) = (nb.as_ref(), na2.as_ref()) else {
        return None;
    };
    (a == a2 && b == b2).then(|| (a.as_ref().clone(), b.as_ref().clone()))
}
