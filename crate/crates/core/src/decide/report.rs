use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use super::Stats;
use crate::kripke::io::{ModelFile, PointedModelFile};
use crate::kripke::{eval, frame_valid, Frame, FrameClass, KripkeError, PointedModel};
use crate::syntax::{parse, render, Formula, LanguageTag, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    HoldsAtBound,
    Refuted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::HoldsAtBound => "HOLDS_AT_BOUND",
            Verdict::Refuted => "REFUTED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// `formula` is true at every pointed model up to the bound.
    Validity {
        formula: Formula,
        class: FrameClass,
        max_worlds: usize,
    },
    /// `formula` is false at every pointed model up to the bound.
    Satisfiability {
        formula: Formula,
        class: FrameClass,
        max_worlds: usize,
    },
    /// `formula` is frame-valid exactly on the frames of `class`.
    Definability {
        formula: Formula,
        class: FrameClass,
        max_worlds: usize,
    },
    /// No formula up to `max_size` tells `a` and `b` apart.
    Distinguish {
        a: PointedModel,
        b: PointedModel,
        language: LanguageTag,
        atoms: Vec<String>,
        max_size: usize,
    },
}

impl Query {
    pub fn kind(&self) -> &'static str {
        match self {
            Query::Validity { .. } => "valid",
            Query::Satisfiability { .. } => "unsat",
            Query::Definability { .. } => "defines",
            Query::Distinguish { .. } => "indistinguishable",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Query::Validity {
                formula,
                class,
                max_worlds,
            }
            | Query::Satisfiability {
                formula,
                class,
                max_worlds,
            }
            | Query::Definability {
                formula,
                class,
                max_worlds,
            } => format!(
                "{} class={} max-worlds={}: {}",
                self.kind(),
                class,
                max_worlds,
                render(formula)
            ),
            Query::Distinguish {
                language,
                atoms,
                max_size,
                ..
            } => format!(
                "{} language={} atoms={} max-size={}",
                self.kind(),
                language,
                atoms.join(","),
                max_size
            ),
        }
    }
}

/// Which side of a definability claim a frame breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Frame-valid, yet outside the class.
    ValidOutsideClass,
    /// In the class, yet not frame-valid.
    InvalidInsideClass,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::ValidOutsideClass => "valid-outside-class",
            Direction::InvalidInsideClass => "invalid-inside-class",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// For validity a falsifying pointed model, for satisfiability a
    /// satisfying one.
    Countermodel(PointedModel),
    Frame {
        frame: Frame,
        direction: Direction,
        /// Present for [`Direction::InvalidInsideClass`].
        falsifier: Option<PointedModel>,
    },
    Formula {
        formula: Formula,
        holds_in_first: bool,
    },
}

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("malformed witness: {0}")]
    Malformed(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Countermodel(pm) => json!({
                "kind": "pointed-model",
                "model": ModelFile::from_model(&pm.model),
                "world": pm.point_name(),
            }),
            Witness::Frame {
                frame,
                direction,
                falsifier,
            } => {
                let mut v = json!({
                    "kind": "frame",
                    "frame": ModelFile::from_frame(frame),
                    "direction": direction.name(),
                });
                if let Some(pm) = falsifier {
                    v["falsifier"] = json!(PointedModelFile::from_pointed(pm));
                }
                v
            }
            Witness::Formula {
                formula,
                holds_in_first,
            } => json!({
                "kind": "formula",
                "formula": render(formula),
                "holds_in": if *holds_in_first { "first" } else { "second" },
            }),
        }
    }

    /// Reads back the output of [`Witness::to_json`].
    pub fn from_json(v: &Value) -> Result<Witness, WitnessError> {
        let malformed = |what: &str| WitnessError::Malformed(what.to_string());
        let field = |k: &str| v.get(k).ok_or_else(|| malformed(k));
        let decode = |k: &str| -> Result<ModelFile, WitnessError> {
            serde_json::from_value(field(k)?.clone()).map_err(|e| WitnessError::Malformed(e.to_string()))
        };
        match field("kind")?.as_str() {
            Some("pointed-model") => {
                let model = decode("model")?.to_model()?;
                let world = field("world")?.as_str().ok_or_else(|| malformed("world"))?;
                Ok(Witness::Countermodel(PointedModel::named(model, world)?))
            }
            Some("frame") => {
                let frame = decode("frame")?.to_frame()?;
                let direction = match field("direction")?.as_str() {
                    Some("valid-outside-class") => Direction::ValidOutsideClass,
                    Some("invalid-inside-class") => Direction::InvalidInsideClass,
                    _ => return Err(malformed("direction")),
                };
                let falsifier = match v.get("falsifier") {
                    None => None,
                    Some(f) => {
                        let file: PointedModelFile =
                            serde_json::from_value(f.clone()).map_err(|e| WitnessError::Malformed(e.to_string()))?;
                        Some(file.to_pointed()?)
                    }
                };
                Ok(Witness::Frame {
                    frame,
                    direction,
                    falsifier,
                })
            }
            Some("formula") => {
                let text = field("formula")?.as_str().ok_or_else(|| malformed("formula"))?;
                let holds_in_first = match field("holds_in")?.as_str() {
                    Some("first") => true,
                    Some("second") => false,
                    _ => return Err(malformed("holds_in")),
                };
                Ok(Witness::Formula {
                    formula: parse(text)?,
                    holds_in_first,
                })
            }
            _ => Err(malformed("kind")),
        }
    }

    fn describe(&self) -> String {
        match self {
            Witness::Countermodel(pm) => format!("world {} of {}", pm.point_name(), pm.model),
            Witness::Frame {
                frame,
                direction,
                falsifier,
            } => {
                let mut s = format!("{} frame {}", direction.name(), frame);
                if let Some(pm) = falsifier {
                    s.push_str(&format!("; fails at world {} of {}", pm.point_name(), pm.model));
                }
                s
            }
            Witness::Formula {
                formula,
                holds_in_first,
            } => format!(
                "{} (true in the {} model)",
                render(formula),
                if *holds_in_first { "first" } else { "second" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub query: Query,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: Stats,
    /// Short name for sweep entries.
    pub label: Option<String>,
    pub note: Option<String>,
    /// The announcement-free formula actually searched, when it differs.
    pub reduced: Option<Formula>,
}

impl Report {
    pub fn new(query: Query, stats: Stats) -> Report {
        Report {
            query,
            verdict: Verdict::HoldsAtBound,
            witness: None,
            stats,
            label: None,
            note: None,
            reduced: None,
        }
    }

    pub fn refute(&mut self, witness: Witness) {
        self.verdict = Verdict::Refuted;
        self.witness = Some(witness);
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsAtBound
    }

    /// Re-derives the verdict from the witness with the reference evaluator.
    /// A report without a witness must hold at its bound.
    pub fn recheck(&self) -> bool {
        let Some(witness) = &self.witness else {
            return self.verdict == Verdict::HoldsAtBound;
        };
        self.verdict == Verdict::Refuted && witness_refutes(&self.query, witness)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "query": self.query.kind(),
            "description": self.query.describe(),
            "verdict": self.verdict.name(),
            "stats": self.stats,
        });
        if let Some(label) = &self.label {
            v["label"] = json!(label);
        }
        if let Some(note) = &self.note {
            v["note"] = json!(note);
        }
        if let Some(r) = &self.reduced {
            v["reduced"] = json!(render(r));
        }
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(&format!("{label}: "));
        }
        out.push_str(&format!("{}\n  {}\n", self.verdict, self.query.describe()));
        if let Some(note) = &self.note {
            out.push_str(&format!("  note: {note}\n"));
        }
        if let Some(r) = &self.reduced {
            out.push_str(&format!("  reduced: {}\n", render(r)));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("  witness: {}\n", w.describe()));
        }
        out.push_str(&format!(
            "  scanned: {} frames, {} valuations, {} formulas, {} work units\n",
            self.stats.frames_scanned,
            self.stats.valuations_scanned,
            self.stats.formulas_scanned,
            self.stats.work_units
        ));
        out
    }
}

fn witness_refutes(query: &Query, witness: &Witness) -> bool {
    let truth = |pm: &PointedModel, f: &Formula| eval(&pm.model, pm.point, f).unwrap_or(false);
    let frame_ok = |frame: &Frame, class: &FrameClass, max: &usize| class.holds(frame) && frame.len() <= *max;
    match (query, witness) {
        (
            Query::Validity {
                formula,
                class,
                max_worlds,
            },
            Witness::Countermodel(pm),
        ) => frame_ok(&pm.model.frame, class, max_worlds) && !truth(pm, formula),
        (
            Query::Satisfiability {
                formula,
                class,
                max_worlds,
            },
            Witness::Countermodel(pm),
        ) => frame_ok(&pm.model.frame, class, max_worlds) && truth(pm, formula),
        (
            Query::Definability {
                formula,
                class,
                max_worlds,
            },
            Witness::Frame {
                frame,
                direction,
                falsifier,
            },
        ) => {
            let Ok(verdict) = frame_valid(frame, formula) else {
                return false;
            };
            let sized = frame.len() <= *max_worlds;
            match direction {
                Direction::ValidOutsideClass => sized && verdict.is_valid() && !class.holds(frame),
                Direction::InvalidInsideClass => {
                    let falsified = falsifier
                        .as_ref()
                        .is_some_and(|pm| pm.model.frame == *frame && !truth(pm, formula));
                    sized && !verdict.is_valid() && class.holds(frame) && falsified
                }
            }
        }
        (
            Query::Distinguish {
                a,
                b,
                language,
                max_size,
                ..
            },
            Witness::Formula {
                formula,
                holds_in_first,
            },
        ) => {
            let ta = truth(a, formula);
            language.contains(formula)
                && crate::syntax::metrics(formula).size <= *max_size
                && ta != truth(b, formula)
                && ta == *holds_in_first
        }
        _ => false,
    }
}
