//! Bounded decision procedures over enumerated finite frames.
//!
//! Every search walks frames in the canonical order (fewest worlds, then
//! relation index, then valuation index, then world) and returns the first
//! witness it meets, so results are reproducible.

mod conjecture;
mod report;
pub mod search;

use thiserror::Error;

pub use conjecture::{conjecture_instances, conjecture_sweep, conjecture_sweep_with, ConjectureBounds, Series};
pub use report::{Direction, Query, Report, Verdict, Witness, WitnessError};
pub use search::{Stats, MAX_BOUND};

use crate::kripke::engine::{valuation_count, Evaluator, Program, Valuations};
use crate::kripke::{first_with_value, FrameClass, KripkeError, PointedModel};
use crate::syntax::{atoms, Formula, FormulaDag, LanguageTag};
use crate::translate::reduce_announcements;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("bound out of range: {0}")]
    Bound(String),
    #[error("formula contains announcements; reduce them first")]
    AnnouncementPresent,
}

fn atom_list(f: &Formula) -> Vec<String> {
    atoms(f).into_iter().collect()
}

/// Searches for a pointed model in class `c` falsifying `f`. Announcements
/// are reduced away before the search.
pub fn find_countermodel(f: &Formula, c: FrameClass, max_worlds: usize) -> Result<Report, DecideError> {
    pointed_search(f, c, max_worlds, false)
}

pub fn valid_bounded(f: &Formula, c: FrameClass, max_worlds: usize) -> Result<bool, DecideError> {
    Ok(find_countermodel(f, c, max_worlds)?.verdict == Verdict::HoldsAtBound)
}

/// Searches for a pointed model in class `c` satisfying `f`. The query is
/// "`f` is unsatisfiable up to the bound"; a witness refutes it.
pub fn sat_bounded(f: &Formula, c: FrameClass, max_worlds: usize) -> Result<Report, DecideError> {
    pointed_search(f, c, max_worlds, true)
}

fn pointed_search(f: &Formula, c: FrameClass, max_worlds: usize, want: bool) -> Result<Report, DecideError> {
    let reduced = f.has_announcement().then(|| reduce_announcements(f).formula);
    let target = reduced.as_ref().unwrap_or(f);
    let names = atom_list(f);
    let scan = search::scan(target, &names, c, max_worlds, want)?;
    let query = if want {
        Query::Satisfiability {
            formula: f.clone(),
            class: c,
            max_worlds,
        }
    } else {
        Query::Validity {
            formula: f.clone(),
            class: c,
            max_worlds,
        }
    };
    let mut report = Report::new(query, scan.stats);
    report.reduced = reduced;
    if let Some(hit) = scan.hit {
        report.refute(Witness::Countermodel(hit.pointed_model(&names)));
    }
    Ok(report)
}

/// Checks that `f` is valid on exactly the frames of class `c`, over all
/// frames with at most `max_worlds` worlds.
pub fn defines_property(f: &Formula, c: FrameClass, max_worlds: usize) -> Result<Report, DecideError> {
    if f.has_announcement() {
        return Err(DecideError::AnnouncementPresent);
    }
    let names = atom_list(f);
    if valuation_count(names.len(), max_worlds.min(MAX_BOUND)).is_none() {
        return Err(DecideError::Bound("too many valuations".into()));
    }
    let prog = Program::compile(f, &names);
    let (hit, frames) = search::first_frame(max_worlds, |ev, frame| {
        let failure = first_with_value(ev, &prog, frame, false).expect("valuation count checked");
        match (failure, c.holds(frame)) {
            (None, false) => Some((Direction::ValidOutsideClass, None)),
            (Some(vw), true) => Some((Direction::InvalidInsideClass, Some(vw))),
            _ => None,
        }
    })?;
    let stats = definability_stats(names.len(), max_worlds, frames, &hit, prog.len());
    let mut report = Report::new(
        Query::Definability {
            formula: f.clone(),
            class: c,
            max_worlds,
        },
        stats,
    );
    if let Some((frame, (direction, failure))) = hit {
        let falsifier = failure.map(|(v, w)| PointedModel {
            model: crate::kripke::engine::model_from_index(&frame, &names, v),
            point: w,
        });
        report.refute(Witness::Frame {
            frame,
            direction,
            falsifier,
        });
    }
    Ok(report)
}

type FrameHit = Option<(crate::kripke::Frame, (Direction, Option<(u64, usize)>))>;

fn definability_stats(atom_count: usize, max_worlds: usize, frames: u64, hit: &FrameHit, len: usize) -> Stats {
    // index space covered, counting the hit frame's valuations up to the witness
    let mut left = frames;
    let mut valuations = 0u64;
    for n in 1..=max_worlds {
        let here = left.min(crate::kripke::relation_count(n));
        valuations += here * valuation_count(atom_count, n).expect("checked");
        left -= here;
        if left == 0 {
            if let Some((frame, (_, partial))) = hit {
                let per = valuation_count(atom_count, frame.len()).expect("checked");
                valuations -= per - partial.map_or(per, |(v, _)| v + 1);
            }
            break;
        }
    }
    Stats {
        frames_scanned: frames,
        valuations_scanned: valuations,
        work_units: valuations * len as u64,
        formulas_scanned: 1,
    }
}

/// Searches the enumeration of `language` over `atoms` for the first formula
/// true at exactly one of the two pointed models.
pub fn distinguishing_formula<S: AsRef<str>>(
    a: &PointedModel,
    b: &PointedModel,
    language: LanguageTag,
    atoms: &[S],
    max_size: usize,
) -> Result<Report, DecideError> {
    if max_size == 0 {
        return Err(DecideError::Bound("max size must be at least 1".into()));
    }
    let names: Vec<String> = atoms.iter().map(|s| s.as_ref().to_string()).collect();
    let query = Query::Distinguish {
        a: a.clone(),
        b: b.clone(),
        language,
        atoms: names.clone(),
        max_size,
    };
    let mut dag = FormulaDag::new(&names, language);
    let mut ev_a = Evaluator::new();
    let mut ev_b = Evaluator::new();
    for k in 1..=max_size {
        dag.grow();
        let (prog, slots) = Program::from_dag(&dag);
        let va: Vec<_> = names.iter().map(|n| a.model.atom(n)).collect();
        let vb: Vec<_> = names.iter().map(|n| b.model.atom(n)).collect();
        ev_a.run(&prog, a.model.frame.successor_sets(), Valuations::Fixed(&va));
        ev_b.run(&prog, b.model.frame.successor_sets(), Valuations::Fixed(&vb));
        let found = dag.level(k).find(|&id| {
            let s = slots[id as usize];
            (ev_a.slot(s, a.point)[0] ^ ev_b.slot(s, b.point)[0]) & 1 == 1
        });
        if let Some(id) = found {
            let formula = dag.formula(id);
            let holds_in_first = ev_a.slot(slots[id as usize], a.point)[0] & 1 == 1;
            let mut report = Report::new(query, distinguish_stats(u64::from(id) + 1));
            report.refute(Witness::Formula {
                formula,
                holds_in_first,
            });
            return Ok(report);
        }
    }
    Ok(Report::new(query, distinguish_stats(dag.len() as u64)))
}

fn distinguish_stats(formulas: u64) -> Stats {
    Stats {
        frames_scanned: 2,
        valuations_scanned: 2,
        work_units: 2 * formulas,
        formulas_scanned: formulas,
    }
}
