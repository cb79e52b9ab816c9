//! Ordered, partitioned scans over frames and valuations.
//!
//! The canonical order is: fewest worlds, then relation index, then valuation
//! index, then world. Relation ranges are split into fixed partitions that
//! workers scan independently; `find_map_first` keeps the least hit, so the
//! result does not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use super::DecideError;
use crate::kripke::engine::{model_from_index, valuation_count, Evaluator, Program};
use crate::kripke::{relation_count, Frame, FrameClass, Model, PointedModel};
use crate::syntax::Formula;

/// Relation indices per partition.
pub const PARTITION: u64 = 256;

/// Largest world bound accepted by bounded searches.
pub const MAX_BOUND: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hit {
    pub worlds: usize,
    pub relation: u64,
    pub valuation: u64,
    pub world: usize,
}

impl Hit {
    pub fn frame(&self) -> Frame {
        Frame::from_relation_index(self.worlds, self.relation)
    }

    pub fn model<S: AsRef<str>>(&self, atoms: &[S]) -> Model {
        model_from_index(&self.frame(), atoms, self.valuation)
    }

    pub fn pointed_model<S: AsRef<str>>(&self, atoms: &[S]) -> PointedModel {
        PointedModel {
            model: self.model(atoms),
            point: self.world,
        }
    }
}

/// Work counters derived from enumeration indices only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub frames_scanned: u64,
    pub valuations_scanned: u64,
    /// Valuations times compiled program length.
    pub work_units: u64,
    pub formulas_scanned: u64,
}

impl Stats {
    pub fn add(&mut self, other: Stats) {
        self.frames_scanned += other.frames_scanned;
        self.valuations_scanned += other.valuations_scanned;
        self.work_units += other.work_units;
        self.formulas_scanned = self.formulas_scanned.max(other.formulas_scanned);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub hit: Option<Hit>,
    pub stats: Stats,
}

pub fn check_bound(max_worlds: usize) -> Result<(), DecideError> {
    if (1..=MAX_BOUND).contains(&max_worlds) {
        Ok(())
    } else {
        Err(DecideError::Bound(format!(
            "max worlds must lie in 1..={MAX_BOUND}, got {max_worlds}"
        )))
    }
}

/// First pointed model over frames of class `c` (up to `max_worlds` worlds)
/// where `f` evaluates to `want`. Valuations range over `atoms`.
pub fn scan(f: &Formula, atoms: &[String], c: FrameClass, max_worlds: usize, want: bool) -> Result<Scan, DecideError> {
    check_bound(max_worlds)?;
    if valuation_count(atoms.len(), max_worlds).is_none() {
        return Err(DecideError::Bound(format!(
            "{} atoms on {max_worlds} worlds is too many valuations",
            atoms.len()
        )));
    }
    let prog = Program::compile(f, atoms);
    let mut stats = Stats::default();
    for n in 1..=max_worlds {
        let total = relation_count(n);
        let hit = (0..total.div_ceil(PARTITION)).into_par_iter().find_map_first(|part| {
            let mut ev = Evaluator::new();
            let end = ((part + 1) * PARTITION).min(total);
            (part * PARTITION..end).find_map(|r| {
                let frame = Frame::from_relation_index(n, r);
                if !c.holds(&frame) {
                    return None;
                }
                crate::kripke::first_with_value(&mut ev, &prog, &frame, want)
                    .expect("valuation count checked")
                    .map(|(valuation, world)| Hit {
                        worlds: n,
                        relation: r,
                        valuation,
                        world,
                    })
            })
        });
        let per_frame = valuation_count(atoms.len(), n).expect("checked");
        let upto = hit.map_or(total, |h| h.relation + 1);
        let frames = count_in_class(n, c, upto);
        let valuations = match hit {
            None => frames * per_frame,
            Some(h) => (frames - 1) * per_frame + h.valuation + 1,
        };
        stats.add(Stats {
            frames_scanned: frames,
            valuations_scanned: valuations,
            work_units: valuations * prog.len() as u64,
            formulas_scanned: 1,
        });
        if hit.is_some() {
            return Ok(Scan { hit, stats });
        }
    }
    Ok(Scan { hit: None, stats })
}

/// Frames of class `c` on `n` worlds with relation index below `end`.
pub fn count_in_class(n: usize, c: FrameClass, end: u64) -> u64 {
    if c == FrameClass::K {
        return end;
    }
    (0..end)
        .into_par_iter()
        .filter(|&r| c.holds(&Frame::from_relation_index(n, r)))
        .count() as u64
}

/// First frame (fewest worlds, then relation index) over all frames up to
/// `max_worlds` for which `test` returns a value.
pub fn first_frame<T, F>(max_worlds: usize, test: F) -> Result<(Option<(Frame, T)>, u64), DecideError>
where
    T: Send,
    F: Fn(&mut Evaluator, &Frame) -> Option<T> + Sync,
{
    check_bound(max_worlds)?;
    let mut scanned = 0;
    for n in 1..=max_worlds {
        let total = relation_count(n);
        let hit = (0..total.div_ceil(PARTITION)).into_par_iter().find_map_first(|part| {
            let mut ev = Evaluator::new();
            let end = ((part + 1) * PARTITION).min(total);
            (part * PARTITION..end).find_map(|r| {
                let frame = Frame::from_relation_index(n, r);
                test(&mut ev, &frame).map(|t| (r, frame, t))
            })
        });
        match hit {
            Some((r, frame, t)) => return Ok((Some((frame, t)), scanned + r + 1)),
            None => scanned += total,
        }
    }
    Ok((None, scanned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::eval;
    use crate::syntax::parse;

    fn names(f: &Formula) -> Vec<String> {
        crate::syntax::atoms(f).into_iter().collect()
    }

    /// Sequential scan with the reference evaluator.
    fn slow_first(f: &Formula, c: FrameClass, max: usize, want: bool) -> Option<Hit> {
        let atoms = names(f);
        for n in 1..=max {
            for r in 0..relation_count(n) {
                let frame = Frame::from_relation_index(n, r);
                if !c.holds(&frame) {
                    continue;
                }
                for v in 0..valuation_count(atoms.len(), n).unwrap() {
                    let m = model_from_index(&frame, &atoms, v);
                    for w in 0..n {
                        if eval(&m, w, f).unwrap() == want {
                            return Some(Hit {
                                worlds: n,
                                relation: r,
                                valuation: v,
                                world: w,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn matches_sequential_reference_scan() {
        for (text, c, want) in [
            ("A(p -> q) & A(~p -> r) -> A p", FrameClass::K, false),
            ("A p", FrameClass::K, true),
            ("C p & [] q", FrameClass::D, true),
            ("D p -> D D p", FrameClass::K, false),
            ("A p -> p", FrameClass::T, false),
            ("[! A p] A p", FrameClass::Four, false),
        ] {
            let f = parse(text).unwrap();
            let fast = scan(&f, &names(&f), c, 3, want).unwrap().hit;
            assert_eq!(fast, slow_first(&f, c, 3, want), "{text} on {c}");
        }
    }

    #[test]
    fn exhaustive_stats() {
        let f = parse("p | ~p").unwrap();
        let s = scan(&f, &names(&f), FrameClass::K, 2, false).unwrap();
        assert!(s.hit.is_none());
        assert_eq!(s.stats.frames_scanned, 2 + 16);
        assert_eq!(s.stats.valuations_scanned, 2 * 2 + 16 * 4);
        let d = scan(&f, &names(&f), FrameClass::D, 2, false).unwrap();
        assert_eq!(d.stats.frames_scanned, 1 + 9);
    }

    #[test]
    fn bound_checks() {
        let f = parse("p").unwrap();
        assert!(scan(&f, &names(&f), FrameClass::K, 0, false).is_err());
        assert!(scan(&f, &names(&f), FrameClass::K, MAX_BOUND + 1, false).is_err());
    }
}
