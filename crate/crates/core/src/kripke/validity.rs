use super::engine::{block_plan, model_from_index, valuation_count, Evaluator, Program, Valuations};
use super::{Frame, KripkeError, Model};
use crate::syntax::{atoms, Formula};

/// A falsifying valuation and world for a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameWitness {
    /// Index in the canonical valuation order over the formula's atoms.
    pub valuation_index: u64,
    pub world: usize,
    pub model: Model,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameVerdict {
    Valid,
    Invalid(FrameWitness),
}

impl FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameVerdict::Valid)
    }
}

/// The model on `frame` for valuation index `v` over the sorted atoms of `f`.
pub fn valuation_from_index(frame: &Frame, f: &Formula, v: u64) -> Model {
    let atoms: Vec<String> = atoms(f).into_iter().collect();
    model_from_index(frame, &atoms, v)
}

/// Decides whether `f` is true at every world under every valuation of its
/// atoms. The witness is the least valuation index, then the least world.
pub fn frame_valid(frame: &Frame, f: &Formula) -> Result<FrameVerdict, KripkeError> {
    if f.has_announcement() {
        return Err(KripkeError::AnnouncementPresent);
    }
    let atoms: Vec<String> = atoms(f).into_iter().collect();
    let prog = Program::compile(f, &atoms);
    let mut ev = Evaluator::new();
    Ok(match first_with_value(&mut ev, &prog, frame, false)? {
        None => FrameVerdict::Valid,
        Some((valuation_index, world)) => FrameVerdict::Invalid(FrameWitness {
            valuation_index,
            world,
            model: model_from_index(frame, &atoms, valuation_index),
        }),
    })
}

/// First (valuation index, world) in canonical order where the program's root
/// evaluates to `want`, scanning all valuations over the program's atoms.
pub(crate) fn first_with_value(
    ev: &mut Evaluator,
    prog: &Program,
    frame: &Frame,
    want: bool,
) -> Result<Option<(u64, usize)>, KripkeError> {
    let n = frame.len();
    let total = valuation_count(prog.atoms().len(), n).ok_or(KripkeError::TooManyValuations {
        atoms: prog.atoms().len(),
        worlds: n,
    })?;
    let (words, blocks, valid) = block_plan(total);
    let flip = if want { 0 } else { u64::MAX };
    let mut hits = vec![0u64; words];
    for b in 0..blocks {
        let base = b * 64 * words as u64;
        ev.run(prog, frame.successor_sets(), Valuations::Block { base, words });
        hits.fill(0);
        for w in 0..n {
            for (h, x) in hits.iter_mut().zip(ev.root(prog, w)) {
                *h |= (x ^ flip) & valid;
            }
        }
        if let Some(j) = hits.iter().position(|&h| h != 0) {
            let bit = hits[j].trailing_zeros();
            let world = (0..n)
                .find(|&w| (ev.root(prog, w)[j] ^ flip) >> bit & 1 == 1)
                .expect("some world hit");
            return Ok(Some((base + 64 * j as u64 + bit as u64, world)));
        }
    }
    Ok(None)
}
