//! Frames, models and the satisfaction relation.
//!
//! Worlds are dense indices internally and strings in interchange files. A
//! relation is stored as one successor bitset per world, which caps a frame at
//! [`MAX_WORLDS`] worlds.

mod classes;
pub mod engine;
mod enumerate;
mod eval;
pub mod io;
mod validity;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use classes::{mirror_reduction, reflexive_closure, reflexivize_dead_ends, FrameClass};
pub use enumerate::{enumerate_frames, enumerate_frames_range, relation_count, FrameIter};
pub use eval::{eval, restrict, truth_set};
pub(crate) use validity::first_with_value;
pub use validity::{frame_valid, valuation_from_index, FrameVerdict, FrameWitness};

pub const MAX_WORLDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world index {0} out of range")]
    WorldOutOfRange(usize),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("frames are limited to {MAX_WORLDS} worlds, got {0}")]
    TooManyWorlds(usize),
    #[error("`{0}` is not a valid atom name")]
    BadAtom(String),
    #[error("announcement restriction to an empty set of worlds")]
    EmptyRestriction,
    #[error("formula contains announcements; reduce them first")]
    AnnouncementPresent,
    #[error("{atoms} atoms on {worlds} worlds exceed the valuation index range")]
    TooManyValuations { atoms: usize, worlds: usize },
    #[error("{0}")]
    Format(String),
}

/// A set of worlds, one bit per world index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> WorldSet {
        if n >= 64 {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> WorldSet {
        WorldSet(1u64 << w)
    }

    pub fn contains(self, w: usize) -> bool {
        self.0 >> w & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1u64 << w;
    }

    pub fn remove(&mut self, w: usize) {
        self.0 &= !(1u64 << w);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w)
            }
        })
    }
}

/// A finite Kripke frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    names: Vec<String>,
    succ: Vec<WorldSet>,
}

impl Frame {
    /// Builds a frame from world names and named arrows.
    pub fn new<S: AsRef<str>>(worlds: &[S], relation: &[(S, S)]) -> Result<Frame, KripkeError> {
        let names: Vec<String> = worlds.iter().map(|w| w.as_ref().to_string()).collect();
        let mut frame = Frame::empty_named(names)?;
        for (a, b) in relation {
            let i = frame.index_of(a.as_ref())?;
            let j = frame.index_of(b.as_ref())?;
            frame.succ[i].insert(j);
        }
        Ok(frame)
    }

    fn empty_named(names: Vec<String>) -> Result<Frame, KripkeError> {
        if names.is_empty() {
            return Err(KripkeError::NoWorlds);
        }
        if names.len() > MAX_WORLDS {
            return Err(KripkeError::TooManyWorlds(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(KripkeError::DuplicateWorld(n.clone()));
            }
        }
        let succ = vec![WorldSet::EMPTY; names.len()];
        Ok(Frame { names, succ })
    }

    /// Builds a frame on worlds `w0..w{n-1}` from successor sets.
    pub fn from_successors(succ: Vec<WorldSet>) -> Result<Frame, KripkeError> {
        let n = succ.len();
        let mut frame = Frame::empty_named(default_names(n))?;
        let full = WorldSet::full(n);
        for (i, s) in succ.into_iter().enumerate() {
            if s.0 & !full.0 != 0 {
                return Err(KripkeError::WorldOutOfRange(63 - s.0.leading_zeros() as usize));
            }
            frame.succ[i] = s;
        }
        Ok(frame)
    }

    /// Builds a frame from index pairs on worlds `w0..w{n-1}`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Frame, KripkeError> {
        let mut frame = Frame::empty_named(default_names(n))?;
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(KripkeError::WorldOutOfRange(i.max(j)));
            }
            frame.succ[i].insert(j);
        }
        Ok(frame)
    }

    /// The frame whose relation has bit `i * n + j` of `index` set iff `i R j`.
    pub fn from_relation_index(n: usize, index: u64) -> Frame {
        assert!((1..=7).contains(&n), "relation indices cover 1..=7 worlds");
        let mut succ = vec![WorldSet::EMPTY; n];
        for (i, s) in succ.iter_mut().enumerate() {
            s.0 = (index >> (i * n)) & ((1u64 << n) - 1);
        }
        Frame {
            names: default_names(n),
            succ,
        }
    }

    /// Inverse of [`Frame::from_relation_index`].
    pub fn relation_index(&self) -> u64 {
        let n = self.len();
        self.succ
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, s)| acc | (s.0 << (i * n)))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Frame, KripkeError> {
        let renamed = Frame::empty_named(names)?;
        if renamed.len() != self.len() {
            return Err(KripkeError::Format("world count mismatch".into()));
        }
        self.names = renamed.names;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, KripkeError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| KripkeError::UnknownWorld(name.to_string()))
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        self.succ[w]
    }

    pub fn successor_sets(&self) -> &[WorldSet] {
        &self.succ
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn set_edge(&mut self, a: usize, b: usize, present: bool) {
        if present {
            self.succ[a].insert(b);
        } else {
            self.succ[a].remove(b);
        }
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// Arrows as index pairs, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |j| (i, j)))
            .collect()
    }

    /// The subframe on `keep`, preserving world order.
    pub fn restrict_to(&self, keep: WorldSet) -> Result<(Frame, Vec<usize>), KripkeError> {
        if keep.is_empty() {
            return Err(KripkeError::EmptyRestriction);
        }
        let old: Vec<usize> = keep.iter().collect();
        let names = old.iter().map(|&w| self.names[w].clone()).collect();
        let succ = old.iter().map(|&w| compress(self.succ[w], &old)).collect();
        Ok((Frame { names, succ }, old))
    }
}

/// Re-indexes `set` onto positions of `old` (which must be sorted).
fn compress(set: WorldSet, old: &[usize]) -> WorldSet {
    let mut out = WorldSet::EMPTY;
    for (new, &w) in old.iter().enumerate() {
        if set.contains(w) {
            out.insert(new);
        }
    }
    out
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{}->{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "{{{}}} [{}]", self.names.join(","), arrows.join(", "))
    }
}

/// A frame with a valuation. Atoms missing from the map are false everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    pub frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl Model {
    pub fn new(frame: Frame) -> Model {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    pub fn with_atom(mut self, atom: &str, worlds: WorldSet) -> Model {
        self.set_atom(atom, worlds);
        self
    }

    /// Sets `V(atom)`; bits beyond the frame size are dropped.
    pub fn set_atom(&mut self, atom: &str, worlds: WorldSet) {
        let masked = WorldSet(worlds.0 & self.frame.all_worlds().0);
        if masked.is_empty() {
            self.valuation.remove(atom);
        } else {
            self.valuation.insert(atom.to_string(), masked);
        }
    }

    /// Sets `V(atom)` from world names.
    pub fn set_atom_named<S: AsRef<str>>(&mut self, atom: &str, worlds: &[S]) -> Result<(), KripkeError> {
        let mut set = WorldSet::EMPTY;
        for w in worlds {
            set.insert(self.frame.index_of(w.as_ref())?);
        }
        self.set_atom(atom, set);
        Ok(())
    }

    pub fn atom(&self, atom: &str) -> WorldSet {
        self.valuation.get(atom).copied().unwrap_or_default()
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.frame)?;
        for (atom, set) in &self.valuation {
            let names: Vec<&str> = set.iter().map(|w| self.frame.name(w)).collect();
            write!(f, " {atom}={{{}}}", names.join(","))?;
        }
        Ok(())
    }
}

/// A model together with a designated world.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedModel {
    pub model: Model,
    pub point: usize,
}

impl PointedModel {
    pub fn new(model: Model, point: usize) -> Result<PointedModel, KripkeError> {
        if point >= model.len() {
            return Err(KripkeError::WorldOutOfRange(point));
        }
        Ok(PointedModel { model, point })
    }

    pub fn named(model: Model, point: &str) -> Result<PointedModel, KripkeError> {
        let point = model.frame.index_of(point)?;
        Ok(PointedModel { model, point })
    }

    pub fn point_name(&self) -> &str {
        self.model.frame.name(self.point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_index_roundtrip() {
        for n in 1..=3 {
            for idx in 0..(1u64 << (n * n)) {
                assert_eq!(Frame::from_relation_index(n, idx).relation_index(), idx);
            }
        }
    }

    #[test]
    fn frame_validation() {
        assert_eq!(Frame::new::<&str>(&[], &[]), Err(KripkeError::NoWorlds));
        assert_eq!(
            Frame::new(&["s", "s"], &[]),
            Err(KripkeError::DuplicateWorld("s".into()))
        );
        assert_eq!(
            Frame::new(&["s"], &[("s", "t")]),
            Err(KripkeError::UnknownWorld("t".into()))
        );
        let f = Frame::new(&["s", "t"], &[("s", "t"), ("t", "t")]).unwrap();
        assert_eq!(f.edges(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn restriction_reindexes() {
        let f = Frame::from_pairs(3, &[(0, 2), (2, 1), (2, 2)]).unwrap();
        let (sub, old) = f.restrict_to(WorldSet(0b101)).unwrap();
        assert_eq!(old, vec![0, 2]);
        assert_eq!(sub.edges(), vec![(0, 1), (1, 1)]);
        assert_eq!(sub.names(), &["w0".to_string(), "w2".to_string()]);
    }
}
