use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Frame, WorldSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameClass {
    K,
    D,
    T,
    B,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "conv")]
    Conv,
}

impl FrameClass {
    pub const ALL: [FrameClass; 7] = [
        FrameClass::K,
        FrameClass::D,
        FrameClass::T,
        FrameClass::B,
        FrameClass::Four,
        FrameClass::Five,
        FrameClass::Conv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::K => "K",
            FrameClass::D => "D",
            FrameClass::T => "T",
            FrameClass::B => "B",
            FrameClass::Four => "4",
            FrameClass::Five => "5",
            FrameClass::Conv => "conv",
        }
    }

    /// Decides membership by quantifying over worlds.
    pub fn holds(self, frame: &Frame) -> bool {
        let succ = frame.successor_sets();
        let n = succ.len();
        match self {
            FrameClass::K => true,
            FrameClass::D => succ.iter().all(|s| !s.is_empty()),
            FrameClass::T => (0..n).all(|w| succ[w].contains(w)),
            FrameClass::B => (0..n).all(|a| succ[a].iter().all(|b| succ[b].contains(a))),
            // every successor's successors are successors
            FrameClass::Four => succ.iter().all(|s| s.iter().all(|t| succ[t].0 & !s.0 == 0)),
            // every successor sees every successor
            FrameClass::Five => succ.iter().all(|s| s.iter().all(|t| s.0 & !succ[t].0 == 0)),
            FrameClass::Conv => succ
                .iter()
                .all(|s| s.iter().all(|t| s.iter().all(|u| succ[t].0 & succ[u].0 != 0))),
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" | "k" => Ok(FrameClass::K),
            "D" | "d" => Ok(FrameClass::D),
            "T" | "t" => Ok(FrameClass::T),
            "B" | "b" => Ok(FrameClass::B),
            "4" => Ok(FrameClass::Four),
            "5" => Ok(FrameClass::Five),
            "conv" | "CONV" => Ok(FrameClass::Conv),
            _ => Err(format!(
                "unknown frame class `{s}` (expected one of K, D, T, B, 4, 5, conv)"
            )),
        }
    }
}

/// Drops the self-loop of every world whose only successor is itself.
pub fn mirror_reduction(frame: &Frame) -> Frame {
    let mut out = frame.clone();
    for w in 0..frame.len() {
        if frame.successors(w) == WorldSet::singleton(w) {
            out.set_edge(w, w, false);
        }
    }
    out
}

pub fn reflexive_closure(frame: &Frame) -> Frame {
    let mut out = frame.clone();
    for w in 0..frame.len() {
        out.set_edge(w, w, true);
    }
    out
}

/// Adds a self-loop at every world without successors.
pub fn reflexivize_dead_ends(frame: &Frame) -> Frame {
    let mut out = frame.clone();
    for w in 0..frame.len() {
        if frame.successors(w).is_empty() {
            out.set_edge(w, w, true);
        }
    }
    out
}
