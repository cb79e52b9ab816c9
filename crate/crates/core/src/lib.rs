//! Contingency and accident logic: syntax, Kripke semantics, announcement
//! reduction, bounded decision procedures and a Hilbert proof checker.

pub mod decide;
pub mod kripke;
pub mod proof;
pub mod suite;
pub mod syntax;
pub mod translate;

pub use kripke::{Frame, FrameClass, Model, PointedModel, WorldSet};
pub use syntax::{parse, render, Formula, LanguageTag};
