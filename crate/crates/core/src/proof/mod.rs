//! Hilbert-style proofs: axiom schemas, a line-by-line checker, a builder for
//! hand derivations and a corpus of checked derivations.

mod builder;
mod check;
mod corpus;
mod schema;
mod system;
mod taut;

pub use builder::ProofBuilder;
pub use check::{check_proof, mutations, Justification, Line, LineError, LineFault, Proof, ProofFileError};
pub use corpus::{builtin_corpus, corpus_entry, CorpusEntry};
pub use schema::{is_metavariable, match_schema, Schema, Substitution, CHI, PHI, PI, PSI};
pub use system::{SystemName, RULES};
pub use taut::{taut_check, TautError, MAX_TAUT_VARIABLES};
