//! Integers written as words in Ackermann or psi functions, the hydra
//! groups `G_k`, membership in `H_k = <a_1 t, ..., a_k t>` and the word
//! problem for `Gamma_k`.
//!
//! Nothing here ever expands a compressed integer: validity and sign are
//! decided by rewriting, with every stored integer bounded by a small
//! multiple of the input length. Exact big-integer evaluators live in
//! [`oracles`] for testing.

pub mod ack_core;
pub mod engine;
pub mod error;
pub mod hydra_alg;
pub mod membership;
pub mod oracles;
pub mod psi_core;
pub mod text;
pub mod word;

pub use engine::{BoundsTable, Engine, Stats, TraceEvent};
pub use error::{EngineError, ParseError};
pub use hydra_alg::{Gen, GenLetter, GroupWord, NormalForm, Piece};
pub use membership::CosetResult;
pub use oracles::ExactResult;
pub use text::{parse_ack_word, parse_group_word, parse_psi_word};
pub use word::{classify, Ack, AckWord, Family, Letter, Psi, PsiWord, Rewrite, Sign, Verdict, Word};
