//! Unary algebras over a finite signature: word combinatorics, finite
//! presentations, the normalizer deciding semi-Peano presentations, cyclic
//! factors `P/ω`, a bounded congruence-closure oracle and the unarised
//! pairing groupoid.

pub mod cyclic;
pub mod error;
pub mod normalizer;
pub mod oracle;
pub mod presentation;
pub mod unarise;
pub mod words;

pub use cyclic::{epi_power, iso, BallGraph, CyclicAlgebra, Edge, Element, IsoMap, IsoWitness};
pub use error::{
    CyclicError, OracleError, PairingError, ParseError, PresentationError, SignatureMismatch,
    WordError,
};
pub use normalizer::{
    is_isomorphic, is_peano, normalize, peel, rank, reduce_cycles, Decomposition, DerivationStep,
    GeneratorAssignment, NormalForm, NotSemiPeano, PeelOutcome, Rule, Violation,
};
pub use oracle::{
    ball_closure, cross_check, default_bound, oracle_equal, oracle_report, Ball, ClosureResult,
    ClosureStatus, Discrepancy, OracleAnswer, Report,
};
pub use presentation::{parse_presentation, GenId, Presentation, Relation, Term};
pub use unarise::{decompose_pairing, orbit, pair, unpair, UnarisedAlgebra, Variant};
pub use words::{
    canonical_rotation, is_conjugate, least_rotation_index, ConjugacyWitness, Signature, Symbol,
    Word,
};
