//! Model checking and countermodel search for sublogics of the
//! interpretability logic IL over two relational semantics: Veltman
//! frames `(W, R, {S_x})` and simplified Veltman frames `(W, R, S)`.
//!
//! The crate provides
//! - the formula language with `□` and the binary modality `▷`
//!   ([`formula`]),
//! - forcing, frame validation, and frame-condition checks for both frame
//!   kinds ([`veltman`], [`simplified`]),
//! - the chain- and trace-based transformations that turn a Veltman
//!   countermodel into a finite simplified one, plus the strengthening
//!   reduction from simplified IL⁻(J2plus, J5) models to simplified IL
//!   models ([`constructions`]),
//! - frame enumeration, bounded countermodel search, and semantic
//!   derivability checks ([`decision`]).

pub mod constructions;
pub mod decision;
mod error;
mod eval;
pub mod formula;
pub mod relation;
pub mod simplified;
pub mod veltman;

pub use constructions::{
    construct_sv, construct_sv2, construct_svil, reduce_il, strengthen, ChainModel, ChainWorld,
    ConstructionError, SvilModel, TraceWorld,
};
pub use decision::{
    check_derivability_facts, enumerate_simplified_frames, enumerate_veltman_frames,
    find_countermodel, DecisionError, FactsReport, SearchResult, SearchSemantics, Verdict,
    Witness,
};
pub use error::{EvalError, FrameViolation, ModelError, ValidationReport};
pub use formula::{Axiom, Formula, ParseError};
pub use relation::Relation;
pub use simplified::{LogicId, Semantics, SimplifiedFrame, SimplifiedModel};
pub use veltman::{VeltmanFrame, VeltmanModel};
