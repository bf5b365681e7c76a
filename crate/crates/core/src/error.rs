//! Error and report types shared by the two frame kinds.

use std::fmt;

use thiserror::Error;

use crate::eval::MAX_VALUATION_BITS;
use crate::relation::MAX_WORLDS;

/// Structural problems raised while building a frame or model from parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("{0} worlds declared; at most {MAX_WORLDS} are supported")]
    TooManyWorlds(usize),
    #[error("duplicate world name '{0}'")]
    DuplicateWorld(String),
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(ValidationReport),
    #[error("relation sized for {got} worlds, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// Errors raised by forcing and validity checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error(
        "refusing validity sweep over {world_count} worlds x {var_count} variables \
         (more than 2^{MAX_VALUATION_BITS} valuations)"
    )]
    TooManyValuations {
        world_count: usize,
        var_count: usize,
    },
}

/// One violated frame law, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameViolation {
    /// `x R y` and `y R z` but not `x R z`.
    NotTransitive { x: String, y: String, z: String },
    /// `x R x`; together with transitivity this stands in for failure of
    /// converse well-foundedness on a finite carrier.
    Reflexive { x: String },
    /// `(y, z) ∈ S_x` although `x R y` fails.
    SDomain { x: String, y: String, z: String },
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameViolation::NotTransitive { x, y, z } => {
                write!(out, "R not transitive: {x} R {y} and {y} R {z} but not {x} R {z}")
            }
            FrameViolation::Reflexive { x } => {
                write!(out, "R not irreflexive: {x} R {x}")
            }
            FrameViolation::SDomain { x, y, z } => {
                write!(out, "S_{x} contains ({y}, {z}) but {y} is not in R[{x}]")
            }
        }
    }
}

/// Outcome of a frame-law check; empty means every law holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<FrameViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return out.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                out.write_str("; ")?;
            }
            write!(out, "{v}")?;
        }
        Ok(())
    }
}
