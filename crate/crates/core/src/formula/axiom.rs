//! Axiom schemes of IL⁻ and its extensions.

use std::fmt;

use thiserror::Error;

use super::Formula;

/// The instantiable axiom schemes. `G0` (all tautologies) is not a single
/// scheme and therefore has no entry here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `□(A → B) → (□A → □B)`
    G1,
    /// `□(□A → A) → □A`
    G2,
    /// `□(A → B) → A ▷ B`
    J1,
    /// `(A ▷ B) ∧ (B ▷ C) → A ▷ C`
    J2,
    /// `A ▷ (B ∨ C) ∧ B ▷ C → A ▷ C`
    J2Plus,
    /// `(A ▷ C) ∧ (B ▷ C) → (A ∨ B) ▷ C`
    J3,
    /// `A ▷ B → (◇A → ◇B)`
    J4,
    /// `□(A → B) → (C ▷ A → C ▷ B)`
    J4Plus,
    /// `◇A ▷ A`
    J5,
    /// `□¬A ↔ A ▷ ⊥`
    J6,
    /// `A ▷ B → □(A ▷ B)`
    P,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("axiom {axiom} takes {expected} formula(s), got {got}")]
pub struct ArityError {
    pub axiom: Axiom,
    pub expected: usize,
    pub got: usize,
}

pub const ALL_AXIOMS: [Axiom; 11] = [
    Axiom::G1,
    Axiom::G2,
    Axiom::J1,
    Axiom::J2,
    Axiom::J2Plus,
    Axiom::J3,
    Axiom::J4,
    Axiom::J4Plus,
    Axiom::J5,
    Axiom::J6,
    Axiom::P,
];

impl Axiom {
    /// Number of metavariables of the scheme.
    pub fn arity(self) -> usize {
        match self {
            Axiom::G2 | Axiom::J5 | Axiom::J6 => 1,
            Axiom::G1 | Axiom::J1 | Axiom::J4 | Axiom::P => 2,
            Axiom::J2 | Axiom::J2Plus | Axiom::J3 | Axiom::J4Plus => 3,
        }
    }

    /// The scheme with metavariables `A, B, C` replaced by `args` in order.
    pub fn instance(self, args: &[Formula]) -> Result<Formula, ArityError> {
        if args.len() != self.arity() {
            return Err(ArityError {
                axiom: self,
                expected: self.arity(),
                got: args.len(),
            });
        }
        let a = || args[0].clone();
        let b = || args[1].clone();
        let c = || args[2].clone();
        Ok(match self {
            Axiom::G1 => Formula::imp(
                Formula::boxed(Formula::imp(a(), b())),
                Formula::imp(Formula::boxed(a()), Formula::boxed(b())),
            ),
            Axiom::G2 => Formula::imp(
                Formula::boxed(Formula::imp(Formula::boxed(a()), a())),
                Formula::boxed(a()),
            ),
            Axiom::J1 => Formula::imp(
                Formula::boxed(Formula::imp(a(), b())),
                Formula::rhd(a(), b()),
            ),
            Axiom::J2 => Formula::imp(
                Formula::and(Formula::rhd(a(), b()), Formula::rhd(b(), c())),
                Formula::rhd(a(), c()),
            ),
            Axiom::J2Plus => Formula::imp(
                Formula::and(
                    Formula::rhd(a(), Formula::or(b(), c())),
                    Formula::rhd(b(), c()),
                ),
                Formula::rhd(a(), c()),
            ),
            Axiom::J3 => Formula::imp(
                Formula::and(Formula::rhd(a(), c()), Formula::rhd(b(), c())),
                Formula::rhd(Formula::or(a(), b()), c()),
            ),
            Axiom::J4 => Formula::imp(
                Formula::rhd(a(), b()),
                Formula::imp(Formula::diamond(a()), Formula::diamond(b())),
            ),
            Axiom::J4Plus => Formula::imp(
                Formula::boxed(Formula::imp(a(), b())),
                Formula::imp(Formula::rhd(c(), a()), Formula::rhd(c(), b())),
            ),
            Axiom::J5 => Formula::rhd(Formula::diamond(a()), a()),
            Axiom::J6 => Formula::iff(
                Formula::boxed(Formula::not(a())),
                Formula::rhd(a(), Formula::Bot),
            ),
            Axiom::P => Formula::imp(
                Formula::rhd(a(), b()),
                Formula::boxed(Formula::rhd(a(), b())),
            ),
        })
    }

    /// The scheme instantiated with distinct fresh variables `p, q, r`.
    ///
    /// Because frame validity quantifies over all valuations, scheme
    /// validity in a frame coincides with validity of this one instance.
    pub fn fresh_instance(self) -> Formula {
        let vars = [Formula::var("p"), Formula::var("q"), Formula::var("r")];
        self.instance(&vars[..self.arity()]).expect("arity matches")
    }
}

impl serde::Serialize for Axiom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::G1 => "G1",
            Axiom::G2 => "G2",
            Axiom::J1 => "J1",
            Axiom::J2 => "J2",
            Axiom::J2Plus => "J2plus",
            Axiom::J3 => "J3",
            Axiom::J4 => "J4",
            Axiom::J4Plus => "J4plus",
            Axiom::J5 => "J5",
            Axiom::J6 => "J6",
            Axiom::P => "P",
        };
        out.write_str(name)
    }
}

impl std::str::FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "G1" => Axiom::G1,
            "G2" => Axiom::G2,
            "J1" => Axiom::J1,
            "J2" => Axiom::J2,
            "J2plus" | "J2+" => Axiom::J2Plus,
            "J3" => Axiom::J3,
            "J4" => Axiom::J4,
            "J4plus" | "J4+" => Axiom::J4Plus,
            "J5" => Axiom::J5,
            "J6" => Axiom::J6,
            "P" => Axiom::P,
            other => return Err(format!("unknown axiom '{other}'")),
        })
    }
}
