//! Formulas of the interpretability-logic language.
//!
//! The grammar is `⊥ | ⊤ | p | A → A | A ∨ A | A ∧ A | □A | A ▷ A`.
//! Negation and diamond are abbreviations rather than constructors: `¬A`
//! stands for `A → ⊥` and `◇A` for `¬□¬A`. The parser desugars them on
//! the way in and the printer re-sugars them on the way out, so forcing
//! evaluators only ever deal with the eight primitive cases.

use std::collections::BTreeSet;
use std::fmt;

mod axiom;
mod json;
mod parser;

pub use axiom::{ArityError, Axiom, ALL_AXIOMS};
pub use parser::{parse, ParseError};

/// A formula of the modal language with the binary modality `▷`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Top,
    Var(String),
    Imp(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Rhd(Box<Formula>, Box<Formula>),
}

use Formula::{And, Bot, Imp, Or, Rhd, Top, Var};

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Imp(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Or(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        And(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn boxed(a: Formula) -> Self {
        Formula::Box(std::boxed::Box::new(a))
    }

    pub fn rhd(a: Formula, b: Formula) -> Self {
        Rhd(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    /// `¬A`, i.e. `A → ⊥`.
    // Takes the formula by value like the other constructors; the name
    // mirrors the connective, not std::ops::Not.
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Self::imp(a, Bot)
    }

    /// `◇A`, i.e. `¬□¬A`.
    pub fn diamond(a: Formula) -> Self {
        Self::not(Self::boxed(Self::not(a)))
    }

    /// `A ↔ B` as the conjunction of the two implications.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Self::and(Self::imp(a.clone(), b.clone()), Self::imp(b, a))
    }

    /// The set of subformulas of `self`, including `self` itself.
    ///
    /// Abbreviations contribute the subformulas of their expansion, since
    /// they are nothing but their expansion.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        out.insert(self.clone());
        match self {
            Bot | Top | Var(_) => {}
            Imp(a, b) | Or(a, b) | And(a, b) | Rhd(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::Box(a) => a.collect_subformulas(out),
        }
    }

    /// The variables occurring in `self`, in sorted order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Bot | Top => {}
            Var(p) => {
                out.insert(p.clone());
            }
            Imp(a, b) | Or(a, b) | And(a, b) | Rhd(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
            Formula::Box(a) => a.collect_variables(out),
        }
    }

    /// Maximum nesting depth of `□`/`▷` (abbreviated `◇` counts via its
    /// expansion's single `□`).
    pub fn modal_depth(&self) -> usize {
        match self {
            Bot | Top | Var(_) => 0,
            Imp(a, b) | Or(a, b) | And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Box(a) => 1 + a.modal_depth(),
            Rhd(a, b) => 1 + a.modal_depth().max(b.modal_depth()),
        }
    }
}

// Binding strength used by the printer, mirroring the parser's precedence
// order: prefix operators bind strongest, then ∧, ∨, ▷, and → weakest.
const PREC_IMP: u8 = 1;
const PREC_RHD: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_PREFIX: u8 = 5;
const PREC_ATOM: u8 = 6;

/// Splits `f` into its sugared reading, if any: `Imp(Box(Imp(a, Bot)), Bot)`
/// reads as `◇a` and any other `Imp(a, Bot)` reads as `¬a`.
fn sugar(f: &Formula) -> Option<(&'static str, &Formula)> {
    if let Imp(lhs, rhs) = f {
        if **rhs == Bot {
            if let Formula::Box(inner) = &**lhs {
                if let Imp(a, b) = &**inner {
                    if **b == Bot {
                        return Some(("<>", a));
                    }
                }
            }
            return Some(("~", lhs));
        }
    }
    None
}

fn fmt_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some((op, arg)) = sugar(f) {
        if PREC_PREFIX < min {
            out.write_str("(")?;
            out.write_str(op)?;
            fmt_prec(arg, PREC_PREFIX, out)?;
            return out.write_str(")");
        }
        out.write_str(op)?;
        return fmt_prec(arg, PREC_PREFIX, out);
    }
    let prec = match f {
        Bot | Top | Var(_) => PREC_ATOM,
        Imp(..) => PREC_IMP,
        Rhd(..) => PREC_RHD,
        Or(..) => PREC_OR,
        And(..) => PREC_AND,
        Formula::Box(_) => PREC_PREFIX,
    };
    let parens = prec < min;
    if parens {
        out.write_str("(")?;
    }
    match f {
        Bot => out.write_str("F")?,
        Top => out.write_str("T")?,
        Var(p) => out.write_str(p)?,
        Imp(a, b) => {
            fmt_prec(a, PREC_IMP + 1, out)?;
            out.write_str(" -> ")?;
            fmt_prec(b, PREC_IMP, out)?;
        }
        Rhd(a, b) => {
            // ▷ is non-associative, so both sides need strictly tighter
            // material or explicit parentheses.
            fmt_prec(a, PREC_RHD + 1, out)?;
            out.write_str(" |> ")?;
            fmt_prec(b, PREC_RHD + 1, out)?;
        }
        Or(a, b) => {
            fmt_prec(a, PREC_OR, out)?;
            out.write_str(" | ")?;
            fmt_prec(b, PREC_OR + 1, out)?;
        }
        And(a, b) => {
            fmt_prec(a, PREC_AND, out)?;
            out.write_str(" & ")?;
            fmt_prec(b, PREC_AND + 1, out)?;
        }
        Formula::Box(a) => {
            out.write_str("[]")?;
            fmt_prec(a, PREC_PREFIX, out)?;
        }
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    /// Minimal-parentheses rendering; `parse(f.to_string())` returns `f`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, out)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, out)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }

    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn diamond_is_the_not_box_not_pattern() {
        let expected = Formula::imp(
            Formula::boxed(Formula::imp(p(), Bot)),
            Bot,
        );
        assert_eq!(Formula::diamond(p()), expected);
    }

    #[test]
    fn subformulas_of_a_variable() {
        assert_eq!(p().subformulas(), BTreeSet::from([p()]));
    }

    #[test]
    fn subformulas_of_rhd() {
        let f = Formula::rhd(p(), q());
        assert_eq!(f.subformulas(), BTreeSet::from([p(), q(), f.clone()]));
    }

    #[test]
    fn subformulas_of_box_imp_bot() {
        // Structural recursion: every node of ~[]p appears once.
        let f = Formula::imp(Formula::boxed(p()), Bot);
        assert_eq!(
            f.subformulas(),
            BTreeSet::from([p(), Formula::boxed(p()), Bot, f.clone()])
        );
    }

    #[test]
    fn subformula_count_bounded_by_node_count() {
        fn node_count(f: &Formula) -> usize {
            match f {
                Bot | Top | Var(_) => 1,
                Imp(a, b) | Or(a, b) | And(a, b) | Rhd(a, b) => {
                    1 + node_count(a) + node_count(b)
                }
                Formula::Box(a) => 1 + node_count(a),
            }
        }
        let f = Formula::imp(Formula::diamond(p()), Formula::rhd(p(), p()));
        assert!(f.subformulas().len() <= node_count(&f));
    }

    #[test]
    fn printer_examples() {
        assert_eq!(Formula::rhd(p(), q()).to_string(), "p |> q");
        assert_eq!(
            Formula::imp(
                Formula::boxed(Formula::imp(p(), q())),
                Formula::rhd(p(), q())
            )
            .to_string(),
            "[](p -> q) -> p |> q"
        );
        assert_eq!(Formula::diamond(p()).to_string(), "<>p");
        assert_eq!(Formula::not(Formula::imp(p(), q())).to_string(), "~(p -> q)");
    }

    #[test]
    fn modal_depth_counts_nested_modalities() {
        assert_eq!(p().modal_depth(), 0);
        assert_eq!(Formula::diamond(p()).modal_depth(), 1);
        assert_eq!(
            Formula::rhd(Formula::boxed(Formula::boxed(p())), q()).modal_depth(),
            3
        );
    }
}
