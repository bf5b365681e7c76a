//! Chains of base worlds: the worlds of the transformed models built by
//! [`construct_sv`](crate::constructions::construct_sv) and
//! [`construct_sv2`](crate::constructions::construct_sv2).
//!
//! A chain `⟨x_1, .., x_n⟩` is a nonempty sequence with `x_j R x_{j+1}`
//! for all `j < n`. Since `R` is transitive and irreflexive, a chain never
//! repeats a world, so its length is at most `|W|`. The helpers below
//! also operate on the empty sequence `ε`, which appears as a value of
//! the prefix-meet but never as a world.

use crate::constructions::ConstructionError;
use crate::veltman::VeltmanFrame;

/// A nonempty `R`-chain of base-world indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainWorld {
    seq: Vec<usize>,
}

impl ChainWorld {
    /// Builds a chain, checking that consecutive elements are `R`-related
    /// in `frame`.
    pub fn new(seq: Vec<usize>, frame: &VeltmanFrame) -> Result<Self, ConstructionError> {
        if seq.is_empty() {
            return Err(ConstructionError::InvalidChain {
                reason: "a chain world must be nonempty".into(),
            });
        }
        if let Some(&x) = seq.iter().find(|&&x| x >= frame.world_count()) {
            return Err(ConstructionError::InvalidChain {
                reason: format!("world index {x} out of range"),
            });
        }
        for (j, pair) in seq.windows(2).enumerate() {
            if !frame.r().contains(pair[0], pair[1]) {
                return Err(ConstructionError::InvalidChain {
                    reason: format!(
                        "{} R {} fails at step {j}",
                        frame.world_name(pair[0]),
                        frame.world_name(pair[1])
                    ),
                });
            }
        }
        Ok(ChainWorld { seq })
    }

    pub(crate) fn from_seq_unchecked(seq: Vec<usize>) -> Self {
        debug_assert!(!seq.is_empty());
        ChainWorld { seq }
    }

    pub fn singleton(x: usize) -> Self {
        ChainWorld { seq: vec![x] }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// The last element `𝐱ᵉ`.
    pub fn last(&self) -> usize {
        *self.seq.last().expect("chains are nonempty")
    }

    /// Dash-joined world name, e.g. `a-b`.
    pub fn display_name(&self, names: &[String]) -> String {
        self.seq
            .iter()
            .map(|&x| names[x].as_str())
            .collect::<Vec<_>>()
            .join("-")
    }
}

impl std::fmt::Debug for ChainWorld {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "⟨")?;
        for (i, x) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{x}")?;
        }
        write!(out, "⟩")
    }
}

/// `𝐱 − 1`: the chain with its last element dropped (`ε` for singletons).
pub fn minus_one(seq: &[usize]) -> &[usize] {
    if seq.is_empty() {
        seq
    } else {
        &seq[..seq.len() - 1]
    }
}

/// `𝐱 ⊆ 𝐲`: initial segment, possibly equal.
pub fn is_prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && a == &b[..a.len()]
}

/// `𝐱 ⊂ 𝐲`: proper initial segment.
pub fn is_proper_prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a == &b[..a.len()]
}

/// `𝐲 ∩ 𝐳`: the longest common initial segment (possibly `ε`).
pub fn common_prefix<'a>(a: &'a [usize], b: &[usize]) -> &'a [usize] {
    let k = a
        .iter()
        .zip(b.iter())
        .take_while(|(x, y)| x == y)
        .count();
    &a[..k]
}

/// `Setm(𝐲, 𝐱)`: the set of elements of `y` that do not occur in `x`,
/// as a bitmask over base worlds.
pub fn setm(y: &[usize], x: &[usize]) -> u64 {
    elements(y) & !elements(x)
}

fn elements(seq: &[usize]) -> u64 {
    seq.iter().fold(0u64, |acc, &i| acc | 1 << i)
}
