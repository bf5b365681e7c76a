//! Trace worlds: the worlds of the model built by
//! [`construct_svil`](crate::constructions::construct_svil).
//!
//! A trace is a pair `(Γ, Δ)` with `Γ = ⟨x_1, .., x_n⟩` a nonempty
//! sequence of base worlds and `Δ = ⟨v_1, .., v_{n-1}⟩` a sequence of
//! step markers: marker `0` records an `R`-step `x_i R x_{i+1}`, and a
//! world marker `v` records an `S_v`-step `x_i S_v x_{i+1}`. Here the
//! `0` marker is `None`; the type keeps it distinct from every world.
//! Sequences are 1-based in the prose above and 0-based in the code.

use crate::constructions::ConstructionError;
use crate::veltman::VeltmanFrame;

/// One step marker of `Δ`: `None` stands for the reserved `0` marker of
/// an `R`-step, `Some(v)` marks an `S_v`-step.
pub type StepMarker = Option<usize>;

/// A trace world `(Γ, Δ)` with `|Δ| + 1 = |Γ|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWorld {
    gamma: Vec<usize>,
    delta: Vec<StepMarker>,
}

impl TraceWorld {
    /// Builds a trace, checking the step conditions against `frame`.
    pub fn new(
        gamma: Vec<usize>,
        delta: Vec<StepMarker>,
        frame: &VeltmanFrame,
    ) -> Result<Self, ConstructionError> {
        if gamma.is_empty() {
            return Err(ConstructionError::InvalidTrace {
                reason: "Γ must be nonempty".into(),
            });
        }
        if delta.len() + 1 != gamma.len() {
            return Err(ConstructionError::InvalidTrace {
                reason: format!("|Δ| + 1 = {} but |Γ| = {}", delta.len() + 1, gamma.len()),
            });
        }
        let n = frame.world_count();
        let worlds = gamma.iter().chain(delta.iter().flatten());
        if let Some(&x) = worlds.clone().find(|&&x| x >= n) {
            return Err(ConstructionError::InvalidTrace {
                reason: format!("world index {x} out of range"),
            });
        }
        for (i, marker) in delta.iter().enumerate() {
            let ok = match marker {
                None => frame.r().contains(gamma[i], gamma[i + 1]),
                Some(v) => frame.s(*v).contains(gamma[i], gamma[i + 1]),
            };
            if !ok {
                return Err(ConstructionError::InvalidTrace {
                    reason: format!("step {i} is not licensed by its marker"),
                });
            }
        }
        Ok(TraceWorld { gamma, delta })
    }

    pub(crate) fn from_parts_unchecked(gamma: Vec<usize>, delta: Vec<StepMarker>) -> Self {
        debug_assert!(!gamma.is_empty() && delta.len() + 1 == gamma.len());
        TraceWorld { gamma, delta }
    }

    pub fn singleton(x: usize) -> Self {
        TraceWorld {
            gamma: vec![x],
            delta: Vec::new(),
        }
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn delta(&self) -> &[StepMarker] {
        &self.delta
    }

    /// `|𝐱|`, the length of `Γ`.
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        false // Γ is nonempty by construction
    }

    /// The last element `𝐱ᵉ`.
    pub fn last(&self) -> usize {
        *self.gamma.last().expect("Γ is nonempty")
    }

    /// `𝐱 ⊆ 𝐲` on both components.
    pub fn is_prefix_of(&self, other: &TraceWorld) -> bool {
        let n = self.gamma.len();
        n <= other.gamma.len()
            && self.gamma == other.gamma[..n]
            && self.delta == other.delta[..n - 1]
    }

    /// `𝐱 ⊂ 𝐲` on both components.
    pub fn is_proper_prefix_of(&self, other: &TraceWorld) -> bool {
        self.gamma.len() < other.gamma.len() && self.is_prefix_of(other)
    }

    /// The prefix operator `R(𝐱)`: strips the maximal trailing run of
    /// `S`-steps, keeping everything up to and including the target of the
    /// last `R`-step (the whole first element if `Δ` has no `R`-step).
    pub fn stable_prefix(&self) -> TraceWorld {
        let keep = match self.delta.iter().rposition(|m| m.is_none()) {
            Some(j) => j + 2,
            None => 1,
        };
        TraceWorld {
            gamma: self.gamma[..keep].to_vec(),
            delta: self.delta[..keep.saturating_sub(1)].to_vec(),
        }
    }

    /// Trace id of the form `a-b-b@0,w`: `Γ` dash-joined, then `@`, then
    /// the markers comma-joined with `0` for `R`-steps.
    pub fn display_name(&self, names: &[String]) -> String {
        let gamma = self
            .gamma
            .iter()
            .map(|&x| names[x].as_str())
            .collect::<Vec<_>>()
            .join("-");
        let delta = self
            .delta
            .iter()
            .map(|m| match m {
                None => "0".to_string(),
                Some(v) => names[*v].clone(),
            })
            .collect::<Vec<_>>()
            .join(",");
        format!("{gamma}@{delta}")
    }
}

impl std::fmt::Debug for TraceWorld {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "({:?}, [", self.gamma)?;
        for (i, m) in self.delta.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            match m {
                None => write!(out, "0")?,
                Some(v) => write!(out, "{v}")?,
            }
        }
        write!(out, "])")
    }
}

/// The extension condition of the transformed `R'`: given `𝐱 ⊂ 𝐲`, every
/// `S`-marker in the new segment must name a world that already appeared
/// in the new segment strictly before the marked step.
pub fn extension_markers_grounded(x: &TraceWorld, y: &TraceWorld) -> bool {
    let n = x.gamma.len();
    (n - 1..y.delta.len()).all(|j| match y.delta[j] {
        None => true,
        Some(v) => (n - 1..j).any(|t| y.gamma[t] == v),
    })
}
