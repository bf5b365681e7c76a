//! Model transformations: from Veltman countermodels to finite simplified
//! ones, and from simplified IL⁻(J2plus, J5) countermodels to simplified
//! IL models.
//!
//! [`construct_sv`] and [`construct_sv2`] rebuild a Veltman model on the
//! set of its `R`-chains; they differ only in the transformed `S`
//! relation. [`construct_svil`] rebuilds on traces of mixed `R`/`S`-steps;
//! its world set is infinite whenever the step graph has a cycle, so it
//! returns a depth-bounded fragment together with an exact lazy forcing
//! handle. [`reduce_il`] closes the `S` of a simplified model under
//! identity, which preserves forcing of the subformulas of a target
//! formula whenever its strengthening is forced at the root.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::ModelError;
use crate::formula::Formula;
use crate::relation::{bits, Relation, MAX_WORLDS};
use crate::simplified::{LogicId, Semantics, SimplifiedFrame, SimplifiedModel};
use crate::veltman::{Condition, VeltmanFrame, VeltmanModel};

mod chain;
mod trace;

pub use chain::{common_prefix, is_prefix, is_proper_prefix, minus_one, setm, ChainWorld};
pub use trace::{extension_markers_grounded, StepMarker, TraceWorld};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{construction} does not handle {logic}")]
    UnsupportedLogic {
        construction: &'static str,
        logic: LogicId,
    },
    #[error("base frame fails the {condition} condition required for {logic}")]
    ConditionFailed {
        logic: LogicId,
        condition: Condition,
    },
    #[error("depth bound must be at least 1")]
    BadDepthBound,
    #[error("model has no root")]
    RootMissing,
    #[error("model is not a simplified {0}-frame")]
    NotInClass(LogicId),
    #[error("the strengthening antecedent is not forced at the root")]
    AntecedentNotForced,
    #[error("the target formula is already forced at the root")]
    TargetForcedAtRoot,
    #[error("invalid chain world: {reason}")]
    InvalidChain { reason: String },
    #[error("invalid trace world: {reason}")]
    InvalidTrace { reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A simplified model over chain worlds, with the chain table kept
/// alongside so callers can relate transformed worlds to base worlds.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    model: SimplifiedModel,
    chains: Vec<ChainWorld>,
}

impl ChainModel {
    pub fn model(&self) -> &SimplifiedModel {
        &self.model
    }

    pub fn into_model(self) -> SimplifiedModel {
        self.model
    }

    /// Chain of the transformed world with index `i`.
    pub fn chains(&self) -> &[ChainWorld] {
        &self.chains
    }

    pub fn chain_index(&self, chain: &ChainWorld) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }
}

/// All `R`-chains of the base frame, shortest first, lexicographic within
/// a length. Transitivity and irreflexivity of `R` bound chain length by
/// the number of worlds.
fn enumerate_chains(frame: &VeltmanFrame) -> Vec<ChainWorld> {
    let n = frame.world_count();
    let mut all: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    let mut level = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for seq in &level {
            let last = *seq.last().expect("chains are nonempty");
            for y in bits(frame.r().row(last)) {
                let mut ext = seq.clone();
                ext.push(y);
                debug_assert!(ext.len() <= n);
                next.push(ext);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter().map(ChainWorld::from_seq_unchecked).collect()
}

fn require_conditions(
    frame: &VeltmanFrame,
    logic: LogicId,
    conditions: &[Condition],
) -> Result<(), ConstructionError> {
    for &condition in conditions {
        if !frame.satisfies_condition(condition) {
            return Err(ConstructionError::ConditionFailed { logic, condition });
        }
    }
    Ok(())
}

fn build_chain_model(
    base: &VeltmanModel,
    s_link: impl Fn(&VeltmanFrame, &ChainWorld, &ChainWorld) -> bool,
) -> Result<ChainModel, ConstructionError> {
    let frame = base.frame();
    let chains = enumerate_chains(frame);
    let count = chains.len();
    if count > MAX_WORLDS {
        return Err(ModelError::TooManyWorlds(count).into());
    }
    let names: Vec<String> = chains
        .iter()
        .map(|c| c.display_name(frame.world_names()))
        .collect();
    let mut r = Relation::empty(count);
    let mut s = Relation::empty(count);
    for (i, y) in chains.iter().enumerate() {
        for (j, z) in chains.iter().enumerate() {
            if is_proper_prefix(y.seq(), z.seq()) {
                r.insert(i, j);
            }
            if s_link(frame, y, z) {
                s.insert(i, j);
            }
        }
    }
    let mut valuation: BTreeMap<String, u64> = BTreeMap::new();
    for (var, mask) in base.valuation() {
        let mut lifted = 0u64;
        for (i, chain) in chains.iter().enumerate() {
            if mask >> chain.last() & 1 == 1 {
                lifted |= 1 << i;
            }
        }
        valuation.insert(var.clone(), lifted);
    }
    let sframe = SimplifiedFrame::from_parts(names, r, s).map_err(ConstructionError::Model)?;
    let model =
        SimplifiedModel::from_masks(sframe, valuation).map_err(ConstructionError::Model)?;
    Ok(ChainModel { model, chains })
}

/// The transformed `S` used for the four logics without J2plus:
/// `𝐲 S' 𝐳` iff, with `𝐱 := (𝐲−1) ∩ (𝐳−1)`, either `𝐱 = ε` and `𝐲 ⊆ 𝐳`,
/// or `𝐱 ≠ ε` and some `v ∈ Setm(𝐲−1, 𝐱−1)` has `𝐲ᵉ S_v 𝐳ᵉ`.
fn sv_link(frame: &VeltmanFrame, y: &ChainWorld, z: &ChainWorld) -> bool {
    let ym1 = minus_one(y.seq());
    let zm1 = minus_one(z.seq());
    let x = common_prefix(ym1, zm1);
    if x.is_empty() {
        return is_prefix(y.seq(), z.seq());
    }
    let candidates = setm(ym1, minus_one(x));
    debug_assert!(candidates >> x[x.len() - 1] & 1 == 1);
    bits(candidates).any(|v| frame.s(v).contains(y.last(), z.last()))
}

/// The transformed `S` used for IL⁻(J2plus) and CL: the single `S_v` step
/// becomes an `S`-path through `⋃{S_v : v ∈ Setm(𝐲−1, 𝐱−1)}`, and the
/// `ε` case tightens from `𝐲 ⊆ 𝐳` to `𝐲 = 𝐳`.
///
/// Path existence is computed as reachability in at least one step; this
/// is equivalent to the tuple form `a_1 S_{v_1} a_2 S_{v_2} .. a_{l+1}`
/// because consecutive steps may pick their `v` independently.
fn sv2_link(frame: &VeltmanFrame, y: &ChainWorld, z: &ChainWorld) -> bool {
    let ym1 = minus_one(y.seq());
    let zm1 = minus_one(z.seq());
    let x = common_prefix(ym1, zm1);
    if x.is_empty() {
        return y == z;
    }
    let y_new = setm(ym1, minus_one(x));
    let z_new = setm(zm1, minus_one(x));
    if z_new & !y_new != 0 {
        return false;
    }
    debug_assert!(y_new >> x[x.len() - 1] & 1 == 1);
    let mut union = Relation::empty(frame.world_count());
    for v in bits(y_new) {
        union = union.union(frame.s(v));
    }
    union.reachable_from(y.last()) >> z.last() & 1 == 1
}

/// Rebuilds `base` on its `R`-chains, for the logics IL⁻(J4plus),
/// IL⁻(J1, J4plus), IL⁻(J4plus, J5), and IL⁻(J1, J4plus, J5).
///
/// The base frame must satisfy the frame condition of each axiom of
/// `logic`. The output forces exactly the formulas the base forces at the
/// chain's last element, world by world, and lands in the simplified
/// `logic`-frame class.
pub fn construct_sv(base: &VeltmanModel, logic: LogicId) -> Result<ChainModel, ConstructionError> {
    use LogicId::*;
    if !matches!(
        logic,
        IlMinusJ4Plus | IlMinusJ1J4Plus | IlMinusJ4PlusJ5 | IlMinusJ1J4PlusJ5
    ) {
        return Err(ConstructionError::UnsupportedLogic {
            construction: "construct_sv",
            logic,
        });
    }
    require_conditions(base.frame(), logic, &logic.veltman_conditions())?;
    build_chain_model(base, sv_link)
}

/// Rebuilds `base` on its `R`-chains for IL⁻(J2plus) or CL, producing a
/// transitive `S'` (reflexive too under CL).
///
/// Note the deliberate asymmetry against [`construct_sv`]: the `ε` case
/// of the `S'` definition here demands `𝐲 = 𝐳` where the other
/// construction demands `𝐲 ⊆ 𝐳`.
pub fn construct_sv2(base: &VeltmanModel, logic: LogicId) -> Result<ChainModel, ConstructionError> {
    if !matches!(logic, LogicId::IlMinusJ2Plus | LogicId::Cl) {
        return Err(ConstructionError::UnsupportedLogic {
            construction: "construct_sv2",
            logic,
        });
    }
    require_conditions(base.frame(), logic, &logic.veltman_conditions())?;
    build_chain_model(base, sv2_link)
}

/// Output of [`construct_svil`]: the fragment of the trace model up to the
/// depth bound, plus the base model for exact lazy forcing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvilModel {
    base: VeltmanModel,
    fragment: SimplifiedModel,
    traces: Vec<TraceWorld>,
    depth_bound: usize,
}

impl SvilModel {
    pub fn base(&self) -> &VeltmanModel {
        &self.base
    }

    /// The materialized restriction to traces of length at most the depth
    /// bound, for inspection and frame-property checks.
    pub fn fragment(&self) -> &SimplifiedModel {
        &self.fragment
    }

    /// Trace of the fragment world with index `i`.
    pub fn traces(&self) -> &[TraceWorld] {
        &self.traces
    }

    pub fn trace_index(&self, trace: &TraceWorld) -> Option<usize> {
        self.traces.iter().position(|t| t == trace)
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    /// Exact forcing at any trace world, bounded or not: a trace forces a
    /// formula iff its last element forces it in the base model, so the
    /// query delegates there. Pure in `(base, trace, formula)`.
    pub fn forces(&self, trace: &TraceWorld, f: &Formula) -> Result<bool, ConstructionError> {
        // Revalidate: the trace may come from anywhere.
        let checked = TraceWorld::new(
            trace.gamma().to_vec(),
            trace.delta().to_vec(),
            self.base.frame(),
        )?;
        Ok(self.base.forces_at(checked.last(), f))
    }
}

/// Rebuilds `base` on traces of `R`- and `S_v`-steps, bounded by
/// `depth_bound`, for IL⁻(J2plus, J5).
///
/// The base frame must satisfy the J2plus and J5 conditions. The trace
/// space is infinite whenever the combined step graph has a cycle, which
/// is why only a bounded fragment is materialized; [`SvilModel::forces`]
/// is exact regardless of the bound.
pub fn construct_svil(
    base: &VeltmanModel,
    depth_bound: usize,
) -> Result<SvilModel, ConstructionError> {
    if depth_bound < 1 {
        return Err(ConstructionError::BadDepthBound);
    }
    let logic = LogicId::IlMinusJ2PlusJ5;
    require_conditions(base.frame(), logic, &logic.veltman_conditions())?;

    let frame = base.frame();
    let n = frame.world_count();
    let mut traces: Vec<TraceWorld> = (0..n).map(TraceWorld::singleton).collect();
    let mut level = traces.clone();
    for _ in 2..=depth_bound {
        let mut next = Vec::new();
        for t in &level {
            let u = t.last();
            let extend = |w: usize, marker: StepMarker| {
                let mut gamma = t.gamma().to_vec();
                let mut delta = t.delta().to_vec();
                gamma.push(w);
                delta.push(marker);
                TraceWorld::from_parts_unchecked(gamma, delta)
            };
            for w in bits(frame.r().row(u)) {
                next.push(extend(w, None));
            }
            for v in 0..n {
                for w in bits(frame.s(v).row(u)) {
                    next.push(extend(w, Some(v)));
                }
            }
        }
        traces.extend(next.iter().cloned());
        if next.is_empty() {
            break;
        }
        level = next;
    }
    if traces.len() > MAX_WORLDS {
        return Err(ModelError::TooManyWorlds(traces.len()).into());
    }

    let names: Vec<String> = traces
        .iter()
        .map(|t| t.display_name(frame.world_names()))
        .collect();
    let count = traces.len();
    let mut r = Relation::empty(count);
    let mut s = Relation::empty(count);
    for (i, y) in traces.iter().enumerate() {
        for (j, z) in traces.iter().enumerate() {
            if y.is_proper_prefix_of(z) && extension_markers_grounded(y, z) {
                r.insert(i, j);
            }
            if y.len() < z.len() && y.stable_prefix().is_prefix_of(&z.stable_prefix()) {
                s.insert(i, j);
            }
        }
    }
    let mut valuation: BTreeMap<String, u64> = BTreeMap::new();
    for (var, mask) in base.valuation() {
        let mut lifted = 0u64;
        for (i, t) in traces.iter().enumerate() {
            if mask >> t.last() & 1 == 1 {
                lifted |= 1 << i;
            }
        }
        valuation.insert(var.clone(), lifted);
    }
    let sframe = SimplifiedFrame::from_parts(names, r, s).map_err(ConstructionError::Model)?;
    let fragment =
        SimplifiedModel::from_masks(sframe, valuation).map_err(ConstructionError::Model)?;
    Ok(SvilModel {
        base: base.clone(),
        fragment,
        traces,
        depth_bound,
    })
}

/// The strengthening antecedent `⋀{(C ▷ C) ∧ □(C ▷ C) : C ∈ Sub(a)}`,
/// with conjuncts in a canonical order (sorted by printed form) and
/// folded left-associatively.
pub fn strengthen_antecedent(a: &Formula) -> Formula {
    let mut subs: Vec<Formula> = a.subformulas().into_iter().collect();
    subs.sort_by_key(|c| c.to_string());
    let mut conjuncts = subs.into_iter().map(|c| {
        let loops = Formula::rhd(c.clone(), c);
        Formula::and(loops.clone(), Formula::boxed(loops))
    });
    let first = conjuncts.next().expect("Sub(a) contains a itself");
    conjuncts.fold(first, Formula::and)
}

/// The strengthening of `a`: `⋀{(C ▷ C) ∧ □(C ▷ C) : C ∈ Sub(a)} → a`.
pub fn strengthen(a: &Formula) -> Formula {
    Formula::imp(strengthen_antecedent(a), a.clone())
}

/// Turns a simplified IL⁻(J2plus, J5) model refuting `strengthen(a)` at
/// its root into a simplified IL model by closing `S` under identity.
///
/// Preconditions, all checked: the frame is in the IL⁻(J2plus, J5) class,
/// the model has a root, the root forces the strengthening antecedent,
/// and the root does not force `a`. Forcing of every subformula of `a` is
/// unchanged at every world, so the root still refutes `a`.
pub fn reduce_il(m: &SimplifiedModel, a: &Formula) -> Result<SimplifiedModel, ConstructionError> {
    if !m.frame().in_class(LogicId::IlMinusJ2PlusJ5) {
        return Err(ConstructionError::NotInClass(LogicId::IlMinusJ2PlusJ5));
    }
    let root = m.root().ok_or(ConstructionError::RootMissing)?;
    if !m.forces_at(root, &strengthen_antecedent(a), Semantics::Standard) {
        return Err(ConstructionError::AntecedentNotForced);
    }
    if m.forces_at(root, a, Semantics::Standard) {
        return Err(ConstructionError::TargetForcedAtRoot);
    }
    let frame = SimplifiedFrame::from_parts(
        m.frame().world_names().to_vec(),
        m.frame().r().clone(),
        m.frame().s().with_identity(),
    )
    .map_err(ConstructionError::Model)?;
    SimplifiedModel::from_masks(frame, m.valuation().clone()).map_err(ConstructionError::Model)
}
