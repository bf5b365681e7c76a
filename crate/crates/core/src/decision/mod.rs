//! Frame enumeration, bounded countermodel search, and semantic checks of
//! derivability facts.
//!
//! Enumeration is deterministic and duplicate-free; no isomorphism
//! reduction is attempted (correctness over speed at this scale — it
//! would be the first optimization if one were needed). A found
//! countermodel soundly certifies non-validity and hence unprovability in
//! the logic; an exhausted bound certifies nothing, since no effective
//! size bound accompanies the finite model property here.

use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::error::EvalError;
use crate::eval::{Compiled, SimplifiedSemantics, VeltmanSemantics, MAX_VALUATION_BITS};
use crate::formula::Formula;
use crate::relation::{bits, full_mask, Relation};
use crate::simplified::{LogicId, SimplifiedFrame, SimplifiedModel};
use crate::veltman::{Condition, VeltmanFrame, VeltmanModel};

mod facts;
mod sample;

pub use facts::{check_derivability_facts, FactEntry, FactsReport, SideReport};
pub use sample::{
    sample_formula, sample_simplified_frame, sample_simplified_model, sample_veltman_model,
};

/// Largest carrier enumerated exhaustively on the Veltman side; the
/// per-world `S_x` space explodes beyond this.
pub const MAX_VELTMAN_ENUM: usize = 4;

/// Largest carrier enumerated on the simplified side.
pub const MAX_SIMPLIFIED_ENUM: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("{kind} enumeration supports sizes 1..={max}, got {requested}")]
    Bound {
        kind: &'static str,
        requested: usize,
        max: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("no finite-model construction covers {0}")]
    NoConstruction(LogicId),
}

fn bound_check(kind: &'static str, n: usize, max: usize) -> Result<(), DecisionError> {
    if n == 0 || n > max {
        return Err(DecisionError::Bound {
            kind,
            requested: n,
            max,
        });
    }
    Ok(())
}

/// All transitive irreflexive relations (strict orders) on `n` points, in
/// a fixed order. Cached: the n = 5 case filters a million candidates.
pub(crate) fn strict_orders(n: usize) -> Arc<Vec<Relation>> {
    type Cache = Mutex<Vec<Option<Arc<Vec<Relation>>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; MAX_SIMPLIFIED_ENUM + 1]));
    let mut cache = cache.lock().expect("strict-order cache poisoned");
    if let Some(found) = &cache[n] {
        return found.clone();
    }
    let mut positions = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                positions.push((x, y));
            }
        }
    }
    let mut orders = Vec::new();
    for mask in 0u64..1 << positions.len() {
        let mut rel = Relation::empty(n);
        for (i, &(x, y)) in positions.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rel.insert(x, y);
            }
        }
        if rel.is_transitive() {
            orders.push(rel);
        }
    }
    let orders = Arc::new(orders);
    cache[n] = Some(orders.clone());
    orders
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("w{i}")).collect()
}

/// Streams every Veltman frame on the carrier `{w1, .., wn}` that passes
/// all the given frame conditions. Deterministic, duplicate-free.
pub fn enumerate_veltman_frames(
    n: usize,
    conditions: &[Condition],
) -> Result<impl Iterator<Item = VeltmanFrame>, DecisionError> {
    bound_check("Veltman frame", n, MAX_VELTMAN_ENUM)?;
    Ok(VeltmanFrameIter::new(n, conditions.to_vec()))
}

struct VeltmanFrameIter {
    names: Vec<String>,
    orders: Arc<Vec<Relation>>,
    conditions: Vec<Condition>,
    order_idx: usize,
    /// Legal `(x, y, z)` slots for the current order: `x R y`, any `z`.
    slots: Vec<(usize, usize, usize)>,
    counter: u64,
}

impl VeltmanFrameIter {
    fn new(n: usize, conditions: Vec<Condition>) -> Self {
        let orders = strict_orders(n);
        let mut iter = VeltmanFrameIter {
            names: default_names(n),
            orders,
            conditions,
            order_idx: 0,
            slots: Vec::new(),
            counter: 0,
        };
        iter.load_order();
        iter
    }

    fn load_order(&mut self) {
        self.slots.clear();
        self.counter = 0;
        if let Some(r) = self.orders.get(self.order_idx) {
            let n = r.size();
            for x in 0..n {
                for y in bits(r.row(x)) {
                    for z in 0..n {
                        self.slots.push((x, y, z));
                    }
                }
            }
        }
    }
}

impl Iterator for VeltmanFrameIter {
    type Item = VeltmanFrame;

    fn next(&mut self) -> Option<VeltmanFrame> {
        loop {
            if self.order_idx >= self.orders.len() {
                return None;
            }
            if self.counter >> self.slots.len() > 0 {
                self.order_idx += 1;
                self.load_order();
                continue;
            }
            let n = self.names.len();
            let r = self.orders[self.order_idx].clone();
            let mut s = vec![Relation::empty(n); n];
            for (i, &(x, y, z)) in self.slots.iter().enumerate() {
                if self.counter >> i & 1 == 1 {
                    s[x].insert(y, z);
                }
            }
            self.counter += 1;
            let frame = VeltmanFrame::from_parts(self.names.clone(), r, s)
                .expect("enumerated parts are well-formed");
            debug_assert!(frame.validate().is_ok());
            if self
                .conditions
                .iter()
                .all(|&c| frame.satisfies_condition(c))
            {
                return Some(frame);
            }
        }
    }
}

/// Streams every simplified frame on `{w1, .., wn}` in the simplified
/// `logic`-frame class. Deterministic, duplicate-free.
pub fn enumerate_simplified_frames(
    n: usize,
    logic: LogicId,
) -> Result<impl Iterator<Item = SimplifiedFrame>, DecisionError> {
    bound_check("simplified frame", n, MAX_SIMPLIFIED_ENUM)?;
    Ok(SimplifiedFrameIter::new(n, logic))
}

struct SimplifiedFrameIter {
    names: Vec<String>,
    orders: Arc<Vec<Relation>>,
    logic: LogicId,
    order_idx: usize,
    /// Free `(y, z)` slots: pairs not already forced into `S` by the class.
    slots: Vec<(usize, usize)>,
    forced: Relation,
    counter: u64,
}

impl SimplifiedFrameIter {
    fn new(n: usize, logic: LogicId) -> Self {
        let orders = strict_orders(n);
        let mut iter = SimplifiedFrameIter {
            names: default_names(n),
            orders,
            logic,
            order_idx: 0,
            slots: Vec::new(),
            forced: Relation::empty(n),
            counter: 0,
        };
        iter.load_order();
        iter
    }

    fn load_order(&mut self) {
        self.slots.clear();
        self.counter = 0;
        if let Some(r) = self.orders.get(self.order_idx) {
            let n = r.size();
            let mut forced = Relation::empty(n);
            if self.logic.requires_reflexive_s() {
                forced = forced.with_identity();
            }
            if self.logic.requires_r_subset_s() {
                forced = forced.union(r);
            }
            for y in 0..n {
                for z in 0..n {
                    if !forced.contains(y, z) {
                        self.slots.push((y, z));
                    }
                }
            }
            self.forced = forced;
        }
    }
}

impl Iterator for SimplifiedFrameIter {
    type Item = SimplifiedFrame;

    fn next(&mut self) -> Option<SimplifiedFrame> {
        loop {
            if self.order_idx >= self.orders.len() {
                return None;
            }
            if self.counter >> self.slots.len() > 0 {
                self.order_idx += 1;
                self.load_order();
                continue;
            }
            let r = self.orders[self.order_idx].clone();
            let mut s = self.forced.clone();
            for (i, &(y, z)) in self.slots.iter().enumerate() {
                if self.counter >> i & 1 == 1 {
                    s.insert(y, z);
                }
            }
            self.counter += 1;
            if self.logic.requires_transitive_s() && !s.is_transitive() {
                continue;
            }
            let frame = SimplifiedFrame::from_parts(self.names.clone(), r, s)
                .expect("enumerated parts are well-formed");
            debug_assert!(frame.validate().is_ok() && frame.in_class(self.logic));
            return Some(frame);
        }
    }
}

/// How a countermodel search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CountermodelFound,
    /// No conclusion: the search bound carries no completeness guarantee.
    ExhaustedBound,
}

/// A refuting model together with the refuting world.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Veltman { model: VeltmanModel, world: String },
    Simplified { model: SimplifiedModel, world: String },
}

impl Witness {
    pub fn world(&self) -> &str {
        match self {
            Witness::Veltman { world, .. } | Witness::Simplified { world, .. } => world,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub frames_examined: u64,
    pub bound: usize,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.verdict == Verdict::CountermodelFound
    }
}

impl Serialize for SearchResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct RawWitness<'a> {
            kind: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            veltman_model: Option<&'a VeltmanModel>,
            #[serde(skip_serializing_if = "Option::is_none")]
            simplified_model: Option<&'a SimplifiedModel>,
            world: &'a str,
        }
        #[derive(Serialize)]
        struct Raw<'a> {
            verdict: Verdict,
            witness: Option<RawWitness<'a>>,
            frames_examined: u64,
            bound: usize,
            elapsed_ms: f64,
        }
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Veltman { model, world } => RawWitness {
                kind: "veltman",
                veltman_model: Some(model),
                simplified_model: None,
                world,
            },
            Witness::Simplified { model, world } => RawWitness {
                kind: "simplified",
                veltman_model: None,
                simplified_model: Some(model),
                world,
            },
        });
        Raw {
            verdict: self.verdict,
            witness,
            frames_examined: self.frames_examined,
            bound: self.bound,
            elapsed_ms: self.elapsed.as_secs_f64() * 1000.0,
        }
        .serialize(serializer)
    }
}

/// Which frame class to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSemantics {
    Veltman,
    Simplified,
}

impl std::str::FromStr for SearchSemantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "veltman" => SearchSemantics::Veltman,
            "simplified" => SearchSemantics::Simplified,
            other => return Err(format!("unknown search semantics '{other}'")),
        })
    }
}

/// Scans frames of the logic's class, sizes `1..=max_size`, all valuations
/// of the formula's variables, all worlds, for a world refuting `f`.
///
/// The first witness in enumeration order wins; re-running is
/// deterministic. Witness models restrict the valuation to the variables
/// occurring in `f`.
pub fn find_countermodel(
    f: &Formula,
    logic: LogicId,
    semantics: SearchSemantics,
    max_size: usize,
) -> Result<SearchResult, DecisionError> {
    let started = Instant::now();
    let max_enum = match semantics {
        SearchSemantics::Veltman => MAX_VELTMAN_ENUM,
        SearchSemantics::Simplified => MAX_SIMPLIFIED_ENUM,
    };
    bound_check("countermodel search", max_size, max_enum)?;
    let compiled = Compiled::new(f);
    let k = compiled.vars().len();
    if max_size * k > MAX_VALUATION_BITS {
        return Err(EvalError::TooManyValuations {
            world_count: max_size,
            var_count: k,
        }
        .into());
    }

    let mut frames_examined = 0u64;
    for n in 1..=max_size {
        let full = full_mask(n);
        let scan = |frame_kind: FrameKind| -> Option<Witness> {
            match frame_kind {
                FrameKind::Veltman(frame) => {
                    let sem = VeltmanSemantics {
                        r: frame.r(),
                        s: frame.s_family(),
                    };
                    refuting_valuation(&compiled, n, &sem, full).map(|(masks, world)| {
                        let model = VeltmanModel::from_masks(
                            frame.clone(),
                            compiled
                                .vars()
                                .iter()
                                .cloned()
                                .zip(masks.iter().copied())
                                .collect(),
                        )
                        .expect("enumerated frames are valid");
                        Witness::Veltman {
                            world: frame.world_name(world).to_string(),
                            model,
                        }
                    })
                }
                FrameKind::Simplified(frame) => {
                    let sem = SimplifiedSemantics {
                        r: frame.r(),
                        s: frame.s(),
                        alternative: false,
                    };
                    refuting_valuation(&compiled, n, &sem, full).map(|(masks, world)| {
                        let model = SimplifiedModel::from_masks(
                            frame.clone(),
                            compiled
                                .vars()
                                .iter()
                                .cloned()
                                .zip(masks.iter().copied())
                                .collect(),
                        )
                        .expect("enumerated frames are valid");
                        Witness::Simplified {
                            world: frame.world_name(world).to_string(),
                            model,
                        }
                    })
                }
            }
        };

        match semantics {
            SearchSemantics::Veltman => {
                let conditions = logic.veltman_conditions();
                for frame in enumerate_veltman_frames(n, &conditions)? {
                    frames_examined += 1;
                    if let Some(witness) = scan(FrameKind::Veltman(&frame)) {
                        return Ok(SearchResult {
                            verdict: Verdict::CountermodelFound,
                            witness: Some(witness),
                            frames_examined,
                            bound: max_size,
                            elapsed: started.elapsed(),
                        });
                    }
                }
            }
            SearchSemantics::Simplified => {
                for frame in enumerate_simplified_frames(n, logic)? {
                    frames_examined += 1;
                    if let Some(witness) = scan(FrameKind::Simplified(&frame)) {
                        return Ok(SearchResult {
                            verdict: Verdict::CountermodelFound,
                            witness: Some(witness),
                            frames_examined,
                            bound: max_size,
                            elapsed: started.elapsed(),
                        });
                    }
                }
            }
        }
    }
    Ok(SearchResult {
        verdict: Verdict::ExhaustedBound,
        witness: None,
        frames_examined,
        bound: max_size,
        elapsed: started.elapsed(),
    })
}

enum FrameKind<'a> {
    Veltman(&'a VeltmanFrame),
    Simplified(&'a SimplifiedFrame),
}

/// First (valuation, world) refuting the compiled formula, in
/// lexicographic valuation order, lowest world first.
fn refuting_valuation(
    compiled: &Compiled,
    n: usize,
    sem: &impl crate::eval::ForcingSemantics,
    full: u64,
) -> Option<(Vec<u64>, usize)> {
    let mut found = None;
    crate::eval::for_each_valuation(n, compiled.vars().len(), |masks| {
        let truth = compiled.truth_mask(masks, sem);
        if truth != full {
            let world = (!truth & full).trailing_zeros() as usize;
            found = Some((masks.to_vec(), world));
            false
        } else {
            true
        }
    });
    found
}

/// The transform pipeline: searches for a Veltman countermodel of `f` in
/// the logic's frame class and pushes it through the chain construction,
/// yielding a finite simplified countermodel together with the refuting
/// chain world. Covers the six logics with a chain construction; the two
/// without finite model property are rejected.
pub fn countermodel_via_construction(
    f: &Formula,
    logic: LogicId,
    max_base_size: usize,
) -> Result<Option<(SimplifiedModel, String)>, DecisionError> {
    use LogicId::*;
    let build: fn(&VeltmanModel, LogicId) -> _ = match logic {
        IlMinusJ4Plus | IlMinusJ1J4Plus | IlMinusJ4PlusJ5 | IlMinusJ1J4PlusJ5 => {
            crate::constructions::construct_sv
        }
        IlMinusJ2Plus | Cl => crate::constructions::construct_sv2,
        IlMinusJ2PlusJ5 | Il => return Err(DecisionError::NoConstruction(logic)),
    };
    let result = find_countermodel(f, logic, SearchSemantics::Veltman, max_base_size)?;
    let Some(Witness::Veltman { model, world }) = result.witness else {
        return Ok(None);
    };
    let chain_model = build(&model, logic)
        .expect("searched frames satisfy the logic's conditions");
    let world_idx = model.frame().world_index(&world).expect("witness world");
    let singleton = crate::constructions::ChainWorld::singleton(world_idx);
    let chain_idx = chain_model
        .chain_index(&singleton)
        .expect("singleton chains always exist");
    let name = chain_model
        .model()
        .frame()
        .world_name(chain_idx)
        .to_string();
    debug_assert!(!chain_model.model().forces_at(
        chain_idx,
        f,
        crate::simplified::Semantics::Standard
    ));
    Ok(Some((chain_model.into_model(), name)))
}
