//! Shared forcing machinery.
//!
//! Formulas are flattened into a deduplicated node array once, then
//! evaluated bottom-up as bitmasks over the worlds of a frame. The two
//! frame kinds (and the alternative `▷` reading on simplified frames)
//! only differ in how the `□` and `▷` masks are computed, which the
//! [`ForcingSemantics`] trait captures.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::relation::{bits, full_mask, Relation};

#[derive(Debug, Clone, Copy)]
pub(crate) enum Node {
    Bot,
    Top,
    Var(u32),
    Imp(u32, u32),
    Or(u32, u32),
    And(u32, u32),
    Box(u32),
    Rhd(u32, u32),
}

/// A formula flattened to a node array with children before parents.
pub(crate) struct Compiled {
    nodes: Vec<Node>,
    vars: Vec<String>,
}

impl Compiled {
    pub(crate) fn new(f: &Formula) -> Compiled {
        let mut compiled = Compiled {
            nodes: Vec::new(),
            vars: Vec::new(),
        };
        let mut memo = HashMap::new();
        compiled.add(f, &mut memo);
        compiled
    }

    /// Distinct variables of the formula, in first-occurrence order.
    pub(crate) fn vars(&self) -> &[String] {
        &self.vars
    }

    fn add(&mut self, f: &Formula, memo: &mut HashMap<Formula, u32>) -> u32 {
        if let Some(&idx) = memo.get(f) {
            return idx;
        }
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Var(name) => {
                let v = match self.vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name.clone());
                        self.vars.len() - 1
                    }
                };
                Node::Var(v as u32)
            }
            Formula::Imp(a, b) => Node::Imp(self.add(a, memo), self.add(b, memo)),
            Formula::Or(a, b) => Node::Or(self.add(a, memo), self.add(b, memo)),
            Formula::And(a, b) => Node::And(self.add(a, memo), self.add(b, memo)),
            Formula::Box(a) => Node::Box(self.add(a, memo)),
            Formula::Rhd(a, b) => Node::Rhd(self.add(a, memo), self.add(b, memo)),
        };
        let idx = self.nodes.len() as u32;
        self.nodes.push(node);
        memo.insert(f.clone(), idx);
        idx
    }

    /// Mask of worlds forcing the formula, given masks for its variables
    /// (indexed as in [`Compiled::vars`]).
    pub(crate) fn truth_mask(&self, var_masks: &[u64], sem: &impl ForcingSemantics) -> u64 {
        let full = full_mask(sem.world_count());
        let mut masks = vec![0u64; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            masks[i] = match *node {
                Node::Bot => 0,
                Node::Top => full,
                Node::Var(v) => var_masks[v as usize] & full,
                Node::Imp(a, b) => (!masks[a as usize] | masks[b as usize]) & full,
                Node::Or(a, b) => masks[a as usize] | masks[b as usize],
                Node::And(a, b) => masks[a as usize] & masks[b as usize],
                Node::Box(a) => sem.box_mask(masks[a as usize]),
                Node::Rhd(a, b) => sem.rhd_mask(masks[a as usize], masks[b as usize]),
            };
        }
        *masks.last().expect("formula has at least one node")
    }
}

/// The frame-dependent part of forcing: the modal clauses.
pub(crate) trait ForcingSemantics {
    fn world_count(&self) -> usize;

    /// `{x : every R-successor of x is in a}`.
    fn box_mask(&self, a: u64) -> u64;

    /// `{x : x ⊩ A ▷ B}` given the masks of `A` and `B`.
    fn rhd_mask(&self, a: u64, b: u64) -> u64;
}

/// Forcing over a full Veltman frame with the per-world family `{S_x}`:
/// `x ⊩ A ▷ B` iff every `y` with `x R y, y ⊩ A` has some `z` with
/// `y S_x z, z ⊩ B`.
pub(crate) struct VeltmanSemantics<'a> {
    pub r: &'a Relation,
    pub s: &'a [Relation],
}

impl ForcingSemantics for VeltmanSemantics<'_> {
    fn world_count(&self) -> usize {
        self.r.size()
    }

    fn box_mask(&self, a: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.r.size() {
            if self.r.row(x) & !a == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    fn rhd_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.r.size() {
            let sx = &self.s[x];
            let holds = bits(self.r.row(x) & a).all(|y| sx.row(y) & b != 0);
            if holds {
                out |= 1 << x;
            }
        }
        out
    }
}

/// Forcing over a simplified frame with a single relation `S`.
///
/// The standard clause demands a witness `z` with `x R z, y S z, z ⊩ B`;
/// the alternative clause drops the `x R z` conjunct.
pub(crate) struct SimplifiedSemantics<'a> {
    pub r: &'a Relation,
    pub s: &'a Relation,
    pub alternative: bool,
}

impl ForcingSemantics for SimplifiedSemantics<'_> {
    fn world_count(&self) -> usize {
        self.r.size()
    }

    fn box_mask(&self, a: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.r.size() {
            if self.r.row(x) & !a == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    fn rhd_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.r.size() {
            let reach = if self.alternative {
                u64::MAX
            } else {
                self.r.row(x)
            };
            let holds = bits(self.r.row(x) & a).all(|y| self.s.row(y) & b & reach != 0);
            if holds {
                out |= 1 << x;
            }
        }
        out
    }
}

/// Iterates all assignments of `vars` many masks over `n` worlds, calling
/// `body` with each assignment; stops early when `body` returns `false`.
///
/// Returns `true` when all assignments passed. The assignment order is
/// lexicographic, so results are deterministic.
pub(crate) fn for_each_valuation(
    n: usize,
    vars: usize,
    mut body: impl FnMut(&[u64]) -> bool,
) -> bool {
    let space = full_mask(n);
    let mut assignment = vec![0u64; vars];
    loop {
        if !body(&assignment) {
            return false;
        }
        // Increment the assignment as a base-2^n counter.
        let mut i = 0;
        loop {
            if i == vars {
                return true;
            }
            if assignment[i] == space {
                assignment[i] = 0;
                i += 1;
            } else {
                assignment[i] += 1;
                break;
            }
        }
    }
}

/// Guards the `2^(worlds * vars)` valuation sweep used by scheme-validity
/// checks. Anything above 2^20 evaluations is refused.
pub(crate) const MAX_VALUATION_BITS: usize = 20;
