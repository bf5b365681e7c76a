//! Seeded random generation of frames, models, and formulas.
//!
//! Frames are generated directly inside the requested class: the `R`
//! component is drawn uniformly from the strict orders, and the `S`
//! component is drawn sparsely and then closed under whatever the class
//! demands (diagonal, `R`-inclusion, transitivity, and on the Veltman
//! side the per-world domain restriction plus the J1/J5/J2plus closure
//! rules). This keeps rejection out of the hot paths: every sample is a
//! member of its class by construction.

use rand::Rng;

use crate::formula::Formula;
use crate::relation::{bits, full_mask, Relation};
use crate::simplified::{LogicId, SimplifiedFrame, SimplifiedModel};
use crate::veltman::{VeltmanFrame, VeltmanModel};

use super::{default_names, strict_orders};

fn sparse_relation(rng: &mut impl Rng, n: usize) -> Relation {
    let densities = [0.05, 0.1, 0.2, 0.35, 0.5];
    let p = densities[rng.gen_range(0..densities.len())];
    let mut rel = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(p) {
                rel.insert(x, y);
            }
        }
    }
    rel
}

/// A random simplified frame with the given structural closures applied.
pub(crate) fn sample_frame_with(
    rng: &mut impl Rng,
    n: usize,
    reflexive: bool,
    transitive: bool,
    r_subset: bool,
) -> SimplifiedFrame {
    let orders = strict_orders(n);
    let r = orders[rng.gen_range(0..orders.len())].clone();
    let mut s = sparse_relation(rng, n);
    if r_subset {
        s = s.union(&r);
    }
    if reflexive {
        s = s.with_identity();
    }
    if transitive {
        s = s.transitive_closure();
    }
    SimplifiedFrame::from_parts(default_names(n), r, s).expect("sampled parts are well-formed")
}

/// A random simplified frame in the `logic` class on `n` worlds.
pub fn sample_simplified_frame(rng: &mut impl Rng, n: usize, logic: LogicId) -> SimplifiedFrame {
    let frame = sample_frame_with(
        rng,
        n,
        logic.requires_reflexive_s(),
        logic.requires_transitive_s(),
        logic.requires_r_subset_s(),
    );
    debug_assert!(frame.validate().is_ok() && frame.in_class(logic));
    frame
}

fn random_valuation(
    rng: &mut impl Rng,
    n: usize,
    vars: &[&str],
) -> std::collections::BTreeMap<String, u64> {
    vars.iter()
        .map(|v| (v.to_string(), rng.gen_range(0..=full_mask(n))))
        .collect()
}

/// A random simplified model in the `logic` class with a random valuation
/// of `vars`.
pub fn sample_simplified_model(
    rng: &mut impl Rng,
    n: usize,
    logic: LogicId,
    vars: &[&str],
) -> SimplifiedModel {
    let frame = sample_simplified_frame(rng, n, logic);
    let valuation = random_valuation(rng, n, vars);
    SimplifiedModel::from_masks(frame, valuation).expect("sampled frames are valid")
}

/// A random Veltman model on `n` worlds satisfying the frame condition of
/// every axiom of `logic`, with a random valuation of `vars`.
pub fn sample_veltman_model(
    rng: &mut impl Rng,
    n: usize,
    logic: LogicId,
    vars: &[&str],
) -> VeltmanModel {
    let orders = strict_orders(n);
    let r = orders[rng.gen_range(0..orders.len())].clone();
    let reflexive = logic.requires_reflexive_s();
    let transitive = logic.requires_transitive_s();
    let r_comp = logic.requires_r_subset_s();
    let mut s = Vec::with_capacity(n);
    for x in 0..n {
        let domain = r.row(x);
        let mut sx = Relation::empty(n);
        // Sparse seed within R[x] x R[x]; the J4plus condition demands the
        // witness side stays under R[x] as well.
        for y in bits(domain) {
            for z in bits(domain) {
                if rng.gen_bool(0.3) {
                    sx.insert(y, z);
                }
            }
        }
        if reflexive {
            for y in bits(domain) {
                sx.insert(y, y); // J1: x R y  ⇒  y S_x y
            }
        }
        if r_comp {
            for y in bits(domain) {
                for z in bits(r.row(y)) {
                    sx.insert(y, z); // J5: x R y R z  ⇒  y S_x z
                }
            }
        }
        if transitive {
            sx = sx.transitive_closure();
        }
        s.push(sx);
    }
    let frame =
        VeltmanFrame::from_parts(default_names(n), r, s).expect("sampled parts are well-formed");
    debug_assert!(logic
        .veltman_conditions()
        .iter()
        .all(|&c| frame.satisfies_condition(c)));
    let valuation = random_valuation(rng, n, vars);
    VeltmanModel::from_masks(frame, valuation).expect("sampled frames are valid")
}

/// A random formula over `vars` with modal depth at most `modal_depth`.
pub fn sample_formula(rng: &mut impl Rng, vars: &[&str], modal_depth: usize) -> Formula {
    sample_formula_sized(rng, vars, modal_depth, 6)
}

fn sample_formula_sized(
    rng: &mut impl Rng,
    vars: &[&str],
    modal_depth: usize,
    budget: usize,
) -> Formula {
    let leaf = budget == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..=vars.len() + 1) {
            0 => Formula::Bot,
            1 => Formula::Top,
            i => Formula::var(vars[i - 2]),
        };
    }
    let modal_ok = modal_depth > 0;
    let choice = rng.gen_range(0..if modal_ok { 7 } else { 4 });
    let mut sub = |d: usize| sample_formula_sized(rng, vars, d, budget - 1);
    match choice {
        0 => Formula::imp(sub(modal_depth), sub(modal_depth)),
        1 => Formula::or(sub(modal_depth), sub(modal_depth)),
        2 => Formula::and(sub(modal_depth), sub(modal_depth)),
        3 => Formula::not(sub(modal_depth)),
        4 => Formula::boxed(sub(modal_depth - 1)),
        5 => Formula::diamond(sub(modal_depth - 1)),
        _ => Formula::rhd(sub(modal_depth - 1), sub(modal_depth - 1)),
    }
}
