//! Frame-condition correspondences checked by the two independent routes:
//! brute-force scheme validity on one side, direct first-order condition
//! evaluation on the other.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use veltman_core::decision::{enumerate_simplified_frames, enumerate_veltman_frames};
use veltman_core::formula::Axiom;
use veltman_core::relation::Relation;
use veltman_core::veltman::Condition as VC;
use veltman_core::{simplified, LogicId, Semantics, SimplifiedModel, VeltmanFrame};

#[test]
fn veltman_correspondences_exhaustive_up_to_three_worlds() {
    for n in 1..=3 {
        for frame in enumerate_veltman_frames(n, &[]).unwrap() {
            for cond in [VC::J1, VC::J2Plus, VC::J4Plus, VC::J5] {
                assert_eq!(
                    frame.validates_scheme(cond.axiom()).unwrap(),
                    frame.satisfies_condition(cond),
                    "{cond} correspondence fails on {frame:?}"
                );
            }
        }
    }
}

/// Arbitrary Veltman frame, no condition enforced (unlike the library's
/// class-targeted sampler).
fn random_frame(rng: &mut ChaCha8Rng, n: usize) -> VeltmanFrame {
    loop {
        let mut r = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if x != y && rng.gen_bool(0.4) {
                    r.insert(x, y);
                }
            }
        }
        if !r.is_transitive() {
            continue;
        }
        let mut s = Vec::with_capacity(n);
        let p = [0.15, 0.5][rng.gen_range(0..2)];
        for x in 0..n {
            let mut sx = Relation::empty(n);
            for y in 0..n {
                if r.contains(x, y) {
                    for z in 0..n {
                        if rng.gen_bool(p) {
                            sx.insert(y, z);
                        }
                    }
                }
            }
            s.push(sx);
        }
        let names = (1..=n).map(|i| format!("w{i}")).collect();
        return VeltmanFrame::from_parts(names, r, s).unwrap();
    }
}

#[test]
fn veltman_correspondences_on_random_four_world_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfc);
    for _ in 0..300 {
        let frame = random_frame(&mut rng, 4);
        for cond in [VC::J1, VC::J2Plus, VC::J4Plus, VC::J5] {
            assert_eq!(
                frame.validates_scheme(cond.axiom()).unwrap(),
                frame.satisfies_condition(cond),
                "{cond} correspondence fails on {frame:?}"
            );
        }
    }
}

#[test]
fn simplified_correspondences_exhaustive_up_to_two_worlds() {
    // The three-world sweep is the acceptance suite's first criterion;
    // this is the quick version.
    for n in 1..=2 {
        for frame in enumerate_simplified_frames(n, LogicId::IlMinusJ4Plus).unwrap() {
            for cond in [
                simplified::Condition::J1,
                simplified::Condition::J2Plus,
                simplified::Condition::J5,
            ] {
                assert_eq!(
                    frame
                        .validates_scheme(cond.axiom(), Semantics::Standard)
                        .unwrap(),
                    frame.satisfies_condition(cond),
                );
            }
            for always in [Axiom::J3, Axiom::J4Plus, Axiom::J6] {
                assert!(frame.validates_scheme(always, Semantics::Standard).unwrap());
            }
        }
    }
}

#[test]
fn forcing_readings_agree_whenever_s_is_below_r() {
    let corpus = common::formula_corpus(&["p", "q"], 25, 0x51);
    let mut rng = ChaCha8Rng::seed_from_u64(0x52);
    let mut models = 0;
    for n in 1..=3 {
        for frame in enumerate_simplified_frames(n, LogicId::IlMinusJ4Plus).unwrap() {
            if !frame.s().is_subset_of(frame.r()) {
                continue;
            }
            for _ in 0..3 {
                let valuation = [("p", rng.gen_range(0..1u64 << n)), ("q", rng.gen_range(0..1u64 << n))]
                    .into_iter()
                    .map(|(v, m)| (v.to_string(), m))
                    .collect();
                let model = SimplifiedModel::from_masks(frame.clone(), valuation).unwrap();
                models += 1;
                for f in &corpus {
                    assert_eq!(
                        common::simplified_table(&model, f, Semantics::Standard),
                        common::simplified_table(&model, f, Semantics::Alternative),
                        "readings diverge on {f} in {model:?}"
                    );
                    assert_eq!(
                        model.truth_mask(f, Semantics::Standard),
                        model.truth_mask(f, Semantics::Alternative),
                    );
                }
            }
        }
    }
    // 91 frames with S ⊆ R exist up to three worlds, three valuations each.
    assert_eq!(models, 273);
}

#[test]
fn class_membership_makes_the_logic_axioms_valid() {
    // Soundness direction: every frame in a simplified L-frame class
    // validates every axiom of L. Full sweep up to two worlds, the first
    // 2000 class frames at three.
    for logic in veltman_core::simplified::ALL_LOGICS {
        for n in 1..=3 {
            let cap = if n < 3 { usize::MAX } else { 2000 };
            for frame in enumerate_simplified_frames(n, logic).unwrap().take(cap) {
                for &axiom in logic.added_axioms() {
                    assert!(
                        frame.validates_scheme(axiom, Semantics::Standard).unwrap(),
                        "{axiom} fails in a {logic} frame: {frame:?}"
                    );
                }
            }
        }
    }
}
