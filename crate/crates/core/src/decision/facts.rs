//! Semantic checks of the derivability facts relating the sublogics.
//!
//! For each fact `L ⊢ X`, every enumerated frame of L's class must
//! validate a fresh-variable instance of `X`. This is a necessary
//! condition for derivability — a sound sanity check, not a proof. One
//! deliberately false control fact is included; it must fail with a
//! witness, which guards the harness itself against vacuity.
//!
//! On the Veltman side the class is taken semantically (all premise
//! axioms valid, checked by brute force) and sizes up to 3 are exhausted.
//! On the simplified side the class is taken structurally (reflexive /
//! transitive / `R ⊆ S` closure flags read off the premises); sizes up
//! to 3 are exhausted, and sizes 4 and 5 are covered by seeded sampling —
//! the full simplified frame space at size 5 runs to 10^11 frames, far
//! beyond exhausting.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formula::Axiom;
use crate::simplified::{LogicId, Semantics, SimplifiedFrame, SimplifiedModel};
use crate::veltman::VeltmanModel;

use super::{
    bound_check, enumerate_simplified_frames, enumerate_veltman_frames,
    sample::sample_frame_with, DecisionError, MAX_SIMPLIFIED_ENUM,
};

const SAMPLES_PER_SIZE: usize = 400;
const SAMPLE_SEED: u64 = 0x5eed_fac7;

/// Outcome of one fact on one semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub frames_checked: u64,
    pub failures: u64,
    /// Compact description of the first violating frame, if any.
    pub first_counterexample: Option<String>,
}

impl SideReport {
    fn new() -> Self {
        SideReport {
            frames_checked: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, axiom: Axiom, describe: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(format!("{axiom} fails in {}", describe()));
        }
    }
}

/// One fact `L ⊢ X1, .., Xk` with its outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactEntry {
    pub label: String,
    pub premises: Vec<Axiom>,
    pub conclusions: Vec<Axiom>,
    /// `false` marks the control fact, which must fail.
    pub expected_to_hold: bool,
    pub veltman: SideReport,
    pub simplified: SideReport,
}

impl FactEntry {
    pub fn holds(&self) -> bool {
        self.veltman.failures == 0 && self.simplified.failures == 0
    }

    pub fn as_expected(&self) -> bool {
        self.holds() == self.expected_to_hold
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactsReport {
    pub veltman_max: usize,
    pub simplified_max: usize,
    pub entries: Vec<FactEntry>,
}

impl FactsReport {
    /// True when every real fact holds and the control fact fails.
    pub fn all_as_expected(&self) -> bool {
        self.entries.iter().all(FactEntry::as_expected)
    }
}

impl fmt::Display for FactsReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            out,
            "derivability facts (veltman frames up to {}, simplified up to {}):",
            self.veltman_max, self.simplified_max
        )?;
        for entry in &self.entries {
            let status = match (entry.holds(), entry.expected_to_hold) {
                (true, true) => "pass",
                (false, false) => "fails as expected",
                (true, false) => "UNEXPECTED PASS",
                (false, true) => "FAIL",
            };
            writeln!(
                out,
                "  {:<28} veltman {:>5} frames, {} failure(s); simplified {:>6} frames, {} failure(s)  => {}",
                entry.label,
                entry.veltman.frames_checked,
                entry.veltman.failures,
                entry.simplified.frames_checked,
                entry.simplified.failures,
                status
            )?;
            if let Some(witness) = entry
                .veltman
                .first_counterexample
                .as_ref()
                .or(entry.simplified.first_counterexample.as_ref())
            {
                writeln!(out, "      witness: {witness}")?;
            }
        }
        Ok(())
    }
}

struct Fact {
    label: &'static str,
    premises: &'static [Axiom],
    conclusions: &'static [Axiom],
    expected_to_hold: bool,
}

const FACTS: &[Fact] = &[
    Fact {
        label: "IL-(J2plus) |- J2",
        premises: &[Axiom::J2Plus],
        conclusions: &[Axiom::J2],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J1,J2) |- J2plus",
        premises: &[Axiom::J1, Axiom::J2],
        conclusions: &[Axiom::J2Plus],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J2plus) |- J4plus",
        premises: &[Axiom::J2Plus],
        conclusions: &[Axiom::J4Plus],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J4plus) |- J4",
        premises: &[Axiom::J4Plus],
        conclusions: &[Axiom::J4],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J1,J4) |- J4plus",
        premises: &[Axiom::J1, Axiom::J4],
        conclusions: &[Axiom::J4Plus],
        expected_to_hold: true,
    },
    // The two halves of the deductive equivalences CL = IL-(J1,J2) and
    // IL = IL-(J1,J2,J5) that are not already listed above.
    Fact {
        label: "IL-(J1,J2plus) |- J2",
        premises: &[Axiom::J1, Axiom::J2Plus],
        conclusions: &[Axiom::J2],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J1,J2,J5) |- J2plus",
        premises: &[Axiom::J1, Axiom::J2, Axiom::J5],
        conclusions: &[Axiom::J2Plus],
        expected_to_hold: true,
    },
    Fact {
        label: "IL-(J4plus) |- J5 [control]",
        premises: &[Axiom::J4Plus],
        conclusions: &[Axiom::J5],
        expected_to_hold: false,
    },
];

/// Structural closure flags of the simplified class generated by a
/// premise set. J2 counts as J2plus here: the classes in play all contain
/// J1, where the two are interderivable.
fn simplified_class_flags(premises: &[Axiom]) -> (bool, bool, bool) {
    let reflexive = premises.contains(&Axiom::J1);
    let transitive = premises.contains(&Axiom::J2Plus) || premises.contains(&Axiom::J2);
    let r_subset = premises.contains(&Axiom::J5);
    (reflexive, transitive, r_subset)
}

fn veltman_side(fact: &Fact, max: usize) -> Result<SideReport, DecisionError> {
    let mut report = SideReport::new();
    for n in 1..=max {
        for frame in enumerate_veltman_frames(n, &[])? {
            let mut in_class = true;
            for &premise in fact.premises {
                if !frame.validates_scheme(premise)? {
                    in_class = false;
                    break;
                }
            }
            if !in_class {
                continue;
            }
            report.frames_checked += 1;
            for &conclusion in fact.conclusions {
                if !frame.validates_scheme(conclusion)? {
                    report.record(conclusion, || {
                        let model = VeltmanModel::from_masks(frame.clone(), Default::default())
                            .expect("enumerated frames are valid");
                        serde_json::to_string(&model).expect("models serialize")
                    });
                }
            }
        }
    }
    Ok(report)
}

fn check_simplified_frame(
    frame: &SimplifiedFrame,
    fact: &Fact,
    report: &mut SideReport,
) -> Result<(), DecisionError> {
    report.frames_checked += 1;
    for &conclusion in fact.conclusions {
        if !frame.validates_scheme(conclusion, Semantics::Standard)? {
            report.record(conclusion, || {
                let model = SimplifiedModel::from_masks(frame.clone(), Default::default())
                    .expect("enumerated frames are valid");
                serde_json::to_string(&model).expect("models serialize")
            });
        }
    }
    Ok(())
}

fn simplified_side(fact: &Fact, max: usize) -> Result<SideReport, DecisionError> {
    let (reflexive, transitive, r_subset) = simplified_class_flags(fact.premises);
    let mut report = SideReport::new();
    for n in 1..=max.min(3) {
        for frame in enumerate_simplified_frames(n, LogicId::IlMinusJ4Plus)? {
            let s = frame.s();
            let in_class = (!reflexive || s.is_reflexive())
                && (!transitive || s.is_transitive())
                && (!r_subset || frame.r().is_subset_of(s));
            if in_class {
                check_simplified_frame(&frame, fact, &mut report)?;
            }
        }
    }
    for n in 4..=max {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ (n as u64) << 8);
        for _ in 0..SAMPLES_PER_SIZE {
            let frame = sample_frame_with(&mut rng, n, reflexive, transitive, r_subset);
            check_simplified_frame(&frame, fact, &mut report)?;
        }
    }
    Ok(report)
}

/// Runs every fact over both frame classes.
pub fn check_derivability_facts(
    veltman_max: usize,
    simplified_max: usize,
) -> Result<FactsReport, DecisionError> {
    bound_check("Veltman fact", veltman_max, 3)?;
    bound_check("simplified fact", simplified_max, MAX_SIMPLIFIED_ENUM)?;
    let mut entries = Vec::new();
    for fact in FACTS {
        entries.push(FactEntry {
            label: fact.label.to_string(),
            premises: fact.premises.to_vec(),
            conclusions: fact.conclusions.to_vec(),
            expected_to_hold: fact.expected_to_hold,
            veltman: veltman_side(fact, veltman_max)?,
            simplified: simplified_side(fact, simplified_max)?,
        });
    }
    Ok(FactsReport {
        veltman_max,
        simplified_max,
        entries,
    })
}
