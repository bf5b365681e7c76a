//! Oracle-backed checks of the model transformations: enumeration by
//! filtering against enumeration by growing, tuple paths against
//! reachability, and truth preservation evaluated with the naive
//! per-world tables rather than the production evaluator.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use veltman_core::constructions::{
    common_prefix, construct_sv, construct_sv2, construct_svil, minus_one, reduce_il, setm,
    strengthen, strengthen_antecedent,
};
use veltman_core::decision::sample_veltman_model;
use veltman_core::relation::bits;
use veltman_core::{
    Formula, LogicId, Semantics, SimplifiedModel, VeltmanFrame, VeltmanModel,
};

fn sv_logics() -> [LogicId; 4] {
    [
        LogicId::IlMinusJ4Plus,
        LogicId::IlMinusJ1J4Plus,
        LogicId::IlMinusJ4PlusJ5,
        LogicId::IlMinusJ1J4PlusJ5,
    ]
}

#[test]
fn chain_worlds_match_the_filtering_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    for round in 0..60 {
        let logic = sv_logics()[round % 4];
        let n = rng.gen_range(1..=4);
        let base = sample_veltman_model(&mut rng, n, logic, &["p", "q"]);
        let built = construct_sv(&base, logic).unwrap();
        let impl_chains: BTreeSet<Vec<usize>> = built
            .chains()
            .iter()
            .map(|c| c.seq().to_vec())
            .collect();
        assert_eq!(impl_chains, common::brute_force_chains(base.frame()));
    }
}

#[test]
fn trace_worlds_match_the_filtering_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0);
    let mut checked = 0;
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let base = sample_veltman_model(&mut rng, n, LogicId::IlMinusJ2PlusJ5, &["p"]);
        for bound in 1..=4 {
            let Ok(out) = construct_svil(&base, bound) else {
                continue; // fragment exceeded the world cap
            };
            let impl_traces: BTreeSet<(Vec<usize>, Vec<Option<usize>>)> = out
                .traces()
                .iter()
                .map(|t| (t.gamma().to_vec(), t.delta().to_vec()))
                .collect();
            assert_eq!(impl_traces, common::brute_force_traces(base.frame(), bound));
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn sv2_reachability_matches_tuple_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe0);
    for round in 0..60 {
        let logic = [LogicId::IlMinusJ2Plus, LogicId::Cl][round % 2];
        let n = rng.gen_range(1..=4);
        let base = sample_veltman_model(&mut rng, n, logic, &["p", "q"]);
        let built = construct_sv2(&base, logic).unwrap();
        let chains = built.chains();
        for (i, y) in chains.iter().enumerate() {
            for (j, z) in chains.iter().enumerate() {
                let expected = {
                    let ym1 = minus_one(y.seq());
                    let zm1 = minus_one(z.seq());
                    let meet = common_prefix(ym1, zm1);
                    if meet.is_empty() {
                        y == z
                    } else {
                        let y_new = setm(ym1, minus_one(meet));
                        let z_new = setm(zm1, minus_one(meet));
                        z_new & !y_new == 0
                            && common::tuple_path_exists(
                                base.frame(),
                                &bits(y_new).collect::<Vec<_>>(),
                                y.last(),
                                z.last(),
                                n,
                            )
                    }
                };
                assert_eq!(
                    built.model().frame().s().contains(i, j),
                    expected,
                    "S' disagrees at ({y:?}, {z:?}) over {base:?}"
                );
            }
        }
    }
}

#[test]
fn chain_constructions_preserve_truth_under_the_naive_tables() {
    let corpus = common::formula_corpus(&["p", "q"], 30, 0xf0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1);
    for round in 0..40 {
        let n = rng.gen_range(1..=4);
        type Builder = fn(
            &VeltmanModel,
            LogicId,
        )
            -> Result<veltman_core::ChainModel, veltman_core::ConstructionError>;
        let (logic, build): (LogicId, Builder) = if round % 3 == 0 {
            ([LogicId::IlMinusJ2Plus, LogicId::Cl][round % 2], construct_sv2)
        } else {
            (sv_logics()[round % 4], construct_sv)
        };
        let base = sample_veltman_model(&mut rng, n, logic, &["p", "q"]);
        let built = build(&base, logic).unwrap();
        for f in &corpus {
            let base_table = common::veltman_table(&base, f);
            let lifted = common::simplified_table(built.model(), f, Semantics::Standard);
            for (i, chain) in built.chains().iter().enumerate() {
                assert_eq!(
                    lifted[i],
                    base_table[chain.last()],
                    "{f} differs at chain {chain:?} of {base:?}"
                );
            }
        }
    }
}

#[test]
fn svil_fragment_forcing_matches_the_base_when_the_trace_space_is_finite() {
    // a R b R c with b S_a c: the only base S-pair closes no loop, so the
    // trace space is finite (9 traces) and the fragment at bound >= 3 is
    // the whole transformed model. Forcing on it must equal base forcing.
    let frame = VeltmanFrame::build(
        &["a", "b", "c"],
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", "b", "c")],
    )
    .unwrap();
    let base = VeltmanModel::new(frame, &[("p", &["b"]), ("q", &["c"])]).unwrap();

    let counts: Vec<usize> = (1..=4)
        .map(|b| construct_svil(&base, b).unwrap().traces().len())
        .collect();
    assert_eq!(counts, [3, 7, 9, 9]);

    let out = construct_svil(&base, 4).unwrap();
    let corpus = common::formula_corpus(&["p", "q"], 40, 0xf2);
    for f in &corpus {
        let base_table = common::veltman_table(&base, f);
        let frag_table = common::simplified_table(out.fragment(), f, Semantics::Standard);
        for (i, t) in out.traces().iter().enumerate() {
            assert_eq!(
                frag_table[i],
                base_table[t.last()],
                "{f} differs at trace {t:?}"
            );
            assert_eq!(out.forces(t, f).unwrap(), base_table[t.last()]);
        }
    }
}

#[test]
fn reduce_il_hand_instance_preserves_subformula_forcing() {
    // S is transitive with R ⊆ S but reflexive only at y; the identity
    // closure genuinely adds (w, w) and (x, x), while every C ▷ C in the
    // antecedent is witnessed by real S-successors.
    let m: SimplifiedModel = serde_json::from_str(
        r#"{
            "worlds": ["w", "x", "y"],
            "R": [["w", "x"], ["w", "y"], ["x", "y"]],
            "S": [["w", "x"], ["w", "y"], ["x", "y"], ["y", "y"]],
            "valuation": {"p": ["x", "y"]}
        }"#,
    )
    .unwrap();
    let a: Formula = "p |> q".parse().unwrap();
    assert!(m.frame().in_class(LogicId::IlMinusJ2PlusJ5));
    assert!(!m.frame().s().contains(0, 0) && !m.frame().s().contains(1, 1));
    assert!(m
        .forces("w", &strengthen_antecedent(&a), Semantics::Standard)
        .unwrap());
    assert!(!m.forces("w", &strengthen(&a), Semantics::Standard).unwrap());

    let reduced = reduce_il(&m, &a).unwrap();
    assert!(reduced.frame().in_class(LogicId::Il));
    assert!(reduced.frame().s().contains(0, 0) && reduced.frame().s().contains(1, 1));
    for sub in a.subformulas() {
        assert_eq!(
            common::simplified_table(&m, &sub, Semantics::Standard),
            common::simplified_table(&reduced, &sub, Semantics::Standard),
            "forcing of {sub} changed"
        );
    }
    assert!(!reduced.forces("w", &a, Semantics::Standard).unwrap());
}
