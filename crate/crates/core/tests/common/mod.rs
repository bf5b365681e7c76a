//! Shared oracles for the integration suites: direct per-world
//! translations of the forcing clauses and brute-force enumerators, kept
//! independent of the library's bitmask evaluation and generation paths.

#![allow(dead_code)] // each integration target uses a subset

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman_core::decision::sample_formula;
use veltman_core::formula::Axiom;
use veltman_core::{Formula, Semantics, SimplifiedModel, VeltmanFrame, VeltmanModel};

/// Per-world truth table over a Veltman model, by structural recursion
/// with explicit quantifier loops.
pub fn veltman_table(m: &VeltmanModel, f: &Formula) -> Vec<bool> {
    let frame = m.frame();
    let n = frame.world_count();
    let rec = |g: &Formula| veltman_table(m, g);
    match f {
        Formula::Bot => vec![false; n],
        Formula::Top => vec![true; n],
        Formula::Var(p) => (0..n).map(|x| m.valuation_mask(p) >> x & 1 == 1).collect(),
        Formula::Imp(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| !ta[x] || tb[x]).collect()
        }
        Formula::Or(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| ta[x] || tb[x]).collect()
        }
        Formula::And(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| ta[x] && tb[x]).collect()
        }
        Formula::Box(a) => {
            let ta = rec(a);
            (0..n)
                .map(|x| (0..n).all(|y| !frame.r().contains(x, y) || ta[y]))
                .collect()
        }
        Formula::Rhd(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n)
                .map(|x| {
                    (0..n).all(|y| {
                        !(frame.r().contains(x, y) && ta[y])
                            || (0..n).any(|z| frame.s(x).contains(y, z) && tb[z])
                    })
                })
                .collect()
        }
    }
}

/// Per-world truth table over a simplified model, standard or alternative
/// reading of `▷`.
pub fn simplified_table(m: &SimplifiedModel, f: &Formula, sem: Semantics) -> Vec<bool> {
    let frame = m.frame();
    let n = frame.world_count();
    let rec = |g: &Formula| simplified_table(m, g, sem);
    match f {
        Formula::Bot => vec![false; n],
        Formula::Top => vec![true; n],
        Formula::Var(p) => (0..n).map(|x| m.valuation_mask(p) >> x & 1 == 1).collect(),
        Formula::Imp(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| !ta[x] || tb[x]).collect()
        }
        Formula::Or(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| ta[x] || tb[x]).collect()
        }
        Formula::And(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n).map(|x| ta[x] && tb[x]).collect()
        }
        Formula::Box(a) => {
            let ta = rec(a);
            (0..n)
                .map(|x| (0..n).all(|y| !frame.r().contains(x, y) || ta[y]))
                .collect()
        }
        Formula::Rhd(a, b) => {
            let (ta, tb) = (rec(a), rec(b));
            (0..n)
                .map(|x| {
                    (0..n).all(|y| {
                        !(frame.r().contains(x, y) && ta[y])
                            || (0..n).any(|z| {
                                let reach = match sem {
                                    Semantics::Standard => frame.r().contains(x, z),
                                    Semantics::Alternative => true,
                                };
                                reach && frame.s().contains(y, z) && tb[z]
                            })
                    })
                })
                .collect()
        }
    }
}

/// All chains by filtering every short sequence for the consecutive-`R`
/// property, rather than growing them.
pub fn brute_force_chains(frame: &VeltmanFrame) -> BTreeSet<Vec<usize>> {
    let n = frame.world_count();
    let mut out = BTreeSet::new();
    for len in 1..=n {
        let mut seq = vec![0usize; len];
        loop {
            if seq
                .windows(2)
                .all(|w| frame.r().contains(w[0], w[1]))
            {
                out.insert(seq.clone());
            }
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                if seq[i] + 1 < n {
                    seq[i] += 1;
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
    out
}

/// All traces up to `bound` by filtering every (Γ, Δ) candidate against
/// the step conditions. Markers are encoded as `n` for the 0 marker and
/// `v < n` for world markers.
pub fn brute_force_traces(
    frame: &VeltmanFrame,
    bound: usize,
) -> BTreeSet<(Vec<usize>, Vec<Option<usize>>)> {
    let n = frame.world_count();
    let mut out = BTreeSet::new();
    for len in 1..=bound {
        let digits = len + (len - 1);
        // Mixed radix: Γ positions range over n, Δ positions over n + 1.
        let radix: Vec<usize> = (0..digits).map(|i| if i < len { n } else { n + 1 }).collect();
        let mut counter = vec![0usize; digits];
        loop {
            let gamma: Vec<usize> = counter[..len].to_vec();
            let delta: Vec<Option<usize>> = counter[len..]
                .iter()
                .map(|&d| if d == n { None } else { Some(d) })
                .collect();
            let ok = (0..len - 1).all(|i| match delta[i] {
                None => frame.r().contains(gamma[i], gamma[i + 1]),
                Some(v) => frame.s(v).contains(gamma[i], gamma[i + 1]),
            });
            if ok {
                out.insert((gamma, delta));
            }
            let mut i = 0;
            loop {
                if i == digits {
                    break;
                }
                if counter[i] + 1 < radix[i] {
                    counter[i] += 1;
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == digits {
                break;
            }
        }
    }
    out
}

/// Whether some `S`-step tuple `a_1 S_{v_1} a_2 .. S_{v_l} a_{l+1}` with
/// `l` in `1..=max_len`, all `v_i` drawn from `allowed`, runs from `from`
/// to `to`. Literal tuple enumeration, used as the oracle against the
/// reachability implementation.
pub fn tuple_path_exists(
    frame: &VeltmanFrame,
    allowed: &[usize],
    from: usize,
    to: usize,
    max_len: usize,
) -> bool {
    if max_len == 0 {
        return false;
    }
    let n = frame.world_count();
    for v in allowed {
        for next in 0..n {
            if frame.s(*v).contains(from, next)
                && (next == to || tuple_path_exists(frame, allowed, next, to, max_len - 1))
            {
                return true;
            }
        }
    }
    false
}

/// A deterministic corpus of at least `count` distinct formulas over
/// `vars`, modal depth at most 3: a fixed hand list topped up with seeded
/// samples.
pub fn formula_corpus(vars: &[&str], count: usize, seed: u64) -> Vec<Formula> {
    let mut out: Vec<Formula> = [
        "p",
        "~p",
        "q",
        "p -> q",
        "p & q",
        "p | q",
        "[]p",
        "<>p",
        "[]~q",
        "p |> q",
        "q |> p",
        "p |> p",
        "<>p |> p",
        "[](p -> q) -> p |> q",
        "p |> q -> [](p |> q)",
        "(p |> q) & (q |> p) -> (p | q) |> q",
        "p |> (q |> p)",
        "[](p |> q)",
        "<>(p |> q) |> q",
        "(<>p |> p) |> q",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    for ax in [Axiom::J1, Axiom::J2, Axiom::J2Plus, Axiom::J3, Axiom::J4, Axiom::J4Plus, Axiom::J5, Axiom::J6, Axiom::P] {
        let args = [
            Formula::var(vars[0]),
            Formula::var(vars[vars.len().min(2) - 1]),
            Formula::var(vars[0]),
        ];
        out.push(ax.instance(&args[..ax.arity()]).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let f = sample_formula(&mut rng, vars, 3);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    debug_assert!(out.iter().all(|f| f.modal_depth() <= 3));
    out
}
