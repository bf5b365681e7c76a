//! Veltman frames and models: `(W, R, {S_x})` with a transitive,
//! irreflexive `R` (converse well-foundedness, on a finite carrier) and a
//! per-world family of relations `S_x ⊆ R[x] × W`.
//!
//! Forcing follows the usual clauses; `x ⊩ A ▷ B` holds iff every
//! `y ∈ R[x]` forcing `A` has an `S_x`-successor forcing `B`. Note that
//! the witness `z` ranges over all of `W`: nothing forces `x R z` here.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{EvalError, FrameViolation, ModelError, ValidationReport};
use crate::eval::{for_each_valuation, Compiled, VeltmanSemantics, MAX_VALUATION_BITS};
use crate::formula::{Axiom, Formula};
use crate::relation::{bits, full_mask, Relation, MAX_WORLDS};

/// First-order frame conditions corresponding to validity of single axiom
/// schemes on Veltman frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `x R y  ⇒  y S_x y`
    J1,
    /// The J4plus condition together with transitivity of every `S_x`.
    J2Plus,
    /// `y S_x z  ⇒  x R z`
    J4Plus,
    /// `x R y and y R z  ⇒  y S_x z`
    J5,
}

pub const ALL_CONDITIONS: [Condition; 4] =
    [Condition::J1, Condition::J2Plus, Condition::J4Plus, Condition::J5];

impl Condition {
    /// The axiom scheme this condition characterizes.
    pub fn axiom(self) -> Axiom {
        match self {
            Condition::J1 => Axiom::J1,
            Condition::J2Plus => Axiom::J2Plus,
            Condition::J4Plus => Axiom::J4Plus,
            Condition::J5 => Axiom::J5,
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{}", self.axiom())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "J1" => Condition::J1,
            "J2plus" | "J2+" => Condition::J2Plus,
            "J4plus" | "J4+" => Condition::J4Plus,
            "J5" => Condition::J5,
            other => return Err(format!("unknown frame condition '{other}'")),
        })
    }
}

/// A finite Veltman frame.
#[derive(Clone, PartialEq, Eq)]
pub struct VeltmanFrame {
    names: Arc<[String]>,
    r: Relation,
    s: Vec<Relation>,
}

impl VeltmanFrame {
    /// Builds a frame from parts. Checks arity and name sanity only;
    /// the frame laws are a separate concern, see [`VeltmanFrame::validate`].
    pub fn from_parts(
        names: Vec<String>,
        r: Relation,
        s: Vec<Relation>,
    ) -> Result<Self, ModelError> {
        let n = names.len();
        if n == 0 {
            return Err(ModelError::NoWorlds);
        }
        if n > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(n));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(ModelError::DuplicateWorld(name.clone()));
            }
        }
        if r.size() != n {
            return Err(ModelError::SizeMismatch {
                expected: n,
                got: r.size(),
            });
        }
        if s.len() != n {
            return Err(ModelError::SizeMismatch {
                expected: n,
                got: s.len(),
            });
        }
        if let Some(bad) = s.iter().find(|rel| rel.size() != n) {
            return Err(ModelError::SizeMismatch {
                expected: n,
                got: bad.size(),
            });
        }
        Ok(VeltmanFrame {
            names: names.into(),
            r,
            s,
        })
    }

    /// Convenience constructor over world names: `r` lists `x R y` pairs and
    /// `s` lists `(x, y, z)` triples meaning `y S_x z`.
    pub fn build(
        names: &[&str],
        r: &[(&str, &str)],
        s: &[(&str, &str, &str)],
    ) -> Result<Self, ModelError> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| -> Result<usize, ModelError> {
            names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
        };
        let n = owned.len();
        let mut rel = Relation::empty(n.max(1));
        for &(x, y) in r {
            rel.insert(find(x)?, find(y)?);
        }
        let mut fam = vec![Relation::empty(n.max(1)); n];
        for &(x, y, z) in s {
            fam[find(x)?].insert(find(y)?, find(z)?);
        }
        VeltmanFrame::from_parts(owned, rel, fam)
    }

    pub fn world_count(&self) -> usize {
        self.names.len()
    }

    pub fn world_names(&self) -> &[String] {
        &self.names
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn world_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    /// The relation `S_x`.
    pub fn s(&self, x: usize) -> &Relation {
        &self.s[x]
    }

    pub fn s_family(&self) -> &[Relation] {
        &self.s
    }

    /// Checks the frame laws: `R` transitive and irreflexive, each
    /// `S_x ⊆ R[x] × W`. Reports every violation with a witness.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |i: usize| self.names[i].clone();
        if let Some((x, y, z)) = self.r.transitivity_witness() {
            violations.push(FrameViolation::NotTransitive {
                x: name(x),
                y: name(y),
                z: name(z),
            });
        }
        if let Some(x) = self.r.reflexivity_witness() {
            violations.push(FrameViolation::Reflexive { x: name(x) });
        }
        for x in 0..self.world_count() {
            for (y, z) in self.s[x].pairs() {
                if !self.r.contains(x, y) {
                    violations.push(FrameViolation::SDomain {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Evaluates the first-order condition directly, by quantifier
    /// enumeration.
    pub fn satisfies_condition(&self, cond: Condition) -> bool {
        let n = self.world_count();
        match cond {
            Condition::J1 => (0..n)
                .all(|x| bits(self.r.row(x)).all(|y| self.s[x].contains(y, y))),
            Condition::J4Plus => (0..n).all(|x| {
                (0..n).all(|y| self.s[x].row(y) & !self.r.row(x) == 0)
            }),
            Condition::J2Plus => {
                self.satisfies_condition(Condition::J4Plus)
                    && self.s.iter().all(Relation::is_transitive)
            }
            Condition::J5 => (0..n).all(|x| {
                bits(self.r.row(x)).all(|y| self.r.row(y) & !self.s[x].row(y) == 0)
            }),
        }
    }

    /// Whether the scheme, instantiated with fresh variables, is forced at
    /// every world under every valuation of those variables.
    pub fn validates_scheme(&self, axiom: Axiom) -> Result<bool, EvalError> {
        self.validates_formula(&axiom.fresh_instance())
    }

    /// Whether `f` is forced at every world under every valuation of its
    /// variables.
    pub fn validates_formula(&self, f: &Formula) -> Result<bool, EvalError> {
        let compiled = Compiled::new(f);
        let n = self.world_count();
        let k = compiled.vars().len();
        if n * k > MAX_VALUATION_BITS {
            return Err(EvalError::TooManyValuations {
                world_count: n,
                var_count: k,
            });
        }
        let sem = VeltmanSemantics {
            r: &self.r,
            s: &self.s,
        };
        let full = full_mask(n);
        Ok(for_each_valuation(n, k, |masks| {
            compiled.truth_mask(masks, &sem) == full
        }))
    }

    /// DOT rendering: `R` as solid black edges, each `S_x` as dashed gray
    /// edges labeled `x`. Node and edge order is deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph veltman_frame {\n");
        for name in self.names.iter() {
            let _ = writeln!(out, "    \"{name}\";");
        }
        for (x, y) in self.r.pairs() {
            let _ = writeln!(
                out,
                "    \"{}\" -> \"{}\" [color=black];",
                self.names[x], self.names[y]
            );
        }
        for x in 0..self.world_count() {
            for (y, z) in self.s[x].pairs() {
                let _ = writeln!(
                    out,
                    "    \"{}\" -> \"{}\" [style=dashed, color=gray, label=\"{}\"];",
                    self.names[y], self.names[z], self.names[x]
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for VeltmanFrame {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "VeltmanFrame {{ worlds: {:?}, r: {:?}, s: {:?} }}",
            self.names, self.r, self.s
        )
    }
}

/// A Veltman frame with a valuation. The frame laws are checked at
/// construction time, so forcing never has to re-validate.
#[derive(Clone, PartialEq, Eq)]
pub struct VeltmanModel {
    frame: VeltmanFrame,
    valuation: BTreeMap<String, u64>,
}

impl VeltmanModel {
    pub fn new(frame: VeltmanFrame, valuation: &[(&str, &[&str])]) -> Result<Self, ModelError> {
        let mut masks = BTreeMap::new();
        for (var, worlds) in valuation {
            let mask: &mut u64 = masks.entry(var.to_string()).or_default();
            for w in *worlds {
                let idx = frame
                    .world_index(w)
                    .ok_or_else(|| ModelError::UnknownWorld(w.to_string()))?;
                *mask |= 1 << idx;
            }
        }
        Self::from_masks(frame, masks)
    }

    /// Builds a model from per-variable world masks.
    pub fn from_masks(
        frame: VeltmanFrame,
        valuation: BTreeMap<String, u64>,
    ) -> Result<Self, ModelError> {
        let report = frame.validate();
        if !report.is_ok() {
            return Err(ModelError::InvalidFrame(report));
        }
        let full = full_mask(frame.world_count());
        let valuation = valuation
            .into_iter()
            .map(|(var, mask)| (var, mask & full))
            .collect();
        Ok(VeltmanModel { frame, valuation })
    }

    pub fn frame(&self) -> &VeltmanFrame {
        &self.frame
    }

    /// Worlds where `var` is true, as a bitmask.
    pub fn valuation_mask(&self, var: &str) -> u64 {
        self.valuation.get(var).copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> &BTreeMap<String, u64> {
        &self.valuation
    }

    /// Mask of worlds forcing `f`. Variables without a valuation entry are
    /// false everywhere.
    pub fn truth_mask(&self, f: &Formula) -> u64 {
        let compiled = Compiled::new(f);
        let var_masks: Vec<u64> = compiled
            .vars()
            .iter()
            .map(|v| self.valuation_mask(v))
            .collect();
        let sem = VeltmanSemantics {
            r: &self.frame.r,
            s: &self.frame.s,
        };
        compiled.truth_mask(&var_masks, &sem)
    }

    pub fn forces(&self, world: &str, f: &Formula) -> Result<bool, EvalError> {
        let x = self
            .frame
            .world_index(world)
            .ok_or_else(|| EvalError::UnknownWorld(world.to_string()))?;
        Ok(self.forces_at(x, f))
    }

    pub fn forces_at(&self, x: usize, f: &Formula) -> bool {
        assert!(x < self.frame.world_count(), "world index out of range");
        self.truth_mask(f) >> x & 1 == 1
    }
}

impl std::fmt::Debug for VeltmanModel {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "VeltmanModel {{ frame: {:?}, valuation: {:?} }}",
            self.frame,
            self.valuation_by_name()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    worlds: Vec<String>,
    #[serde(rename = "R")]
    r: Vec<(String, String)>,
    #[serde(rename = "S")]
    s: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
}

impl VeltmanFrame {
    fn from_raw(raw: &RawModel) -> Result<Self, ModelError> {
        let n = raw.worlds.len();
        if n == 0 {
            return Err(ModelError::NoWorlds);
        }
        if n > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(n));
        }
        let find = |name: &str| -> Result<usize, ModelError> {
            raw.worlds
                .iter()
                .position(|w| w == name)
                .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
        };
        let mut r = Relation::empty(n);
        for (x, y) in &raw.r {
            r.insert(find(x)?, find(y)?);
        }
        let mut s = vec![Relation::empty(n); n];
        for (x, pairs) in &raw.s {
            let xi = find(x)?;
            for (y, z) in pairs {
                s[xi].insert(find(y)?, find(z)?);
            }
        }
        VeltmanFrame::from_parts(raw.worlds.clone(), r, s)
    }

    fn to_raw(&self) -> RawModel {
        let names = &self.names;
        let r = self
            .r
            .pairs()
            .map(|(x, y)| (names[x].clone(), names[y].clone()))
            .collect();
        let mut s = BTreeMap::new();
        for x in 0..self.world_count() {
            let pairs: Vec<(String, String)> = self.s[x]
                .pairs()
                .map(|(y, z)| (names[y].clone(), names[z].clone()))
                .collect();
            if !pairs.is_empty() {
                s.insert(names[x].clone(), pairs);
            }
        }
        RawModel {
            worlds: names.to_vec(),
            r,
            s,
            valuation: BTreeMap::new(),
        }
    }
}

impl Serialize for VeltmanFrame {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

/// Frame decoding accepts the model schema (any valuation is ignored) and
/// does not check the frame laws, so that [`VeltmanFrame::validate`] can
/// report on files that break them.
impl<'de> Deserialize<'de> for VeltmanFrame {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        VeltmanFrame::from_raw(&raw).map_err(D::Error::custom)
    }
}

impl VeltmanModel {
    fn valuation_by_name(&self) -> BTreeMap<String, Vec<String>> {
        self.valuation
            .iter()
            .map(|(var, mask)| {
                let worlds = bits(*mask)
                    .map(|x| self.frame.names[x].clone())
                    .collect();
                (var.clone(), worlds)
            })
            .collect()
    }

    fn to_raw(&self) -> RawModel {
        let mut raw = self.frame.to_raw();
        raw.valuation = self.valuation_by_name();
        raw
    }

    fn from_raw(raw: RawModel) -> Result<Self, ModelError> {
        let frame = VeltmanFrame::from_raw(&raw)?;
        let mut masks: BTreeMap<String, u64> = BTreeMap::new();
        for (var, worlds) in &raw.valuation {
            let mask = masks.entry(var.clone()).or_default();
            for w in worlds {
                let idx = frame
                    .world_index(w)
                    .ok_or_else(|| ModelError::UnknownWorld(w.to_string()))?;
                *mask |= 1 << idx;
            }
        }
        VeltmanModel::from_masks(frame, masks)
    }
}

impl Serialize for VeltmanModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VeltmanModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        VeltmanModel::from_raw(raw).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }

    fn q() -> Formula {
        Formula::var("q")
    }

    /// Direct per-world recursion over the forcing clauses, kept deliberately
    /// independent of the bitmask evaluator.
    fn naive_forces(m: &VeltmanModel, x: usize, f: &Formula) -> bool {
        let frame = m.frame();
        let n = frame.world_count();
        match f {
            Formula::Bot => false,
            Formula::Top => true,
            Formula::Var(v) => m.valuation_mask(v) >> x & 1 == 1,
            Formula::Imp(a, b) => !naive_forces(m, x, a) || naive_forces(m, x, b),
            Formula::Or(a, b) => naive_forces(m, x, a) || naive_forces(m, x, b),
            Formula::And(a, b) => naive_forces(m, x, a) && naive_forces(m, x, b),
            Formula::Box(a) => {
                (0..n).all(|y| !frame.r().contains(x, y) || naive_forces(m, y, a))
            }
            Formula::Rhd(a, b) => (0..n).all(|y| {
                !(frame.r().contains(x, y) && naive_forces(m, y, a))
                    || (0..n).any(|z| frame.s(x).contains(y, z) && naive_forces(m, z, b))
            }),
        }
    }

    #[test]
    fn validate_accepts_the_one_point_frame() {
        let frame = VeltmanFrame::build(&["w"], &[], &[]).unwrap();
        assert!(frame.validate().is_ok());
    }

    #[test]
    fn validate_rejects_a_two_cycle() {
        let frame = VeltmanFrame::build(&["a", "b"], &[("a", "b"), ("b", "a")], &[]).unwrap();
        let report = frame.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, FrameViolation::NotTransitive { .. })));
    }

    #[test]
    fn validate_checks_the_s_domain() {
        let ok = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "b", "b")]).unwrap();
        assert!(ok.validate().is_ok());
        let bad = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "a", "b")]).unwrap();
        let report = bad.validate();
        assert_eq!(
            report.violations,
            vec![FrameViolation::SDomain {
                x: "a".into(),
                y: "a".into(),
                z: "b".into()
            }]
        );
    }

    #[test]
    fn top_is_forced_everywhere() {
        let frame = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let m = VeltmanModel::new(frame, &[]).unwrap();
        assert!(m.forces("a", &Formula::Top).unwrap());
        assert!(m.forces("b", &Formula::Top).unwrap());
    }

    #[test]
    fn rhd_is_vacuous_without_r_successors() {
        let frame = VeltmanFrame::build(&["a"], &[], &[]).unwrap();
        let m = VeltmanModel::new(frame, &[]).unwrap();
        assert!(m.forces("a", &Formula::rhd(p(), q())).unwrap());
    }

    #[test]
    fn rhd_fails_without_an_s_witness() {
        let frame = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let m = VeltmanModel::new(frame, &[("p", &["b"])]).unwrap();
        assert!(!m.forces("a", &Formula::rhd(p(), p())).unwrap());
    }

    #[test]
    fn unknown_world_is_an_error() {
        let frame = VeltmanFrame::build(&["a"], &[], &[]).unwrap();
        let m = VeltmanModel::new(frame, &[]).unwrap();
        assert_eq!(
            m.forces("z", &Formula::Top),
            Err(EvalError::UnknownWorld("z".into()))
        );
    }

    #[test]
    fn one_point_frame_validates_every_scheme() {
        let frame = VeltmanFrame::build(&["w"], &[], &[]).unwrap();
        for ax in crate::formula::ALL_AXIOMS {
            assert!(frame.validates_scheme(ax).unwrap(), "{ax} should be valid");
        }
    }

    #[test]
    fn empty_r_frames_validate_j1_through_j6() {
        // Monotone vacuity: with no R-successors every modal clause is vacuous.
        let frame = VeltmanFrame::build(&["a", "b", "c"], &[], &[]).unwrap();
        for ax in [Axiom::J1, Axiom::J2, Axiom::J3, Axiom::J4, Axiom::J5, Axiom::J6] {
            assert!(frame.validates_scheme(ax).unwrap(), "{ax} should be valid");
        }
    }

    #[test]
    fn j1_validity_needs_reflexive_s_points() {
        let bare = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert!(!bare.validates_scheme(Axiom::J1).unwrap());
        let fixed =
            VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "b", "b")]).unwrap();
        assert!(fixed.validates_scheme(Axiom::J1).unwrap());
    }

    #[test]
    fn condition_examples() {
        let f1 = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "b", "b")]).unwrap();
        assert!(f1.satisfies_condition(Condition::J1));

        let chain = VeltmanFrame::build(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("a", "c")],
            &[],
        )
        .unwrap();
        assert!(!chain.satisfies_condition(Condition::J5));

        let f3 = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "b", "a")]).unwrap();
        assert!(!f3.satisfies_condition(Condition::J4Plus));
    }

    #[test]
    fn mask_evaluator_agrees_with_naive_recursion() {
        // Every frame on two worlds, every valuation of p and q, a mixed
        // bag of formulas.
        let formulas: Vec<Formula> = [
            "p",
            "~p",
            "p & q",
            "p | ~q",
            "p -> q",
            "[]p",
            "<>p",
            "p |> q",
            "<>p |> p",
            "[](p -> q) -> p |> q",
            "(p |> q) & (q |> p) -> (p | q) |> q",
            "p |> (q |> p)",
            "[](p |> q)",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();

        let r_choices: [&[(&str, &str)]; 3] = [&[], &[("a", "b")], &[("b", "a")]];
        let mut checked = 0;
        for r in r_choices {
            // Legal S_x pairs: (x, y, z) with x R y.
            let legal: Vec<(&str, &str, &str)> = ["a", "b"]
                .iter()
                .flat_map(|&x| {
                    ["a", "b"].iter().flat_map(move |&y| {
                        ["a", "b"].iter().map(move |&z| (x, y, z))
                    })
                })
                .filter(|&(x, y, _)| r.contains(&(x, y)))
                .collect();
            for s_bits in 0..1u32 << legal.len() {
                let s: Vec<(&str, &str, &str)> = legal
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s_bits >> i & 1 == 1)
                    .map(|(_, &t)| t)
                    .collect();
                let frame = VeltmanFrame::build(&["a", "b"], r, &s).unwrap();
                for val_bits in 0..16u32 {
                    let worlds = ["a", "b"];
                    let pw: Vec<&str> = (0..2)
                        .filter(|i| val_bits >> i & 1 == 1)
                        .map(|i| worlds[i as usize])
                        .collect();
                    let qw: Vec<&str> = (0..2)
                        .filter(|i| val_bits >> (i + 2) & 1 == 1)
                        .map(|i| worlds[i as usize])
                        .collect();
                    let m = VeltmanModel::new(frame.clone(), &[("p", &pw), ("q", &qw)])
                        .unwrap();
                    for f in &formulas {
                        for x in 0..2 {
                            assert_eq!(m.forces_at(x, f), naive_forces(&m, x, f));
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn validity_sweep_guard() {
        let names: Vec<String> = (0..8).map(|i| format!("w{i}")).collect();
        let frame = VeltmanFrame::from_parts(
            names.clone(),
            Relation::empty(8),
            vec![Relation::empty(8); 8],
        )
        .unwrap();
        // 8 worlds x 3 variables = 24 bits > 20.
        assert!(matches!(
            frame.validates_scheme(Axiom::J2Plus),
            Err(EvalError::TooManyValuations { .. })
        ));
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{
            "worlds": ["a", "b"],
            "R": [["a", "b"]],
            "S": {"a": [["b", "b"]]},
            "valuation": {"p": ["b"]}
        }"#;
        let m: VeltmanModel = serde_json::from_str(text).unwrap();
        assert_eq!(m.frame().world_count(), 2);
        assert!(m.frame().r().contains(0, 1));
        assert!(m.frame().s(0).contains(1, 1));
        assert_eq!(m.valuation_mask("p"), 0b10);

        let encoded = serde_json::to_value(&m).unwrap();
        let back: VeltmanModel = serde_json::from_value(encoded).unwrap();
        assert_eq!(back, m);

        assert!(serde_json::from_str::<VeltmanModel>(
            r#"{"worlds": ["a"], "R": [["a", "zzz"]], "S": {}}"#
        )
        .is_err());
    }

    #[test]
    fn dot_export_lists_r_solid_and_s_dashed() {
        let frame = VeltmanFrame::build(&["a", "b"], &[("a", "b")], &[("a", "b", "b")]).unwrap();
        let dot = frame.to_dot();
        assert!(dot.contains("\"a\" -> \"b\" [color=black];"));
        assert!(dot.contains("\"b\" -> \"b\" [style=dashed, color=gray, label=\"a\"];"));
    }
}
