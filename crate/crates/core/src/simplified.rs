//! Simplified Veltman frames and models: `(W, R, S)` with a single
//! relation `S` in place of the per-world family.
//!
//! Two forcing readings of `▷` are available. The standard clause
//! requires the witness to be an `R`-successor of the evaluation world:
//! `x ⊩ A ▷ B` iff every `y` with `x R y, y ⊩ A` has a `z` with `x R z,
//! y S z, z ⊩ B`. The alternative clause drops the `x R z` conjunct; it
//! makes the scheme `P: A ▷ B → □(A ▷ B)` valid on every simplified
//! frame, which is why the standard clause is the default everywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{EvalError, FrameViolation, ModelError, ValidationReport};
use crate::eval::{for_each_valuation, Compiled, SimplifiedSemantics, MAX_VALUATION_BITS};
use crate::formula::{Axiom, Formula};
use crate::relation::{bits, full_mask, Relation, MAX_WORLDS};

/// Which `▷` clause to evaluate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    #[default]
    Standard,
    Alternative,
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "standard" => Semantics::Standard,
            "alternative" => Semantics::Alternative,
            other => return Err(format!("unknown semantics '{other}'")),
        })
    }
}

/// The sublogics of IL proving J4plus, i.e. the logics whose simplified
/// frame classes this crate works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogicId {
    IlMinusJ4Plus,
    IlMinusJ1J4Plus,
    IlMinusJ4PlusJ5,
    IlMinusJ1J4PlusJ5,
    IlMinusJ2Plus,
    Cl,
    IlMinusJ2PlusJ5,
    Il,
}

pub const ALL_LOGICS: [LogicId; 8] = [
    LogicId::IlMinusJ4Plus,
    LogicId::IlMinusJ1J4Plus,
    LogicId::IlMinusJ4PlusJ5,
    LogicId::IlMinusJ1J4PlusJ5,
    LogicId::IlMinusJ2Plus,
    LogicId::Cl,
    LogicId::IlMinusJ2PlusJ5,
    LogicId::Il,
];

impl LogicId {
    /// The axioms the logic adds on top of IL⁻. CL and IL are identified
    /// with IL⁻(J1, J2plus) and IL⁻(J1, J2plus, J5): over IL⁻(J1), J2plus
    /// and J2 are interderivable.
    pub fn added_axioms(self) -> &'static [Axiom] {
        match self {
            LogicId::IlMinusJ4Plus => &[Axiom::J4Plus],
            LogicId::IlMinusJ1J4Plus => &[Axiom::J1, Axiom::J4Plus],
            LogicId::IlMinusJ4PlusJ5 => &[Axiom::J4Plus, Axiom::J5],
            LogicId::IlMinusJ1J4PlusJ5 => &[Axiom::J1, Axiom::J4Plus, Axiom::J5],
            LogicId::IlMinusJ2Plus => &[Axiom::J2Plus],
            LogicId::Cl => &[Axiom::J1, Axiom::J2Plus],
            LogicId::IlMinusJ2PlusJ5 => &[Axiom::J2Plus, Axiom::J5],
            LogicId::Il => &[Axiom::J1, Axiom::J2Plus, Axiom::J5],
        }
    }

    /// Structural requirements of the simplified L-frame class.
    pub fn requires_reflexive_s(self) -> bool {
        self.added_axioms().contains(&Axiom::J1)
    }

    pub fn requires_transitive_s(self) -> bool {
        self.added_axioms().contains(&Axiom::J2Plus)
    }

    pub fn requires_r_subset_s(self) -> bool {
        self.added_axioms().contains(&Axiom::J5)
    }

    /// The Veltman-frame conditions corresponding to the added axioms.
    pub fn veltman_conditions(self) -> Vec<crate::veltman::Condition> {
        self.added_axioms()
            .iter()
            .map(|ax| match ax {
                Axiom::J1 => crate::veltman::Condition::J1,
                Axiom::J2Plus => crate::veltman::Condition::J2Plus,
                Axiom::J4Plus => crate::veltman::Condition::J4Plus,
                Axiom::J5 => crate::veltman::Condition::J5,
                other => unreachable!("{other} is not an added axiom of any LogicId"),
            })
            .collect()
    }
}

impl std::fmt::Display for LogicId {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            LogicId::IlMinusJ4Plus => "ILminus_J4plus",
            LogicId::IlMinusJ1J4Plus => "ILminus_J1J4plus",
            LogicId::IlMinusJ4PlusJ5 => "ILminus_J4plusJ5",
            LogicId::IlMinusJ1J4PlusJ5 => "ILminus_J1J4plusJ5",
            LogicId::IlMinusJ2Plus => "ILminus_J2plus",
            LogicId::Cl => "CL",
            LogicId::IlMinusJ2PlusJ5 => "ILminus_J2plusJ5",
            LogicId::Il => "IL",
        };
        out.write_str(name)
    }
}

impl FromStr for LogicId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for logic in ALL_LOGICS {
            if logic.to_string() == s {
                return Ok(logic);
            }
        }
        Err(format!("unknown logic '{s}'"))
    }
}

/// Frame conditions corresponding to single schemes on simplified frames.
/// J3, J4plus, and J6 need no entry: they are valid on every simplified
/// frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `x R y  ⇒  y S y`
    J1,
    /// `S` transitive within each `R[x]`:
    /// `y, z, v ∈ R[x] and y S z and z S v  ⇒  y S v`
    J2Plus,
    /// `x R y and y R z  ⇒  y S z`
    J5,
}

pub const ALL_CONDITIONS: [Condition; 3] = [Condition::J1, Condition::J2Plus, Condition::J5];

impl Condition {
    pub fn axiom(self) -> Axiom {
        match self {
            Condition::J1 => Axiom::J1,
            Condition::J2Plus => Axiom::J2Plus,
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
            "J5" => Condition::J5,
            other => return Err(format!("unknown frame condition '{other}'")),
        })
    }
}

/// A finite simplified Veltman frame. `S` is an arbitrary relation on the
/// worlds; `R` must be transitive and irreflexive.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplifiedFrame {
    names: Arc<[String]>,
    r: Relation,
    s: Relation,
}

impl SimplifiedFrame {
    pub fn from_parts(names: Vec<String>, r: Relation, s: Relation) -> Result<Self, ModelError> {
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
        for rel in [&r, &s] {
            if rel.size() != n {
                return Err(ModelError::SizeMismatch {
                    expected: n,
                    got: rel.size(),
                });
            }
        }
        Ok(SimplifiedFrame {
            names: names.into(),
            r,
            s,
        })
    }

    pub fn build(
        names: &[&str],
        r: &[(&str, &str)],
        s: &[(&str, &str)],
    ) -> Result<Self, ModelError> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| -> Result<usize, ModelError> {
            names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
        };
        let n = owned.len();
        let mut rel_r = Relation::empty(n.max(1));
        for &(x, y) in r {
            rel_r.insert(find(x)?, find(y)?);
        }
        let mut rel_s = Relation::empty(n.max(1));
        for &(y, z) in s {
            rel_s.insert(find(y)?, find(z)?);
        }
        SimplifiedFrame::from_parts(owned, rel_r, rel_s)
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

    pub fn s(&self) -> &Relation {
        &self.s
    }

    /// Checks the frame laws (`R` transitive and irreflexive; `S` is
    /// unconstrained at this level).
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
        ValidationReport { violations }
    }

    /// Evaluates the first-order condition by quantifier enumeration.
    pub fn satisfies_condition(&self, cond: Condition) -> bool {
        let n = self.world_count();
        match cond {
            Condition::J1 => {
                (0..n).all(|x| bits(self.r.row(x)).all(|y| self.s.contains(y, y)))
            }
            Condition::J2Plus => (0..n).all(|x| {
                let rx = self.r.row(x);
                bits(rx).all(|y| {
                    bits(self.s.row(y) & rx)
                        .all(|z| self.s.row(z) & rx & !self.s.row(y) == 0)
                })
            }),
            Condition::J5 => (0..n).all(|x| {
                bits(self.r.row(x)).all(|y| self.r.row(y) & !self.s.row(y) == 0)
            }),
        }
    }

    /// Whether the frame belongs to the simplified L-frame class: `S`
    /// reflexive if J1 is an axiom of L, `S` transitive if J2plus is,
    /// `R ⊆ S` if J5 is.
    ///
    /// These demands are global over `W`, deliberately stronger than the
    /// per-`R[x]` validity conditions of [`SimplifiedFrame::satisfies_condition`];
    /// both notions are needed and they must not be conflated.
    pub fn in_class(&self, logic: LogicId) -> bool {
        (!logic.requires_reflexive_s() || self.s.is_reflexive())
            && (!logic.requires_transitive_s() || self.s.is_transitive())
            && (!logic.requires_r_subset_s() || self.r.is_subset_of(&self.s))
    }

    pub fn validates_scheme(&self, axiom: Axiom, sem: Semantics) -> Result<bool, EvalError> {
        self.validates_formula(&axiom.fresh_instance(), sem)
    }

    pub fn validates_formula(&self, f: &Formula, sem: Semantics) -> Result<bool, EvalError> {
        let compiled = Compiled::new(f);
        let n = self.world_count();
        let k = compiled.vars().len();
        if n * k > MAX_VALUATION_BITS {
            return Err(EvalError::TooManyValuations {
                world_count: n,
                var_count: k,
            });
        }
        let sem = SimplifiedSemantics {
            r: &self.r,
            s: &self.s,
            alternative: sem == Semantics::Alternative,
        };
        let full = full_mask(n);
        Ok(for_each_valuation(n, k, |masks| {
            compiled.truth_mask(masks, &sem) == full
        }))
    }

    /// DOT rendering: `R` solid black, `S` dashed gray; deterministic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph simplified_frame {\n");
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
        for (y, z) in self.s.pairs() {
            let _ = writeln!(
                out,
                "    \"{}\" -> \"{}\" [style=dashed, color=gray];",
                self.names[y], self.names[z]
            );
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for SimplifiedFrame {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "SimplifiedFrame {{ worlds: {:?}, r: {:?}, s: {:?} }}",
            self.names, self.r, self.s
        )
    }
}

/// A simplified frame with a valuation; frame laws checked at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplifiedModel {
    frame: SimplifiedFrame,
    valuation: BTreeMap<String, u64>,
}

impl SimplifiedModel {
    pub fn new(
        frame: SimplifiedFrame,
        valuation: &[(&str, &[&str])],
    ) -> Result<Self, ModelError> {
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

    pub fn from_masks(
        frame: SimplifiedFrame,
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
        Ok(SimplifiedModel { frame, valuation })
    }

    pub fn frame(&self) -> &SimplifiedFrame {
        &self.frame
    }

    pub fn valuation_mask(&self, var: &str) -> u64 {
        self.valuation.get(var).copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> &BTreeMap<String, u64> {
        &self.valuation
    }

    pub fn truth_mask(&self, f: &Formula, sem: Semantics) -> u64 {
        let compiled = Compiled::new(f);
        let var_masks: Vec<u64> = compiled
            .vars()
            .iter()
            .map(|v| self.valuation_mask(v))
            .collect();
        let sem = SimplifiedSemantics {
            r: &self.frame.r,
            s: &self.frame.s,
            alternative: sem == Semantics::Alternative,
        };
        compiled.truth_mask(&var_masks, &sem)
    }

    pub fn forces(&self, world: &str, f: &Formula, sem: Semantics) -> Result<bool, EvalError> {
        let x = self
            .frame
            .world_index(world)
            .ok_or_else(|| EvalError::UnknownWorld(world.to_string()))?;
        Ok(self.forces_at(x, f, sem))
    }

    pub fn forces_at(&self, x: usize, f: &Formula, sem: Semantics) -> bool {
        assert!(x < self.frame.world_count(), "world index out of range");
        self.truth_mask(f, sem) >> x & 1 == 1
    }

    /// The root of the model, if it has one: the world below (or equal to)
    /// every other world. Unique when it exists, since `R` is irreflexive
    /// and transitive.
    pub fn root(&self) -> Option<usize> {
        let full = full_mask(self.frame.world_count());
        (0..self.frame.world_count())
            .find(|&w| self.frame.r.row(w) | (1 << w) == full)
    }

    /// The generated submodel on `R[w] ∪ {w}`.
    pub fn restrict_to_cone(&self, world: &str) -> Result<SimplifiedModel, EvalError> {
        let w = self
            .frame
            .world_index(world)
            .ok_or_else(|| EvalError::UnknownWorld(world.to_string()))?;
        let keep = self.frame.r.row(w) | (1 << w);
        let kept: Vec<usize> = bits(keep).collect();
        let names: Vec<String> = kept.iter().map(|&x| self.frame.names[x].clone()).collect();
        let frame = SimplifiedFrame::from_parts(
            names,
            self.frame.r.restrict(keep),
            self.frame.s.restrict(keep),
        )
        .expect("restriction of a well-formed frame is well-formed");
        let valuation = self
            .valuation
            .iter()
            .map(|(var, mask)| {
                let mut out = 0u64;
                for (new_x, &old_x) in kept.iter().enumerate() {
                    if mask >> old_x & 1 == 1 {
                        out |= 1 << new_x;
                    }
                }
                (var.clone(), out)
            })
            .collect();
        Ok(SimplifiedModel::from_masks(frame, valuation)
            .expect("restriction preserves the frame laws"))
    }
}

impl std::fmt::Debug for SimplifiedModel {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "SimplifiedModel {{ frame: {:?}, valuation: {:?} }}",
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
    s: Vec<(String, String)>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
}

impl SimplifiedFrame {
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
        let mut s = Relation::empty(n);
        for (y, z) in &raw.s {
            s.insert(find(y)?, find(z)?);
        }
        SimplifiedFrame::from_parts(raw.worlds.clone(), r, s)
    }

    fn to_raw(&self) -> RawModel {
        let names = &self.names;
        RawModel {
            worlds: names.to_vec(),
            r: self
                .r
                .pairs()
                .map(|(x, y)| (names[x].clone(), names[y].clone()))
                .collect(),
            s: self
                .s
                .pairs()
                .map(|(y, z)| (names[y].clone(), names[z].clone()))
                .collect(),
            valuation: BTreeMap::new(),
        }
    }
}

impl Serialize for SimplifiedFrame {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

/// Frame decoding accepts the model schema (any valuation is ignored) and
/// does not check the frame laws, so that [`SimplifiedFrame::validate`]
/// can report on files that break them.
impl<'de> Deserialize<'de> for SimplifiedFrame {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        SimplifiedFrame::from_raw(&raw).map_err(D::Error::custom)
    }
}

impl SimplifiedModel {
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
        let frame = SimplifiedFrame::from_raw(&raw)?;
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
        SimplifiedModel::from_masks(frame, masks)
    }
}

impl Serialize for SimplifiedModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplifiedModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        SimplifiedModel::from_raw(raw).map_err(D::Error::custom)
    }
}
