//! JSON tree encoding of formulas.
//!
//! Shape: `{"op": "rhd", "args": [...]}` for connectives, `{"op": "var",
//! "name": "p"}` for variables, and `{"op": "top"}` / `{"op": "bot"}` for
//! the constants. Abbreviations are not part of the encoding; `◇p`
//! serializes as its `¬□¬` expansion.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Formula;

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
enum Repr {
    Bot,
    Top,
    Var { name: String },
    Imp { args: Vec<Repr> },
    Or { args: Vec<Repr> },
    And { args: Vec<Repr> },
    Box { args: Vec<Repr> },
    Rhd { args: Vec<Repr> },
}

fn to_repr(f: &Formula) -> Repr {
    match f {
        Formula::Bot => Repr::Bot,
        Formula::Top => Repr::Top,
        Formula::Var(name) => Repr::Var { name: name.clone() },
        Formula::Imp(a, b) => Repr::Imp {
            args: vec![to_repr(a), to_repr(b)],
        },
        Formula::Or(a, b) => Repr::Or {
            args: vec![to_repr(a), to_repr(b)],
        },
        Formula::And(a, b) => Repr::And {
            args: vec![to_repr(a), to_repr(b)],
        },
        Formula::Box(a) => Repr::Box {
            args: vec![to_repr(a)],
        },
        Formula::Rhd(a, b) => Repr::Rhd {
            args: vec![to_repr(a), to_repr(b)],
        },
    }
}

fn two(mut args: Vec<Repr>, op: &str) -> Result<(Formula, Formula), String> {
    if args.len() != 2 {
        return Err(format!("'{op}' takes 2 args, got {}", args.len()));
    }
    let b = from_repr(args.pop().unwrap())?;
    let a = from_repr(args.pop().unwrap())?;
    Ok((a, b))
}

fn from_repr(repr: Repr) -> Result<Formula, String> {
    Ok(match repr {
        Repr::Bot => Formula::Bot,
        Repr::Top => Formula::Top,
        Repr::Var { name } => Formula::Var(name),
        Repr::Imp { args } => {
            let (a, b) = two(args, "imp")?;
            Formula::imp(a, b)
        }
        Repr::Or { args } => {
            let (a, b) = two(args, "or")?;
            Formula::or(a, b)
        }
        Repr::And { args } => {
            let (a, b) = two(args, "and")?;
            Formula::and(a, b)
        }
        Repr::Box { mut args } => {
            if args.len() != 1 {
                return Err(format!("'box' takes 1 arg, got {}", args.len()));
            }
            Formula::boxed(from_repr(args.pop().unwrap())?)
        }
        Repr::Rhd { args } => {
            let (a, b) = two(args, "rhd")?;
            Formula::rhd(a, b)
        }
    })
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        to_repr(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = Repr::deserialize(deserializer)?;
        from_repr(repr).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let f = Formula::rhd(Formula::var("p"), Formula::var("q"));
        assert_eq!(
            serde_json::to_value(&f).unwrap(),
            serde_json::json!({
                "op": "rhd",
                "args": [
                    {"op": "var", "name": "p"},
                    {"op": "var", "name": "q"},
                ],
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let f: Formula = "<>p |> (q & ~r -> T)".parse().unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: Formula = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn bad_arity_rejected() {
        let bad = serde_json::json!({"op": "imp", "args": [{"op": "top"}]});
        assert!(serde_json::from_value::<Formula>(bad).is_err());
    }
}
