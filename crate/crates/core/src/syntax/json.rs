use serde_json::{json, Map, Value};

use super::{AnyTerm, JsonError};
use crate::indexed::{BIndex, IndexedTerm};
use crate::named::{NamedTerm, Symbol};

pub fn named_to_json(t: &NamedTerm) -> Value {
    match t {
        NamedTerm::Var(x) => json!({"kind": "var", "name": x.as_str()}),
        NamedTerm::Match(x) => json!({"kind": "match", "name": x.as_str()}),
        NamedTerm::App(f, a) => {
            json!({"kind": "app", "fun": named_to_json(f), "arg": named_to_json(a)})
        }
        NamedTerm::Abs(theta, p, b) => json!({
            "kind": "abs",
            "theta": theta.iter().map(|x| x.as_str()).collect::<Vec<_>>(),
            "pattern": named_to_json(p),
            "body": named_to_json(b),
        }),
    }
}

pub fn indexed_to_json(t: &IndexedTerm) -> Value {
    match t {
        IndexedTerm::Var(b) => json!({"kind": "varidx", "i": b.primary, "j": b.secondary}),
        IndexedTerm::Match(b) => json!({"kind": "matchidx", "i": b.primary, "j": b.secondary}),
        IndexedTerm::App(f, a) => {
            json!({"kind": "app", "fun": indexed_to_json(f), "arg": indexed_to_json(a)})
        }
        IndexedTerm::Abs(n, p, b) => json!({
            "kind": "abs",
            "arity": n,
            "pattern": indexed_to_json(p),
            "body": indexed_to_json(b),
        }),
    }
}

pub fn any_to_json(t: &AnyTerm) -> Value {
    match t {
        AnyTerm::Named(t) => named_to_json(t),
        AnyTerm::Indexed(t) => indexed_to_json(t),
    }
}

fn obj<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object()
        .ok_or_else(|| JsonError::Shape(format!("{at}: expected an object")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value, JsonError> {
    o.get(key)
        .ok_or_else(|| JsonError::Shape(format!("{at}: missing field `{key}`")))
}

fn uint(o: &Map<String, Value>, key: &str, at: &str) -> Result<usize, JsonError> {
    field(o, key, at)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| JsonError::Shape(format!("{at}: `{key}` must be a non-negative integer")))
}

fn symbol(v: &Value, at: &str) -> Result<Symbol, JsonError> {
    let s = v
        .as_str()
        .ok_or_else(|| JsonError::Shape(format!("{at}: expected a string")))?;
    Symbol::new(s).ok_or_else(|| JsonError::Shape(format!("{at}: `{s}` is not a valid symbol")))
}

fn bindex(o: &Map<String, Value>, at: &str) -> Result<BIndex, JsonError> {
    let (i, j) = (uint(o, "i", at)?, uint(o, "j", at)?);
    BIndex::new(i, j)
        .ok_or_else(|| JsonError::Shape(format!("{at}: index {i}.{j} has a zero component")))
}

/// Reads a term in the JSON AST schema; the side follows from the leaves.
pub fn any_from_json(v: &Value) -> Result<AnyTerm, JsonError> {
    from_json(v, "$")
}

fn from_json(v: &Value, at: &str) -> Result<AnyTerm, JsonError> {
    let o = obj(v, at)?;
    let kind = field(o, "kind", at)?
        .as_str()
        .ok_or_else(|| JsonError::Shape(format!("{at}: `kind` must be a string")))?;
    let child = |key: &str| -> Result<AnyTerm, JsonError> {
        from_json(field(o, key, at)?, &format!("{at}.{key}"))
    };
    let mismatch = || JsonError::Shape(format!("{at}: children mix named and indexed terms"));
    Ok(match kind {
        "var" => AnyTerm::Named(NamedTerm::Var(symbol(field(o, "name", at)?, at)?)),
        "match" => AnyTerm::Named(NamedTerm::Match(symbol(field(o, "name", at)?, at)?)),
        "varidx" => AnyTerm::Indexed(IndexedTerm::Var(bindex(o, at)?)),
        "matchidx" => AnyTerm::Indexed(IndexedTerm::Match(bindex(o, at)?)),
        "app" => match (child("fun")?, child("arg")?) {
            (AnyTerm::Named(f), AnyTerm::Named(a)) => AnyTerm::Named(NamedTerm::app(f, a)),
            (AnyTerm::Indexed(f), AnyTerm::Indexed(a)) => AnyTerm::Indexed(IndexedTerm::app(f, a)),
            _ => return Err(mismatch()),
        },
        "abs" | "abs_n" => {
            let (p, b) = (child("pattern")?, child("body")?);
            if let Some(theta) = o.get("theta") {
                let theta = theta
                    .as_array()
                    .ok_or_else(|| JsonError::Shape(format!("{at}: `theta` must be an array")))?
                    .iter()
                    .map(|x| symbol(x, at))
                    .collect::<Result<Vec<_>, _>>()?;
                match (p, b) {
                    (AnyTerm::Named(p), AnyTerm::Named(b)) => AnyTerm::Named(
                        NamedTerm::abs(theta, p, b)
                            .map_err(|e| JsonError::Shape(format!("{at}: {e}")))?,
                    ),
                    _ => return Err(mismatch()),
                }
            } else {
                let n = uint(o, "arity", at)?;
                match (p, b) {
                    (AnyTerm::Indexed(p), AnyTerm::Indexed(b)) => {
                        AnyTerm::Indexed(IndexedTerm::abs(n, p, b))
                    }
                    _ => return Err(mismatch()),
                }
            }
        }
        other => return Err(JsonError::Shape(format!("{at}: unknown kind `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_indexed, parse_named};

    #[test]
    fn schema_round_trips() {
        let t = parse_named(r"\[x,y] ^x ^y . y x").unwrap();
        let v = named_to_json(&t);
        assert_eq!(v["kind"], "abs");
        assert_eq!(v["theta"], json!(["x", "y"]));
        assert!(matches!(any_from_json(&v).unwrap(), AnyTerm::Named(u) if u == t));

        let t = parse_indexed(r"\{2} ^1.1 ^1.2 . 1.2").unwrap();
        let v = indexed_to_json(&t);
        assert_eq!(v["arity"], 2);
        assert_eq!(v["body"], json!({"kind": "varidx", "i": 1, "j": 2}));
        assert!(matches!(any_from_json(&v).unwrap(), AnyTerm::Indexed(u) if u == t));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(any_from_json(&json!({"kind": "varidx", "i": 0, "j": 1})).is_err());
        assert!(
            any_from_json(&json!({"kind": "app", "fun": {"kind": "var", "name": "x"},
            "arg": {"kind": "varidx", "i": 1, "j": 1}}))
            .is_err()
        );
        assert!(any_from_json(&json!({"kind": "abs", "theta": ["x", "x"],
            "pattern": {"kind": "match", "name": "x"}, "body": {"kind": "var", "name": "x"}}))
        .is_err());
        let alias = json!({"kind": "abs_n", "arity": 0,
            "pattern": {"kind": "matchidx", "i": 1, "j": 1}, "body": {"kind": "varidx", "i": 1, "j": 1}});
        assert!(matches!(
            any_from_json(&alias).unwrap(),
            AnyTerm::Indexed(_)
        ));
    }
}
