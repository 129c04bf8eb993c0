//! Concrete syntax: parsing, printing and the JSON AST.
//!
//! Named terms use `x`, `^x` and `\[x,y] p . t`; indexed terms use `i.j`,
//! `^i.j` and `\{n} p . t`. Application is left-associative juxtaposition and
//! an abstraction body extends as far right as possible. `--` starts a
//! comment running to the end of the line.

mod json;
mod lexer;
mod parser;
mod print;

use std::fmt;

use thiserror::Error;

pub use json::{any_from_json, any_to_json, indexed_to_json, named_to_json};
pub use parser::{parse, parse_indexed, parse_named};

use crate::indexed::IndexedTerm;
use crate::named::NamedTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Named,
    Indexed,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Named => "named",
            Side::Indexed => "indexed",
        })
    }
}

/// A term of either calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTerm {
    Named(NamedTerm),
    Indexed(IndexedTerm),
}

impl AnyTerm {
    pub fn side(&self) -> Side {
        match self {
            AnyTerm::Named(_) => Side::Named,
            AnyTerm::Indexed(_) => Side::Indexed,
        }
    }
}

impl fmt::Display for AnyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyTerm::Named(t) => t.fmt(f),
            AnyTerm::Indexed(t) => t.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: found {found}, expected one of: {}", expected.join(", "))]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("{line}:{column}: duplicate binder `{name}`")]
    DuplicateBinder {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: index {primary}.{secondary} must have both components >= 1")]
    ZeroIndex {
        line: usize,
        column: usize,
        primary: usize,
        secondary: usize,
    },
    #[error("{line}:{column}: {found} does not belong to a {side} term")]
    WrongSide {
        line: usize,
        column: usize,
        found: String,
        side: Side,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("invalid term JSON at {0}")]
    Shape(String),
}

/// Reads either concrete syntax or, when the input starts with `{`, JSON.
pub fn read_term(src: &str, side: Option<Side>) -> Result<AnyTerm, ReadError> {
    let trimmed = src.trim_start();
    let term = if trimmed.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| JsonError::Syntax(e.to_string()))?;
        any_from_json(&v)?
    } else {
        parse(src, side)?
    };
    match side {
        Some(s) if s != term.side() => Err(ReadError::Side {
            wanted: s,
            found: term.side(),
        }),
        _ => Ok(term),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("expected a {wanted} term, found a {found} term")]
    Side { wanted: Side, found: Side },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_terms_parse() {
        let elim = parse_named(r"\[x] ^x . (\[y] x ^y . y)").unwrap();
        assert!(matches!(elim, NamedTerm::Abs(ref th, _, _) if th.len() == 1));
        let elim_db = parse_indexed(r"\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)").unwrap();
        assert!(matches!(elim_db, IndexedTerm::Abs(1, _, _)));
    }

    #[test]
    fn error_reporting() {
        assert!(matches!(
            parse_named(r"\[x,x] ^x . x"),
            Err(ParseError::DuplicateBinder { name, .. }) if name == "x"
        ));
        let err = parse_named("x\n  (y").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    line: 2,
                    column: 5,
                    ..
                }
            ),
            "{err}"
        );
        assert!(err.to_string().contains("`)`"));
        assert!(matches!(
            parse_indexed("0.1"),
            Err(ParseError::ZeroIndex { .. })
        ));
        assert!(matches!(
            parse_named("1.1"),
            Err(ParseError::WrongSide { .. })
        ));
        assert!(matches!(
            parse_indexed(r"\[x] ^x . x"),
            Err(ParseError::WrongSide { .. })
        ));
        assert!(matches!(
            parse(r"x 1.1", None),
            Err(ParseError::WrongSide { .. })
        ));
    }

    #[test]
    fn comments_and_detection() {
        let t = parse("-- a comment\n^1.1 -- trailing\n 2.1", None).unwrap();
        assert_eq!(t.side(), Side::Indexed);
        assert_eq!(t.to_string(), "^1.1 2.1");
        let t = read_term(r#"{"kind":"var","name":"x"}"#, None).unwrap();
        assert_eq!(t, AnyTerm::Named(NamedTerm::var("x")));
        assert!(read_term("x", Some(Side::Indexed)).is_err());
    }
}
