use std::fmt::{self, Display, Formatter, Write};

use crate::indexed::IndexedTerm;
use crate::named::NamedTerm;

/// Where a subterm sits, which decides whether it needs parentheses.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Free,
    Fun,
    Arg,
}

fn named(t: &NamedTerm, slot: Slot, f: &mut Formatter<'_>) -> fmt::Result {
    let wrap = match t {
        NamedTerm::Abs(..) => slot != Slot::Free,
        NamedTerm::App(..) => slot == Slot::Arg,
        _ => false,
    };
    if wrap {
        f.write_char('(')?;
    }
    match t {
        NamedTerm::Var(x) => write!(f, "{x}")?,
        NamedTerm::Match(x) => write!(f, "^{x}")?,
        NamedTerm::App(g, a) => {
            named(g, Slot::Fun, f)?;
            f.write_char(' ')?;
            named(a, Slot::Arg, f)?;
        }
        NamedTerm::Abs(theta, p, b) => {
            f.write_str("\\[")?;
            for (n, x) in theta.iter().enumerate() {
                if n > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("] ")?;
            named(p, Slot::Free, f)?;
            f.write_str(" . ")?;
            named(b, Slot::Free, f)?;
        }
    }
    if wrap {
        f.write_char(')')?;
    }
    Ok(())
}

fn indexed(t: &IndexedTerm, slot: Slot, f: &mut Formatter<'_>) -> fmt::Result {
    let wrap = match t {
        IndexedTerm::Abs(..) => slot != Slot::Free,
        IndexedTerm::App(..) => slot == Slot::Arg,
        _ => false,
    };
    if wrap {
        f.write_char('(')?;
    }
    match t {
        IndexedTerm::Var(b) => write!(f, "{b}")?,
        IndexedTerm::Match(b) => write!(f, "^{b}")?,
        IndexedTerm::App(g, a) => {
            indexed(g, Slot::Fun, f)?;
            f.write_char(' ')?;
            indexed(a, Slot::Arg, f)?;
        }
        IndexedTerm::Abs(n, p, b) => {
            write!(f, "\\{{{n}}} ")?;
            indexed(p, Slot::Free, f)?;
            f.write_str(" . ")?;
            indexed(b, Slot::Free, f)?;
        }
    }
    if wrap {
        f.write_char(')')?;
    }
    Ok(())
}

impl Display for NamedTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        named(self, Slot::Free, f)
    }
}

impl Display for IndexedTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        indexed(self, Slot::Free, f)
    }
}

/// Terms serialize as their concrete syntax.
impl serde::Serialize for NamedTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for IndexedTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
