use std::collections::HashSet;

use super::lexer::{tokenize, Pos, Spanned, Tok};
use super::{AnyTerm, ParseError, Side};
use crate::indexed::{BIndex, IndexedTerm};
use crate::named::{NamedTerm, Symbol};

enum Raw {
    Var(String),
    Match(String),
    VarIdx(BIndex),
    MatchIdx(BIndex),
    App(Box<Raw>, Box<Raw>),
    NamedAbs(Vec<String>, Box<Raw>, Box<Raw>),
    IndexedAbs(usize, Box<Raw>, Box<Raw>),
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    side: Option<Side>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let pos = self.pos();
        ParseError::Syntax {
            line: pos.line,
            column: pos.column,
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&tok.to_string()]))
        }
    }

    fn atom_expectations(&self) -> Vec<&'static str> {
        match self.side {
            Some(Side::Named) => vec!["symbol", "`^`", "`(`", "`\\[`"],
            Some(Side::Indexed) => vec!["index", "`^`", "`(`", "`\\{`"],
            None => vec!["symbol", "index", "`^`", "`(`", "`\\[`", "`\\{`"],
        }
    }

    /// Locks the side on the first side-specific token, rejecting mismatches.
    fn claim(&mut self, side: Side) -> Result<(), ParseError> {
        match self.side {
            None => {
                self.side = Some(side);
                Ok(())
            }
            Some(s) if s == side => Ok(()),
            Some(s) => {
                let pos = self.pos();
                Err(ParseError::WrongSide {
                    line: pos.line,
                    column: pos.column,
                    found: self.peek().to_string(),
                    side: s,
                })
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Index(..)
                | Tok::Caret
                | Tok::LParen
                | Tok::NamedBinder
                | Tok::IndexedBinder
        )
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        if !self.starts_atom() {
            let exp = self.atom_expectations();
            return Err(self.unexpected(&exp));
        }
        let mut acc = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            acc = Raw::App(Box::new(acc), Box::new(arg));
        }
        Ok(acc)
    }

    fn index(&mut self, i: usize, j: usize) -> Result<BIndex, ParseError> {
        BIndex::new(i, j).ok_or_else(|| {
            let pos = self.pos();
            ParseError::ZeroIndex {
                line: pos.line,
                column: pos.column,
                primary: i,
                secondary: j,
            }
        })
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.claim(Side::Named)?;
                self.bump();
                Ok(Raw::Var(name))
            }
            Tok::Index(i, j) => {
                self.claim(Side::Indexed)?;
                let b = self.index(i, j)?;
                self.bump();
                Ok(Raw::VarIdx(b))
            }
            Tok::Caret => {
                self.bump();
                match self.peek().clone() {
                    Tok::Ident(name) => {
                        self.claim(Side::Named)?;
                        self.bump();
                        Ok(Raw::Match(name))
                    }
                    Tok::Index(i, j) => {
                        self.claim(Side::Indexed)?;
                        let b = self.index(i, j)?;
                        self.bump();
                        Ok(Raw::MatchIdx(b))
                    }
                    _ => Err(self.unexpected(match self.side {
                        Some(Side::Named) => &["symbol"],
                        Some(Side::Indexed) => &["index"],
                        None => &["symbol", "index"],
                    })),
                }
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::NamedBinder => {
                self.claim(Side::Named)?;
                self.bump();
                let mut theta: Vec<String> = Vec::new();
                let mut seen = HashSet::new();
                loop {
                    let pos = self.pos();
                    match self.peek().clone() {
                        Tok::Ident(name) => {
                            if !seen.insert(name.clone()) {
                                return Err(ParseError::DuplicateBinder {
                                    line: pos.line,
                                    column: pos.column,
                                    name,
                                });
                            }
                            self.bump();
                            theta.push(name);
                        }
                        Tok::RBracket if theta.is_empty() => {}
                        _ => {
                            let exp: &[&str] = if theta.is_empty() {
                                &["symbol", "`]`"]
                            } else {
                                &["symbol"]
                            };
                            return Err(self.unexpected(exp));
                        }
                    }
                    match self.peek() {
                        Tok::Comma if !theta.is_empty() => {
                            self.bump();
                        }
                        Tok::RBracket => {
                            self.bump();
                            break;
                        }
                        _ => return Err(self.unexpected(&["`,`", "`]`"])),
                    }
                }
                let pattern = self.term()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Raw::NamedAbs(theta, Box::new(pattern), Box::new(body)))
            }
            Tok::IndexedBinder => {
                self.claim(Side::Indexed)?;
                self.bump();
                let n = match self.bump() {
                    Tok::Int(n) => n,
                    _ => {
                        self.at -= 1;
                        return Err(self.unexpected(&["arity"]));
                    }
                };
                self.expect(Tok::RBrace)?;
                let pattern = self.term()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Raw::IndexedAbs(n, Box::new(pattern), Box::new(body)))
            }
            _ => {
                let exp = self.atom_expectations();
                Err(self.unexpected(&exp))
            }
        }
    }
}

fn to_named(raw: Raw) -> NamedTerm {
    let symbol = |s: String| Symbol::new(&s).expect("lexer only yields valid symbols");
    match raw {
        Raw::Var(s) => NamedTerm::Var(symbol(s)),
        Raw::Match(s) => NamedTerm::Match(symbol(s)),
        Raw::App(f, a) => NamedTerm::app(to_named(*f), to_named(*a)),
        Raw::NamedAbs(theta, p, b) => NamedTerm::Abs(
            theta.into_iter().map(symbol).collect(),
            Box::new(to_named(*p)),
            Box::new(to_named(*b)),
        ),
        _ => unreachable!("side is locked during parsing"),
    }
}

fn to_indexed(raw: Raw) -> IndexedTerm {
    match raw {
        Raw::VarIdx(b) => IndexedTerm::Var(b),
        Raw::MatchIdx(b) => IndexedTerm::Match(b),
        Raw::App(f, a) => IndexedTerm::app(to_indexed(*f), to_indexed(*a)),
        Raw::IndexedAbs(n, p, b) => IndexedTerm::abs(n, to_indexed(*p), to_indexed(*b)),
        _ => unreachable!("side is locked during parsing"),
    }
}

/// Parses a term; with `side == None` the side is inferred from the first
/// side-specific token.
pub fn parse(src: &str, side: Option<Side>) -> Result<AnyTerm, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        side,
    };
    let raw = p.term()?;
    if *p.peek() != Tok::Eof {
        let mut exp = p.atom_expectations();
        exp.push("end of input");
        return Err(p.unexpected(&exp));
    }
    Ok(
        match p
            .side
            .expect("a term contains at least one side-specific token")
        {
            Side::Named => AnyTerm::Named(to_named(raw)),
            Side::Indexed => AnyTerm::Indexed(to_indexed(raw)),
        },
    )
}

pub fn parse_named(src: &str) -> Result<NamedTerm, ParseError> {
    match parse(src, Some(Side::Named))? {
        AnyTerm::Named(t) => Ok(t),
        AnyTerm::Indexed(_) => unreachable!(),
    }
}

pub fn parse_indexed(src: &str) -> Result<IndexedTerm, ParseError> {
    match parse(src, Some(Side::Indexed))? {
        AnyTerm::Indexed(t) => Ok(t),
        AnyTerm::Named(_) => unreachable!(),
    }
}
