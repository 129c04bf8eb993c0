use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    NamedBinder,   // \[
    IndexedBinder, // \{
    RBracket,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
    Caret,
    Ident(String),
    Int(usize),
    Index(usize, usize),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::NamedBinder => f.write_str("`\\[`"),
            Tok::IndexedBinder => f.write_str("`\\{`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Ident(s) => write!(f, "symbol `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Index(i, j) => write!(f, "index `{i}.{j}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            continue;
        }
        let simple = match c {
            ']' => Some(Tok::RBracket),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            advance(&mut i, &mut line, &mut col, c);
            out.push(Spanned { tok, pos });
            continue;
        }
        if c == '\\' {
            let tok = match chars.get(i + 1) {
                Some('[') => Tok::NamedBinder,
                Some('{') => Tok::IndexedBinder,
                _ => {
                    return Err(ParseError::Syntax {
                        line,
                        column: col,
                        found: "`\\`".into(),
                        expected: vec!["`\\[`".into(), "`\\{`".into()],
                    })
                }
            };
            advance(&mut i, &mut line, &mut col, c);
            {
                let c = chars[i];
                advance(&mut i, &mut line, &mut col, c);
            }
            out.push(Spanned { tok, pos });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let first = read_int(&chars, &mut i, &mut col, pos)?;
            let tok = if chars.get(i) == Some(&'.')
                && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())
            {
                i += 1;
                col += 1;
                let second = read_int(&chars, &mut i, &mut col, pos)?;
                Tok::Index(first, second)
            } else {
                Tok::Int(first)
            };
            out.push(Spanned { tok, pos });
            continue;
        }
        return Err(ParseError::Syntax {
            line,
            column: col,
            found: format!("`{c}`"),
            expected: vec!["a term".into()],
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        pos: Pos { line, column: col },
    });
    Ok(out)
}

fn read_int(chars: &[char], i: &mut usize, col: &mut usize, pos: Pos) -> Result<usize, ParseError> {
    let start = *i;
    while *i < chars.len() && chars[*i].is_ascii_digit() {
        *i += 1;
        *col += 1;
    }
    let digits: String = chars[start..*i].iter().collect();
    digits.parse().map_err(|_| ParseError::Syntax {
        line: pos.line,
        column: pos.column,
        found: format!("`{digits}`"),
        expected: vec!["an integer that fits in memory".into()],
    })
}
