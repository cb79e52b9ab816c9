//! ASCII concrete syntax.
//!
//! Precedence, tightest first: unary operators (`~ C D A O <> [] [!ψ] [?ψ]`),
//! `&`, `|`, `->` (right associative), `<->`. `&`, `|` and `<->` associate to
//! the left.

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: found {found}, expected one of {}", .expected.join(", "))]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Atom(String),
    Not,
    Con,
    NonCon,
    Acc,
    Ess,
    Dia,
    Nec,
    AnnOpen,
    WhetherOpen,
    RBracket,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Atom(name) => return write!(f, "atom `{name}`"),
            Tok::Not => "`~`",
            Tok::Con => "`C`",
            Tok::NonCon => "`D`",
            Tok::Acc => "`A`",
            Tok::Ess => "`O`",
            Tok::Dia => "`<>`",
            Tok::Nec => "`[]`",
            Tok::AnnOpen => "`[!`",
            Tok::WhetherOpen => "`[?`",
            Tok::RBracket => "`]`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Implies => "`->`",
            Tok::Iff => "`<->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

const FORMULA_START: &[&str] = &[
    "atom", "true", "false", "~", "C", "D", "A", "O", "<>", "[]", "[!", "[?", "(",
];
const BINARY: &[&str] = &["&", "|", "->", "<->"];

/// Whether `name` is a legal atom: a lowercase ASCII letter followed by
/// letters, digits or underscores, and not a keyword.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "true"
        && name != "false"
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, found: String, expected: &[&str]| ParseError {
        position: pos,
        found,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'C' => {
                i += 1;
                Tok::Con
            }
            b'D' => {
                i += 1;
                Tok::NonCon
            }
            b'A' => {
                i += 1;
                Tok::Acc
            }
            b'O' => {
                i += 1;
                Tok::Ess
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b']' => {
                i += 1;
                Tok::RBracket
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Dia
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 3;
                Tok::Iff
            }
            b'[' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                match bytes.get(j) {
                    Some(b']') => {
                        i = j + 1;
                        Tok::Nec
                    }
                    Some(b'!') => {
                        i = j + 1;
                        Tok::AnnOpen
                    }
                    Some(b'?') => {
                        i = j + 1;
                        Tok::WhetherOpen
                    }
                    _ => {
                        return Err(err(j, "`[`".into(), &["[]", "[!", "[?"]));
                    }
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let word = &text[i..j];
                i = j;
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Atom(word.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(err(i, format!("`{ch}`"), FORMULA_START));
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Closing tokens acceptable after a complete subformula at this point.
    closers: Vec<&'static str>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            position: *offset,
            found: tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn after_formula_error(&self) -> ParseError {
        let mut exp: Vec<&str> = BINARY.to_vec();
        match self.closers.last() {
            Some(c) => exp.push(c),
            None => exp.push("end of input"),
        }
        self.error(&exp)
    }

    fn expect_closer(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.after_formula_error())
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let right = self.implies()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implies()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let tok = self.peek().clone();
        let f = match tok {
            Tok::True => {
                self.bump();
                Formula::Top
            }
            Tok::False => {
                self.bump();
                Formula::Bot
            }
            Tok::Atom(name) => {
                self.bump();
                Formula::Atom(name)
            }
            Tok::Not => {
                self.bump();
                Formula::not(self.unary()?)
            }
            Tok::Con => {
                self.bump();
                Formula::con(self.unary()?)
            }
            Tok::NonCon => {
                self.bump();
                Formula::noncon(self.unary()?)
            }
            Tok::Acc => {
                self.bump();
                Formula::acc(self.unary()?)
            }
            Tok::Ess => {
                self.bump();
                Formula::ess(self.unary()?)
            }
            Tok::Dia => {
                self.bump();
                Formula::diamond(self.unary()?)
            }
            Tok::Nec => {
                self.bump();
                Formula::boxed(self.unary()?)
            }
            Tok::AnnOpen | Tok::WhetherOpen => {
                self.bump();
                self.closers.push("]");
                let announced = self.iff()?;
                self.expect_closer(Tok::RBracket)?;
                self.closers.pop();
                let body = self.unary()?;
                if tok == Tok::AnnOpen {
                    Formula::ann(announced, body)
                } else {
                    Formula::ann_whether(announced, body)
                }
            }
            Tok::LParen => {
                self.bump();
                self.closers.push(")");
                let inner = self.iff()?;
                self.expect_closer(Tok::RParen)?;
                self.closers.pop();
                inner
            }
            _ => return Err(self.error(FORMULA_START)),
        };
        Ok(f)
    }
}

/// Parses a formula written in the ASCII grammar.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        closers: Vec::new(),
    };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.after_formula_error());
    }
    Ok(f)
}
