//! Recursive-descent parser for identities.
//!
//! ```text
//! identity := term "=" term
//! term     := atom { op atom }        (one precedence level, left-assoc)
//! atom     := var | "(" term ")" | "[" term "]" | "{" term "}"
//! op       := "*" | "\" | "/"
//! var      := a single lowercase ASCII letter
//! ```
//!
//! Juxtaposition is rejected. Positions in errors are 0-based character
//! offsets.

use super::term::{BinOp, Identity, Term};
use crate::error::{Error, Result};

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        loop {
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('\\') => BinOp::LeftDiv,
                Some('/') => BinOp::RightDiv,
                Some(c) if c.is_ascii_lowercase() || "([{".contains(c) => {
                    return self.error(
                        self.pos,
                        format!("expected operator before '{c}' (juxtaposition is not allowed)"),
                    );
                }
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Term::op(op, acc, rhs);
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                if let Some(&next) = self.chars.get(self.pos) {
                    if next.is_ascii_alphanumeric() {
                        return self.error(self.pos, "variable names are single lowercase letters");
                    }
                }
                Ok(Term::Var(c))
            }
            Some(open @ ('(' | '[' | '{')) => {
                let open_at = self.pos;
                self.pos += 1;
                let inner = self.term()?;
                let close = match open {
                    '(' => ')',
                    '[' => ']',
                    _ => '}',
                };
                match self.peek() {
                    Some(c) if c == close => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => self.error(
                        self.pos,
                        format!("expected '{close}' to match '{open}' at {open_at}, found '{c}'"),
                    ),
                    None => self.error(self.pos, format!("unclosed '{open}' opened at {open_at}")),
                }
            }
            Some(c) => self.error(self.pos, format!("unexpected character '{c}'")),
            None => self.error(start.max(self.pos), "unexpected end of input"),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let t = p.term()?;
    match p.peek() {
        None => Ok(t),
        Some(c) => p.error(p.pos, format!("unexpected '{c}' after term")),
    }
}

/// Parses `term = term`. All three bracket shapes group identically.
pub fn parse_identity(text: &str) -> Result<Identity> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let lhs = p.term()?;
    match p.peek() {
        Some('=') => p.pos += 1,
        Some(c) => return p.error(p.pos, format!("expected '=', found '{c}'")),
        None => return p.error(p.pos, "expected '='"),
    }
    let rhs = p.term()?;
    match p.peek() {
        None => Ok(Identity::new(lhs, rhs)),
        Some(c) => p.error(p.pos, format!("unexpected '{c}' after identity")),
    }
}
