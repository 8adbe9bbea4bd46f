//! Plain-text Cayley tables: `#` comments, the order on the first remaining
//! line, then one row per line.

use std::fmt::{self, Write as _};

use qpl_core::{Error, Perm, Quasigroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A whitespace-separated token with its 1-based position.
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<usize, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected a non-negative integer, found '{}'", self.text)))
    }
}

/// Non-comment lines, each split into tokens.
fn lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|(i, l)| {
            let mut tokens = Vec::new();
            let mut start = None;
            for (col, (byte, ch)) in l
                .char_indices()
                .enumerate()
                .chain([(l.chars().count(), (l.len(), ' '))])
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some((col, byte)),
                    (true, Some((c, b))) => {
                        tokens.push(Token {
                            text: &l[b..byte],
                            line: i + 1,
                            column: c + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (i + 1, tokens)
        })
        .collect()
}

fn end_of_input(text: &str) -> ParseError {
    ParseError {
        line: text.lines().count() + 1,
        column: 1,
        message: String::new(),
    }
}

pub fn parse_table(text: &str) -> Result<Quasigroup, ParseError> {
    let lines = lines(text);
    let mut it = lines.iter();
    let Some((_, header)) = it.next() else {
        return Err(ParseError {
            message: "missing order line".into(),
            ..end_of_input(text)
        });
    };
    if header.len() > 1 {
        return Err(header[1].error("order line must hold a single integer"));
    }
    let n = header[0].number()?;
    if n == 0 {
        return Err(header[0].error("order must be at least 1"));
    }
    let mut table = Vec::with_capacity(n * n);
    let mut positions = Vec::with_capacity(n * n);
    for r in 0..n {
        let Some((line, row)) = it.next() else {
            return Err(ParseError {
                message: format!("expected {n} rows, found {r}"),
                ..end_of_input(text)
            });
        };
        if row.len() != n {
            let column = row.get(n).map_or_else(
                || row.last().map_or(1, |t| t.column + t.text.chars().count()),
                |t| t.column,
            );
            return Err(ParseError {
                line: *line,
                column,
                message: format!("row {r} has {} entries, expected {n}", row.len()),
            });
        }
        for tok in row {
            let v = tok.number()?;
            if v >= n {
                return Err(tok.error(format!("element {v} out of range for order {n}")));
            }
            table.push(v);
            positions.push((tok.line, tok.column));
        }
    }
    if let Some((_, extra)) = it.next() {
        return Err(extra[0].error(format!("unexpected content after {n} rows")));
    }
    Quasigroup::new(n, table.clone()).map_err(|e| {
        // point at the second occurrence of the repeated symbol
        let at = |cell: usize| positions[cell];
        let (line, column, message) = match e {
            Error::RowNotPermutation { row, symbol } => {
                let c = (0..n).filter(|&c| table[row * n + c] == symbol).nth(1).unwrap_or(0);
                let (l, col) = at(row * n + c);
                (l, col, format!("symbol {symbol} repeated in row {row}"))
            }
            Error::ColumnNotPermutation { column, symbol } => {
                let r = (0..n).filter(|&r| table[r * n + column] == symbol).nth(1).unwrap_or(0);
                let (l, col) = at(r * n + column);
                (l, col, format!("symbol {symbol} repeated in column {column}"))
            }
            other => (positions[0].0, 1, other.to_string()),
        };
        ParseError { line, column, message }
    })
}

/// Canonical form: the order, then rows joined by single spaces.
pub fn write_table(q: &Quasigroup) -> String {
    let mut out = format!("{}\n", q.order());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).expect("writing to a String");
    }
    out
}

/// The degree on the first line, then one permutation per line in image
/// notation.
pub fn parse_perms(text: &str) -> Result<Vec<Perm>, ParseError> {
    let lines = lines(text);
    let mut it = lines.iter();
    let Some((_, header)) = it.next() else {
        return Err(ParseError {
            message: "missing degree line".into(),
            ..end_of_input(text)
        });
    };
    if header.len() > 1 {
        return Err(header[1].error("degree line must hold a single integer"));
    }
    let n = header[0].number()?;
    it.map(|(line, toks)| {
        if toks.len() != n {
            return Err(ParseError {
                line: *line,
                column: 1,
                message: format!("expected {n} images, found {}", toks.len()),
            });
        }
        let images = toks.iter().map(Token::number).collect::<Result<Vec<_>, _>>()?;
        Perm::from_images(images).map_err(|e| ParseError {
            line: *line,
            column: 1,
            message: e.to_string(),
        })
    })
    .collect()
}
