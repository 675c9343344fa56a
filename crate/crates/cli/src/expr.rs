//! Text syntax for finitely generated abelian groups: factors `Z`, `Z^k` and
//! `Cn` joined by `x`, e.g. `C4 x C2 x Z^2`.

use std::fmt;

use homaut::{direct_product, normalize, CyclicFactor, FgAbelian};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the source text.
    pub position: usize,
    pub message: String,
}

/// A parsed expression together with its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianExpr {
    pub source: String,
    pub group: FgAbelian,
}

impl std::str::FromStr for AbelianExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(AbelianExpr {
            source: s.to_string(),
            group: parse_abelian(s)?,
        })
    }
}

impl fmt::Display for AbelianExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)
    }
}

struct Cursor {
    /// Non-whitespace characters with their offsets in the source.
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            at: 0,
            end: text.chars().count(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.position(),
            message: message.into(),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, ParseError> {
        let start = self.position();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Err(self.error(format!("expected {what}")));
        }
        let value: u64 = digits.parse().map_err(|_| ParseError {
            position: start,
            message: format!("{what} is too large"),
        })?;
        if value == 0 {
            return Err(ParseError {
                position: start,
                message: format!("{what} must be at least 1"),
            });
        }
        Ok(value)
    }

    /// Adds one factor to `out`, or its rank to `free_rank`.
    fn factor(
        &mut self,
        out: &mut Vec<CyclicFactor>,
        free_rank: &mut u32,
    ) -> Result<(), ParseError> {
        match self.peek() {
            Some('Z') => {
                self.at += 1;
                let mut rank = 1;
                if self.peek() == Some('^') {
                    self.at += 1;
                    let start = self.position();
                    rank = self.number("a rank")?;
                    if rank > u32::MAX as u64 {
                        return Err(ParseError {
                            position: start,
                            message: "rank is too large".into(),
                        });
                    }
                }
                *free_rank = free_rank
                    .checked_add(rank as u32)
                    .ok_or_else(|| self.error("total rank is too large"))?;
                Ok(())
            }
            Some('C') => {
                self.at += 1;
                let n = self.number("a cyclic order")?;
                out.push(CyclicFactor::Finite(n));
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `Z` or `C<n>`, found `{c}`"))),
            None => Err(self.error("expected `Z` or `C<n>`, found end of input")),
        }
    }
}

/// Parses an expression and returns the normalized group.
pub fn parse_abelian(text: &str) -> Result<FgAbelian, ParseError> {
    let mut cur = Cursor::new(text);
    let mut factors = Vec::new();
    let mut free_rank = 0;
    cur.factor(&mut factors, &mut free_rank)?;
    while let Some(c) = cur.peek() {
        if c != 'x' {
            return Err(cur.error(format!("expected `x` between factors, found `{c}`")));
        }
        cur.at += 1;
        cur.factor(&mut factors, &mut free_rank)?;
    }
    Ok(direct_product(
        &normalize(&factors),
        &FgAbelian::free(free_rank),
    ))
}
