//! Recursive-descent parser for the textual expression syntax.
//!
//! ```text
//! expr := "FINITE" "{" natlist? "}" | "AP" "(" nat "," nat ")"
//!       | "TILING" "(" nat "," nat "," "{" natlist? "}" ")" | "ANTITILE" "(" nat "," nat ")"
//!       | "UNION" "(" exprlist ")" | "INTER" "(" exprlist ")"
//!       | "DIFF" "(" expr "," expr ")" | "SHIFT" "(" expr "," nat ")"
//! ```
//!
//! Whitespace between tokens is ignored and keywords are case-insensitive.

use super::{AntiTileParams, FiniteSet, Progression, SetExpr, Tiling};
use crate::error::{Error, Result};

/// Parses `text` into an expression.
pub fn parse_set_expr(text: &str) -> Result<SetExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.err(format!("expected '{}', found '{}'", c as char, b as char))),
            None => Err(self.err(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn keyword(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an expression keyword"));
        }
        let word = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_ascii_uppercase();
        Ok((start, word))
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits
            .parse::<u64>()
            .map_err(|_| Error::Range(format!("number {digits} at byte {start} does not fit in 64 bits")))
    }

    /// `"{" natlist? "}"`
    fn nat_set(&mut self) -> Result<Vec<u64>> {
        self.expect(b'{')?;
        let mut out = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or '}' in number list")),
            }
        }
    }

    fn expr_list(&mut self) -> Result<Vec<SetExpr>> {
        let mut out = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<SetExpr> {
        let (at, kw) = self.keyword()?;
        let ranged = |e: Error| match e {
            Error::Range(msg) => Error::Range(format!("{msg} (in {kw} at byte {at})")),
            other => other,
        };
        match kw.as_str() {
            "FINITE" => Ok(SetExpr::Finite(FiniteSet::from_unsorted(self.nat_set()?))),
            "AP" => {
                self.expect(b'(')?;
                let a = self.nat()?;
                self.expect(b',')?;
                let b = self.nat()?;
                self.expect(b')')?;
                Progression::new(a, b).map(SetExpr::Ap).map_err(ranged)
            }
            "TILING" => {
                self.expect(b'(')?;
                let r = self.nat()?;
                self.expect(b',')?;
                let b = self.nat()?;
                self.expect(b',')?;
                let t = self.nat_set()?;
                self.expect(b')')?;
                Tiling::new(r, b, t).map(SetExpr::Tiling).map_err(ranged)
            }
            "ANTITILE" => {
                self.expect(b'(')?;
                let r = self.nat()?;
                self.expect(b',')?;
                let s = self.nat()?;
                self.expect(b')')?;
                let order = u32::try_from(r)
                    .map_err(|_| Error::Range(format!("anti-tile order {r} is too large")))?;
                AntiTileParams::new(order, s)
                    .map(SetExpr::AntiTile)
                    .map_err(ranged)
            }
            "UNION" | "INTER" => {
                self.expect(b'(')?;
                let parts = self.expr_list()?;
                self.expect(b')')?;
                Ok(if kw == "UNION" {
                    SetExpr::Union(parts)
                } else {
                    SetExpr::Intersect(parts)
                })
            }
            "DIFF" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(SetExpr::diff(a, b))
            }
            "SHIFT" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b',')?;
                let off = self.nat()?;
                self.expect(b')')?;
                Ok(SetExpr::shift(inner, off))
            }
            _ => Err(Error::Syntax {
                pos: at,
                msg: format!("unknown keyword '{kw}'"),
            }),
        }
    }
}
