//! Text grammars for presentations, block sums and pairings.
//!
//! ```text
//! presentation := int ';' fiber (',' fiber)*      e.g. "1; 8/7, 8/1, 8/1"
//! fiber        := int '/' int
//! block_sum    := '0' | block ('+' block)*         e.g. "E0(3)+A(5,2)"
//! block        := 'E0(' k ')' | 'E1(' k ')' | 'A(' int ',' k ')'
//! ```
//!
//! Presentations and pairings also accept their JSON forms. Errors carry the
//! character position of the offending token.

use std::fmt;

use thiserror::Error;

use crate::pairing::{BlockSum, GeneratorBlock, LinkingPairing};
use crate::seifert::{Fiber, SeifertPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {message}")]
pub struct ParseError {
    /// Zero-based character offset into the input.
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    /// The input with a caret under the error position.
    pub fn render(&self, input: &str) -> String {
        format!("{input}\n{}^ {}", " ".repeat(self.pos), self.message)
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
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

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(ParseError::new(self.pos, format!("expected {what}, found {x:?}"))),
            None => Err(ParseError::new(self.pos, format!("expected {what}, found end of input"))),
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn int(&mut self, what: &str) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut end = self.pos;
        if matches!(self.chars.get(end), Some('-') | Some('+')) {
            end += 1;
        }
        while self.chars.get(end).is_some_and(|c| c.is_ascii_digit()) {
            end += 1;
        }
        let text: String = self.chars[start..end].iter().collect();
        if !text.chars().any(|c| c.is_ascii_digit()) {
            let found = match self.chars.get(start) {
                Some(c) => format!("{c:?}"),
                None => "end of input".into(),
            };
            return Err(ParseError::new(start, format!("expected {what}, found {found}")));
        }
        self.pos = end;
        text.parse()
            .map_err(|_| ParseError::new(start, format!("{what} {text} is out of range")))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError::new(self.pos, format!("unexpected {c:?}"))),
        }
    }
}

fn json_error(e: serde_json::Error, src: &str) -> ParseError {
    // serde_json reports 1-based line/column; convert to a character offset
    let mut pos = 0;
    for (i, line) in src.split('\n').enumerate() {
        if i + 1 == e.line() {
            pos += e.column().saturating_sub(1);
            break;
        }
        pos += line.chars().count() + 1;
    }
    ParseError::new(pos, e.to_string())
}

/// `e; a1/b1, ...` or `{"e": .., "fibers": [[a, b], ..]}`.
pub fn parse_presentation(src: &str) -> Result<SeifertPresentation, ParseError> {
    if src.trim_start().starts_with('{') {
        return serde_json::from_str(src).map_err(|e| json_error(e, src));
    }
    let mut c = Cursor::new(src);
    let e = c.int("Euler number")?;
    c.expect(';', "';' after the Euler number")?;
    let mut fibers = Vec::new();
    loop {
        let a = c.int("fiber a")?;
        c.expect('/', "'/' in fiber a/b")?;
        let b = c.int("fiber b")?;
        fibers.push(Fiber::new(a, b));
        if c.at_end() {
            break;
        }
        c.expect(',', "',' between fibers")?;
    }
    Ok(SeifertPresentation::new(e, fibers))
}

fn block(c: &mut Cursor) -> Result<GeneratorBlock, ParseError> {
    let start = {
        c.skip_ws();
        c.pos
    };
    let k_of = |c: &mut Cursor| -> Result<u32, ParseError> {
        let p = {
            c.skip_ws();
            c.pos
        };
        let k = c.int("level k")?;
        if !(1..=62).contains(&k) {
            return Err(ParseError::new(p, format!("level k must be in 1..=62, got {k}")));
        }
        Ok(k as u32)
    };
    if c.eat_str("E0(") || c.eat_str("E1(") {
        let one = c.chars[c.pos - 2] == '1';
        let k = k_of(c)?;
        c.expect(')', "')'")?;
        return Ok(if one {
            GeneratorBlock::e1(k)
        } else {
            GeneratorBlock::e0(k)
        });
    }
    if c.eat_str("A(") {
        let npos = {
            c.skip_ws();
            c.pos
        };
        let n = c.int("odd numerator n")?;
        c.expect(',', "',' in A(n,k)")?;
        let k = k_of(c)?;
        c.expect(')', "')'")?;
        return GeneratorBlock::a(n, k).map_err(|e| ParseError::new(npos, e.to_string()));
    }
    Err(ParseError::new(start, "expected a block E0(k), E1(k) or A(n,k)"))
}

pub fn parse_block(src: &str) -> Result<GeneratorBlock, ParseError> {
    let mut c = Cursor::new(src);
    let b = block(&mut c)?;
    c.finish()?;
    Ok(b)
}

/// `E0(3)+E1(3)+A(5,2)`, or `0` for the empty sum.
pub fn parse_block_sum(src: &str) -> Result<BlockSum, ParseError> {
    let mut c = Cursor::new(src);
    if c.peek() == Some('0') {
        c.pos += 1;
        c.finish()?;
        return Ok(BlockSum::empty());
    }
    let mut blocks = vec![block(&mut c)?];
    while !c.at_end() {
        c.expect('+', "'+' between blocks")?;
        blocks.push(block(&mut c)?);
    }
    Ok(BlockSum::new(blocks))
}

/// A pairing as JSON `{"orders": .., "matrix": ..}` or as a block sum.
pub fn parse_pairing(src: &str) -> Result<LinkingPairing, ParseError> {
    if src.trim_start().starts_with('{') {
        return serde_json::from_str(src).map_err(|e| json_error(e, src));
    }
    Ok(parse_block_sum(src)?.pairing())
}

impl fmt::Display for SeifertPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self.fibers.iter().map(|x| format!("{}/{}", x.a, x.b)).collect();
        write!(f, "{}; {}", self.e, fibers.join(", "))
    }
}
