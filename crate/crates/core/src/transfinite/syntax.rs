//! Literal syntax for transfinite lists.
//!
//! ```text
//! list    := segment ('.' segment)*
//! segment := word | word '~' tailN | tailN | 'rep' '(' nelem (',' nelem)* ')'
//! nelem   := (word '~')? tailN
//! tailN   := 'N' '(' nat ')'
//! word    := '[' (nat (',' nat)*)? ']'
//! ```
//!
//! Segments are concatenated, so `[1].N(0)` and `[1]~N(0)` denote the same list.

use thiserror::Error;

use super::{Block, NElem, Nat, TransfiniteList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("list literal error at offset {pos}: {msg}")]
pub struct LiteralError {
    pub pos: usize,
    pub msg: String,
}

pub(super) fn parse_literal(text: &str) -> Result<TransfiniteList, LiteralError> {
    let (list, end) = parse_literal_at(text.as_bytes(), 0)?;
    let rest = skip_ws(text.as_bytes(), end);
    if rest < text.len() {
        return Err(LiteralError { pos: rest, msg: "unexpected trailing input".into() });
    }
    Ok(list)
}

/// Parses a literal starting at byte offset `pos` and returns it together with
/// the offset just past it. A `.` is only consumed when a segment follows it.
pub fn parse_literal_at(src: &[u8], pos: usize) -> Result<(TransfiniteList, usize), LiteralError> {
    let mut c = Cursor { src, pos };
    let mut acc = c.segment()?;
    loop {
        let save = c.pos;
        if c.eat(b'.') && c.at_segment_start() {
            let next = c.segment()?;
            acc = acc.concat(&next);
        } else {
            c.pos = save;
            return Ok((acc, c.pos));
        }
    }
}

/// True when a list literal begins at `pos` (after whitespace).
pub(crate) fn starts_literal(src: &[u8], pos: usize) -> bool {
    Cursor { src, pos }.at_segment_start()
}

fn skip_ws(src: &[u8], mut pos: usize) -> usize {
    while src.get(pos).is_some_and(u8::is_ascii_whitespace) {
        pos += 1;
    }
    pos
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LiteralError> {
        Err(LiteralError { pos: self.pos, msg: msg.to_string() })
    }

    fn peek(&mut self) -> Option<u8> {
        self.pos = skip_ws(self.src, self.pos);
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), LiteralError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", b as char))
        }
    }

    fn keyword_then_paren(&mut self, kw: &str) -> bool {
        let save = self.pos;
        self.pos = skip_ws(self.src, self.pos);
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            if self.peek() == Some(b'(') {
                self.pos = save;
                return true;
            }
        }
        self.pos = save;
        false
    }

    fn at_segment_start(&mut self) -> bool {
        let save = self.pos;
        let res = self.peek() == Some(b'[')
            || self.keyword_then_paren("N")
            || self.keyword_then_paren("rep");
        self.pos = save;
        res
    }

    fn natural(&mut self) -> Result<Nat, LiteralError> {
        self.pos = skip_ws(self.src, self.pos);
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| LiteralError { pos: start, msg: "number too large".into() })
    }

    fn word(&mut self) -> Result<Vec<Nat>, LiteralError> {
        self.expect(b'[')?;
        let mut w = Vec::new();
        if self.eat(b']') {
            return Ok(w);
        }
        loop {
            w.push(self.natural()?);
            if self.eat(b']') {
                return Ok(w);
            }
            self.expect(b',')?;
        }
    }

    fn tail_n(&mut self) -> Result<Nat, LiteralError> {
        self.pos = skip_ws(self.src, self.pos);
        if self.src.get(self.pos) != Some(&b'N') {
            return self.err("expected N(k)");
        }
        self.pos += 1;
        self.expect(b'(')?;
        let k = self.natural()?;
        self.expect(b')')?;
        Ok(k)
    }

    fn nelem(&mut self) -> Result<NElem, LiteralError> {
        if self.peek() == Some(b'[') {
            let w = self.word()?;
            self.expect(b'~')?;
            let k = self.tail_n()?;
            Ok(NElem::new(w, k))
        } else {
            Ok(NElem::tail(self.tail_n()?))
        }
    }

    fn segment(&mut self) -> Result<TransfiniteList, LiteralError> {
        if self.keyword_then_paren("rep") {
            self.pos = skip_ws(self.src, self.pos) + 3;
            self.expect(b'(')?;
            let mut cycle = vec![self.nelem()?];
            while self.eat(b',') {
                cycle.push(self.nelem()?);
            }
            self.expect(b')')?;
            return TransfiniteList::from_parts(vec![Block::Cycle(cycle)], Vec::new())
                .map_err(|e| LiteralError { pos: self.pos, msg: e.to_string() });
        }
        match self.peek() {
            Some(b'[') => {
                let w = self.word()?;
                if self.eat(b'~') {
                    let k = self.tail_n()?;
                    Ok(TransfiniteList::from_nelem(NElem::new(w, k)))
                } else {
                    Ok(TransfiniteList::word(w))
                }
            }
            Some(b'N') => Ok(TransfiniteList::from_nelem(NElem::tail(self.tail_n()?))),
            Some(_) => self.err("expected a list literal ('[', 'N(' or 'rep(')"),
            None => self.err("unexpected end of input"),
        }
    }
}
