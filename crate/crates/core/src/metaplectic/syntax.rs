//! Compact words on the torus: `(a b)^6`, `a^3 b^-1`, `[a b] a [a b]^-1`.

use std::sync::Arc;

use super::MetaError;
use crate::surface::{Curve, SurfaceData};
use crate::words::{TwistLetter, TwistWord};

/// The curves `a = (1, 0)` and `b = (0, 1)`.
pub fn torus_curves() -> (Arc<Curve>, Arc<Curve>) {
    (
        Arc::new(Curve::from_class("a", vec![1, 0])),
        Arc::new(Curve::from_class("b", vec![0, 1])),
    )
}

/// Parses the compact syntax into a genus-one twist word.
///
/// A word is a sequence of items, each an atom with an optional integer power.
/// Atoms are `a`, `b`, a parenthesized word, or a conjugate `[w] x [w]^-1`
/// whose brackets must enclose the same text.
pub fn parse_compact_word(s: &str) -> Result<TwistWord, MetaError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        curves: torus_curves(),
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    curves: (Arc<Curve>, Arc<Curve>),
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> MetaError {
        MetaError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expect(&mut self, c: u8) -> Result<(), MetaError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn empty(&self) -> TwistWord {
        TwistWord::empty(SurfaceData::closed(1))
    }

    fn word(&mut self) -> Result<TwistWord, MetaError> {
        let mut w = self.empty();
        while matches!(self.peek(), Some(b'a' | b'b' | b'(' | b'[')) {
            let item = self.item()?;
            w = w.concat(&item);
        }
        Ok(w)
    }

    fn item(&mut self) -> Result<TwistWord, MetaError> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let e = self.integer()?;
        let base = if e < 0 { atom.inverse() } else { atom };
        Ok(base.pow(e.unsigned_abs() as usize))
    }

    fn integer(&mut self) -> Result<i64, MetaError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| {
                let mut e = self.err("expected an integer exponent");
                if let MetaError::Parse { pos, .. } = &mut e {
                    *pos = start;
                }
                e
            })
    }

    fn atom(&mut self) -> Result<TwistWord, MetaError> {
        match self.peek() {
            Some(c @ (b'a' | b'b')) => {
                self.pos += 1;
                let curve = if c == b'a' { &self.curves.0 } else { &self.curves.1 };
                let letter = TwistLetter::new(Arc::clone(curve), 1).expect("nonzero");
                Ok(TwistWord::new(SurfaceData::closed(1), vec![letter]).expect("genus one"))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let open = self.pos;
                let phi = self.word()?;
                let phi_text = self.src[open..self.pos].to_vec();
                self.expect(b']')?;
                let body = self.item()?;
                self.expect(b'[')?;
                let close = self.pos;
                self.word()?;
                let close_text = self.src[close..self.pos].to_vec();
                if phi_text.trim_ascii() != close_text.trim_ascii() {
                    return Err(self.err("conjugator brackets differ"));
                }
                self.expect(b']')?;
                self.expect(b'^')?;
                if self.integer()? != -1 {
                    return Err(self.err("closing conjugator must carry the power -1"));
                }
                Ok(body.conjugate_by(&phi))
            }
            _ => Err(self.err("expected `a`, `b`, `(` or `[`")),
        }
    }
}
