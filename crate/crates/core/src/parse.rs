//! Text grammar for ring elements and matrices.
//!
//! An element is `0` or terms `c*t^k`, `c*t`, `t^k`, `t` or `c` joined by `+`.
//! The coefficient `c` is the integer encoding of an `F_q` element (so
//! `0 <= c < q`); `k` may be negative over `F[t, t^-1]`. A matrix is a list of
//! rows, e.g. `[[1,0],[t,1]]`. Errors report 1-based columns.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, RingElem};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, offset: usize) -> Self {
        Self { src: src.as_bytes(), pos: 0, offset }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("column {}: {msg}", self.offset + self.pos + 1))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self, signed: bool) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if signed && self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn term(cur: &mut Cursor, field: &FieldSpec, flavor: Flavor) -> Result<RingElem> {
    let start = cur.pos;
    let c = match cur.peek() {
        Some(b't') => 1,
        Some(d) if d.is_ascii_digit() => {
            let c = cur.int(false)?;
            if c >= field.q() as i64 {
                cur.pos = start;
                cur.skip_ws();
                return Err(cur.err(&format!("coefficient {c} is not below q = {}", field.q())));
            }
            if !cur.eat(b'*') {
                return RingElem::monomial(&field.elem(c as u32), 0, flavor);
            }
            c
        }
        _ => return Err(cur.err("expected a coefficient or 't'")),
    };
    cur.expect(b't')?;
    let k = if cur.eat(b'^') {
        let at = cur.pos;
        let k = cur.int(true)?;
        if k < 0 && flavor == Flavor::Poly {
            cur.pos = at;
            cur.skip_ws();
            return Err(cur.err("negative exponent outside the Laurent ring"));
        }
        k
    } else {
        1
    };
    RingElem::monomial(&field.elem(c as u32), k, flavor)
}

fn elem(cur: &mut Cursor, field: &FieldSpec, flavor: Flavor) -> Result<RingElem> {
    let mut acc = term(cur, field, flavor)?;
    while cur.eat(b'+') {
        acc = &acc + &term(cur, field, flavor)?;
    }
    Ok(acc)
}

pub fn parse_elem(src: &str, field: &FieldSpec, flavor: Flavor) -> Result<RingElem> {
    let mut cur = Cursor::new(src, 0);
    let x = elem(&mut cur, field, flavor)?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(x)
}

pub fn parse_mat(src: &str, field: &FieldSpec, flavor: Flavor) -> Result<Mat> {
    let mut cur = Cursor::new(src, 0);
    cur.expect(b'[')?;
    let mut rows = Vec::new();
    loop {
        let row_start = cur.pos;
        cur.expect(b'[')?;
        let mut row = vec![elem(&mut cur, field, flavor)?];
        while cur.eat(b',') {
            row.push(elem(&mut cur, field, flavor)?);
        }
        cur.expect(b']')?;
        if let Some(first) = rows.first().map(|r: &Vec<RingElem>| r.len()) {
            if row.len() != first {
                cur.pos = row_start;
                cur.skip_ws();
                return Err(cur.err(&format!("row has {} entries, expected {first}", row.len())));
            }
        }
        rows.push(row);
        if !cur.eat(b',') {
            break;
        }
    }
    cur.expect(b']')?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    if rows.len() != rows[0].len() {
        return Err(Error::Parse(format!("matrix is {}x{}, not square", rows.len(), rows[0].len())));
    }
    Mat::from_rows(rows)
}

/// `a..b` (inclusive) or a comma list of indices.
pub fn parse_indices(src: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad index range \"{src}\" (expected a..b or a,b,c)"));
    if let Some((a, b)) = src.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a == 0 || b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let v = src.split(',').map(|s| s.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
    if v.is_empty() || v.contains(&0) {
        return Err(bad());
    }
    Ok(v)
}
