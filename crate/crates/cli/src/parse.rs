//! Text forms of field elements, Laurent series in `t` and polynomials in
//! `X` over `F_q((t))`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int | 'a' ['^' int] | 't' ['^' int] | 'X' ['^' int]
//!         | 'O(t^' int ')' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. `a` is the generator of `F_q` (only when `m > 1`).

use std::collections::BTreeMap;
use std::sync::Arc;

use raminsep_core::localpoly::KPoly;
use raminsep_core::{Fe, FieldCtx, Series, EXACT};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{sym}' at offset {pos}")]
    UnknownSymbol { pos: usize, sym: String },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownSymbol { pos, .. } => *pos,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Polynomial in `X` with series coefficients, keyed by the power of `X`.
#[derive(Clone, Debug)]
struct Value(BTreeMap<u32, Series>);

struct Parser<'a> {
    field: &'a Arc<FieldCtx>,
    src: &'a [u8],
    pos: usize,
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
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

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            syntax(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return syntax(digits.min(self.src.len()).max(start), "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
        let v: i64 = text.parse().or_else(|_| syntax(digits, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> PResult<i64> {
        if self.eat(b'^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn constant(&self, c: Fe) -> Value {
        Value(BTreeMap::from([(0, Series::monomial(self.field, 't', c, 0, EXACT))]))
    }

    fn expr(&mut self) -> PResult<Value> {
        let mut acc = Value(BTreeMap::new());
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let term = self.term()?;
            acc = if sign < 0 { add(&acc, &neg(&term)) } else { add(&acc, &term) };
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Value> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Value> {
        let field = self.field;
        let Some(c) = self.peek() else {
            return syntax(self.pos, "unexpected end of input");
        };
        let start = self.pos;
        match c {
            b'0'..=b'9' => {
                let v = self.int()?;
                Ok(self.constant(field.from_int(v)))
            }
            b'(' => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            b'a' => {
                self.pos += 1;
                if field.m() == 1 {
                    return Err(ParseError::UnknownSymbol { pos: start, sym: "a".into() });
                }
                let e = self.exponent()?;
                if e < 0 {
                    return syntax(start, "negative power of a");
                }
                Ok(self.constant(field.pow(field.generator(), e)))
            }
            b't' => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Value(BTreeMap::from([(0, Series::monomial(field, 't', Fe::ONE, e, EXACT))])))
            }
            b'X' => {
                self.pos += 1;
                let e = self.exponent()?;
                if e < 0 {
                    return syntax(start, "negative power of X");
                }
                Ok(Value(BTreeMap::from([(e as u32, Series::one(field, 't', EXACT))])))
            }
            b'O' => {
                self.pos += 1;
                self.expect(b'(')?;
                if !self.eat(b't') {
                    return syntax(self.pos, "expected 't'");
                }
                self.expect(b'^')?;
                let n = self.int()?;
                self.expect(b')')?;
                Ok(Value(BTreeMap::from([(0, Series::zero(field, 't', n))])))
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[start..]).ok().and_then(|s| s.chars().next());
                match ch {
                    Some(ch) if ch.is_alphabetic() => {
                        Err(ParseError::UnknownSymbol { pos: start, sym: ch.to_string() })
                    }
                    _ => syntax(start, format!("unexpected '{}'", ch.unwrap_or('?'))),
                }
            }
        }
    }
}

fn add(x: &Value, y: &Value) -> Value {
    let mut out = x.0.clone();
    for (&e, s) in &y.0 {
        let v = match out.get(&e) {
            Some(cur) => cur.add(s),
            None => s.clone(),
        };
        out.insert(e, v);
    }
    Value(out)
}

fn neg(x: &Value) -> Value {
    Value(x.0.iter().map(|(&e, s)| (e, s.neg())).collect())
}

fn mul(x: &Value, y: &Value) -> Value {
    let mut out = Value(BTreeMap::new());
    for (&ex, sx) in &x.0 {
        for (&ey, sy) in &y.0 {
            out = add(&out, &Value(BTreeMap::from([(ex + ey, sx.mul(sy))])));
        }
    }
    out
}

fn parse_value(field: &Arc<FieldCtx>, text: &str) -> PResult<Value> {
    let mut p = Parser { field, src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return syntax(p.pos, "trailing input");
    }
    Ok(v)
}

fn no_x(v: &Value, what: &str) -> PResult<Series> {
    if v.0.keys().any(|&e| e > 0) {
        return syntax(0, format!("{what} may not contain X"));
    }
    Ok(v.0.get(&0).cloned().unwrap_or_else(|| Series::zero(&v.any_field(), 't', EXACT)))
}

impl Value {
    fn any_field(&self) -> Arc<FieldCtx> {
        self.0.values().next().expect("values are never empty after parsing").field().clone()
    }
}

/// Parses a Laurent series in `t`.
pub fn parse_series(field: &Arc<FieldCtx>, text: &str) -> PResult<Series> {
    let v = parse_value(field, text)?;
    if v.0.is_empty() {
        return Ok(Series::zero(field, 't', EXACT));
    }
    no_x(&v, "a series")
}

/// Parses an element of `F_q`.
pub fn parse_fe(field: &Arc<FieldCtx>, text: &str) -> PResult<Fe> {
    let s = parse_series(field, text)?;
    if !s.is_exact() || s.terms().any(|(e, _)| e != 0) {
        return syntax(0, "a field element may not contain t");
    }
    Ok(s.coeff(0))
}

/// Parses a polynomial in `X` with coefficients in `F_q((t))`.
pub fn parse_poly(field: &Arc<FieldCtx>, text: &str) -> PResult<KPoly> {
    let v = parse_value(field, text)?;
    let deg = v.0.keys().max().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![Series::zero(field, 't', EXACT); deg + 1];
    for (e, s) in v.0 {
        coeffs[e as usize] = s;
    }
    Ok(KPoly::new(field, 't', coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, m: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    #[test]
    fn offsets() {
        let k = f(2, 1);
        assert_eq!(parse_series(&k, "t^").unwrap_err().pos(), 2);
        assert!(matches!(parse_series(&k, "t + y"), Err(ParseError::UnknownSymbol { pos: 4, .. })));
        assert!(matches!(parse_series(&k, "a*t"), Err(ParseError::UnknownSymbol { pos: 0, .. })));
    }

    #[test]
    fn series_and_fe() {
        let k = f(2, 2);
        let s = parse_series(&k, "t^-1 + (a+1)*t^-3").unwrap();
        assert_eq!(s.terms().count(), 2);
        assert_eq!(s.format(), "(a+1)*t^-3 + t^-1");
        assert_eq!(parse_fe(&k, "a^2").unwrap(), k.add(k.generator(), Fe::ONE));
        let o = parse_series(&k, " 1 + t + O(t^5)").unwrap();
        assert_eq!(o.precision(), 5);
    }

    #[test]
    fn poly() {
        let k = f(2, 1);
        let g = parse_poly(&k, "X^2+t*X+t").unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.format(), "X^2 + t*X + t");
        let h = parse_poly(&k, "X^2 + (t + O(t^3))*X + (t + O(t^3))").unwrap();
        assert_eq!(h.coeff(1).precision(), 3);
    }
}
