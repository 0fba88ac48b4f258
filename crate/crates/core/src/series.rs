//! Truncated Laurent series over F_{p^m} with absolute precision.
//!
//! A [`Series`] is known modulo `var^prec`: every coefficient at an exponent
//! below `prec` is determined, nothing above it is. Exact values (Laurent
//! polynomials) carry the sentinel precision [`EXACT`].
//!
//! Precision propagation:
//! - `x + y`, `x - y`: `min(N_x, N_y)`
//! - `x * y`: `min(N_x + v_y, N_y + v_x)`, where an indistinguishable zero
//!   contributes its precision as a valuation lower bound
//! - `1 / x` with `v = v(x)`: `N_x - 2v`
//! - `d/dt x`: `N_x - 1`
//! - `x^{1/p}`: `ceil(N_x / p)`
//! - `x(g)` with `w = v(g)`: `min(w N_x, w (v' - 1) + N_g)` where `v'` ranges
//!   over the nonzero exponents of `x`

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

/// Precision of exactly known series.
pub const EXACT: i64 = i64::MAX / 4;

/// Relative precision used when inverting an exact non-monomial.
pub const EXACT_INVERSE_DIGITS: i64 = 64;

fn sat(n: i64) -> i64 {
    if n >= EXACT / 2 {
        EXACT
    } else {
        n
    }
}

#[derive(Clone)]
pub struct Series {
    field: Arc<FieldCtx>,
    var: char,
    start: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.start == other.start && self.coeffs == other.coeffs
    }
}

impl Eq for Series {}

impl Series {
    pub fn from_coeffs(field: &Arc<FieldCtx>, var: char, start: i64, coeffs: Vec<Fe>, prec: i64) -> Self {
        let mut s = Series { field: field.clone(), var, start, coeffs, prec: sat(prec) };
        s.normalize();
        s
    }

    pub fn from_terms(field: &Arc<FieldCtx>, var: char, terms: &[(i64, Fe)], prec: i64) -> Self {
        let prec = sat(prec);
        let known: Vec<&(i64, Fe)> = terms.iter().filter(|(e, c)| *e < prec && !c.is_zero()).collect();
        if known.is_empty() {
            return Self::zero(field, var, prec);
        }
        let lo = known.iter().map(|t| t.0).min().unwrap();
        let hi = known.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Fe::ZERO; (hi - lo + 1) as usize];
        for &&(e, c) in &known {
            let i = (e - lo) as usize;
            coeffs[i] = field.add(coeffs[i], c);
        }
        Self::from_coeffs(field, var, lo, coeffs, prec)
    }

    pub fn zero(field: &Arc<FieldCtx>, var: char, prec: i64) -> Self {
        let prec = sat(prec);
        Series { field: field.clone(), var, start: prec, coeffs: Vec::new(), prec }
    }

    pub fn one(field: &Arc<FieldCtx>, var: char, prec: i64) -> Self {
        Self::monomial(field, var, Fe::ONE, 0, prec)
    }

    pub fn monomial(field: &Arc<FieldCtx>, var: char, c: Fe, e: i64, prec: i64) -> Self {
        Self::from_terms(field, var, &[(e, c)], prec)
    }

    /// The uniformizer `var` itself, exactly.
    pub fn var(field: &Arc<FieldCtx>, var: char) -> Self {
        Self::monomial(field, var, Fe::ONE, 1, EXACT)
    }

    fn normalize(&mut self) {
        if self.start < self.prec {
            let keep = (self.prec - self.start).min(self.coeffs.len() as i64).max(0) as usize;
            self.coeffs.truncate(keep);
        } else {
            self.coeffs.clear();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(..i);
                    self.start += i as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn var_name(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// All known coefficients vanish.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            return Err(Error::InsufficientPrecision("valuation of a series indistinguishable from 0"));
        }
        Ok(self.start)
    }

    /// The valuation, or the precision when the series is indistinguishable from 0.
    pub fn valuation_bound(&self) -> i64 {
        self.start
    }

    pub fn leading(&self) -> Result<(i64, Fe)> {
        let v = self.valuation()?;
        Ok((v, self.coeffs[0]))
    }

    /// Coefficient at `var^e`; zero outside the stored range. Callers must
    /// check `e < precision()` when that matters.
    pub fn coeff(&self, e: i64) -> Fe {
        if e < self.start || e >= self.start + self.coeffs.len() as i64 {
            Fe::ZERO
        } else {
            self.coeffs[(e - self.start) as usize]
        }
    }

    pub fn known_coeff(&self, e: i64) -> Result<Fe> {
        if e >= self.prec {
            return Err(Error::InsufficientPrecision("coefficient beyond the known range"));
        }
        Ok(self.coeff(e))
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    /// Exponent just past the last stored nonzero coefficient.
    pub fn degree_bound(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn truncate(&self, n: i64) -> Series {
        let mut s = self.clone();
        s.prec = s.prec.min(sat(n));
        s.normalize();
        s
    }

    /// Declares the series known modulo `var^n`, padding with zeros when
    /// `n` exceeds the current precision. Only sound when the caller has
    /// certified the padded digits.
    pub(crate) fn assume_precision(&self, n: i64) -> Series {
        let mut s = self.clone();
        s.prec = sat(n);
        if s.coeffs.is_empty() {
            s.start = s.prec;
        }
        s.normalize();
        s
    }

    fn same_ring(&self, other: &Series) {
        debug_assert!(self.field == other.field, "series over different fields");
        debug_assert_eq!(self.var, other.var, "series in different uniformizers");
    }

    pub fn add(&self, other: &Series) -> Series {
        self.add_scaled(other, Fe::ONE)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add_scaled(other, self.field.neg(Fe::ONE))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Series, c: Fe) -> Series {
        self.same_ring(other);
        let f = &*self.field;
        let prec = self.prec.min(other.prec);
        let other_empty = other.coeffs.is_empty() || c.is_zero();
        let lo = match (self.coeffs.is_empty(), other_empty) {
            (true, true) => return Series::zero(&self.field, self.var, prec),
            (false, true) => self.start,
            (true, false) => other.start,
            (false, false) => self.start.min(other.start),
        };
        if lo >= prec {
            return Series::zero(&self.field, self.var, prec);
        }
        let self_hi = if self.coeffs.is_empty() { lo } else { self.degree_bound() };
        let other_hi = if other_empty { lo } else { other.degree_bound() };
        let hi = self_hi.max(other_hi).min(prec);
        let mut coeffs = vec![Fe::ZERO; (hi - lo).max(0) as usize];
        for (i, &x) in self.coeffs.iter().enumerate() {
            let e = self.start + i as i64;
            if e >= hi {
                break;
            }
            coeffs[(e - lo) as usize] = x;
        }
        if !other_empty {
            for (i, &x) in other.coeffs.iter().enumerate() {
                let e = other.start + i as i64;
                if e >= hi {
                    break;
                }
                let slot = &mut coeffs[(e - lo) as usize];
                *slot = f.add(*slot, f.mul(c, x));
            }
        }
        Series::from_coeffs(&self.field, self.var, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Series {
        let f = &*self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        Series { field: self.field.clone(), var: self.var, start: self.start, coeffs, prec: self.prec }
    }

    pub fn scale(&self, c: Fe) -> Series {
        let f = &*self.field;
        let coeffs = self.coeffs.iter().map(|&x| f.mul(c, x)).collect();
        Series::from_coeffs(&self.field, self.var, self.start, coeffs, self.prec)
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Series {
        let mut s = self.clone();
        s.start += k;
        if !s.is_exact() {
            s.prec += k;
        } else if s.coeffs.is_empty() {
            s.start = EXACT;
        }
        s
    }

    pub fn mul(&self, other: &Series) -> Series {
        self.same_ring(other);
        let prec = sat((self.prec + other.valuation_bound()).min(other.prec + self.valuation_bound()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series::zero(&self.field, self.var, prec);
        }
        let start = self.start + other.start;
        if start >= prec {
            return Series::zero(&self.field, self.var, prec);
        }
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(prec - start) as usize;
        let f = &*self.field;
        let mut out = vec![Fe::ZERO; len];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if x.is_zero() {
                continue;
            }
            let lim = (len - i).min(other.coeffs.len());
            for (j, &y) in other.coeffs[..lim].iter().enumerate() {
                let slot = &mut out[i + j];
                *slot = f.add(*slot, f.mul(x, y));
            }
        }
        Series::from_coeffs(&self.field, self.var, start, out, prec)
    }

    pub fn square(&self) -> Series {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<Series> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let v = self.start;
        let rel = if self.is_exact() {
            if self.coeffs.len() == 1 {
                let c = self.field.inv(self.coeffs[0]);
                return Ok(Series::monomial(&self.field, self.var, c, -v, EXACT));
            }
            EXACT_INVERSE_DIGITS
        } else {
            self.prec - v
        };
        let f = &*self.field;
        let n = rel as usize;
        let u0inv = f.inv(self.coeffs[0]);
        let mut w = vec![Fe::ZERO; n];
        if n > 0 {
            w[0] = u0inv;
        }
        for k in 1..n {
            let mut acc = Fe::ZERO;
            let lim = k.min(self.coeffs.len() - 1);
            for i in 1..=lim {
                acc = f.add(acc, f.mul(self.coeffs[i], w[k - i]));
            }
            w[k] = f.neg(f.mul(u0inv, acc));
        }
        Ok(Series::from_coeffs(&self.field, self.var, -v, w, -v + rel))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^e` for any integer `e` (negative powers require a distinguishable
    /// series).
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Series::one(&self.field, self.var, EXACT);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    /// Applies `c -> c^{p^n}` to every coefficient.
    pub fn frobenius_coeffs(&self, n: i64) -> Series {
        let f = &*self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.frobenius(c, n)).collect();
        Series { field: self.field.clone(), var: self.var, start: self.start, coeffs, prec: self.prec }
    }

    /// `self^p`, computed termwise.
    pub fn pth_power(&self) -> Series {
        let p = self.field.p() as i64;
        let f = &*self.field;
        let prec = if self.is_exact() { EXACT } else { self.prec * p };
        let terms: Vec<(i64, Fe)> = self.terms().map(|(e, c)| (e * p, f.frobenius(c, 1))).collect();
        Series::from_terms(&self.field, self.var, &terms, prec)
    }

    pub fn derivative(&self) -> Series {
        let f = &*self.field;
        let terms: Vec<(i64, Fe)> = self.terms().map(|(e, c)| (e - 1, f.mul_int(c, e))).collect();
        let prec = if self.is_exact() { EXACT } else { self.prec - 1 };
        Series::from_terms(&self.field, self.var, &terms, prec)
    }

    /// Coefficient of `var^{-1}`.
    pub fn residue(&self) -> Result<Fe> {
        self.known_coeff(-1)
    }

    /// The unique `y` with `y^p = self`.
    pub fn pth_root(&self) -> Result<Series> {
        let p = self.field.p() as i64;
        let f = &*self.field;
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            if e.rem_euclid(p) != 0 {
                return Err(Error::NotAPthPower);
            }
            terms.push((e / p, f.frobenius(c, -1)));
        }
        let prec = if self.is_exact() { EXACT } else { self.prec.div_euclid(p) + i64::from(self.prec.rem_euclid(p) != 0) };
        Ok(Series::from_terms(&self.field, self.var, &terms, prec))
    }

    /// Substitutes `var := g`; the result lives in `g`'s uniformizer.
    /// Requires `v(g) >= 1`.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        let w = g.valuation()?;
        if w < 1 {
            return Err(Error::PreconditionViolated("composition requires v(g) >= 1".into()));
        }
        let cap = if self.is_exact() { EXACT } else { sat(w.saturating_mul(self.prec)) };
        if self.coeffs.is_empty() {
            return Ok(Series::zero(&g.field, g.var, cap));
        }
        // self = var^v * P(var), P a polynomial; evaluate P(g) by Horner.
        let v = self.start;
        let mut acc = Series::zero(&g.field, g.var, EXACT);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).truncate(cap - v * w);
            if !c.is_zero() {
                acc = acc.add(&Series::monomial(&g.field, g.var, c, 0, EXACT));
            }
        }
        let gv = if v >= 0 {
            g.truncate(cap).pow(v)?
        } else {
            g.inv()?.pow(-v)?
        };
        Ok(acc.mul(&gv).truncate(cap))
    }

    /// Compositional inverse: `h` with `self(h) = u + O(u^N)`, `N` the
    /// precision of `self`.
    pub fn revert(&self) -> Result<Series> {
        let (v, lead) = self.leading()?;
        if v != 1 {
            return Err(Error::NotAUniformizer);
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = self.field.inv(lead);
            return Ok(Series::monomial(&self.field, self.var, c, 1, EXACT));
        }
        let n = if self.is_exact() { EXACT_INVERSE_DIGITS } else { self.prec };
        let g = self.truncate(n);
        let f = &*self.field;
        let lead_inv = f.inv(lead);
        let u = Series::var(&self.field, self.var).truncate(n);
        let mut h = u.scale(lead_inv).assume_precision(n);
        let dg = g.derivative();
        for _ in 0..64 {
            let err = g.compose(&h)?.sub(&u).truncate(n);
            if err.is_indistinguishable_from_zero() && err.precision() >= n {
                return Ok(h);
            }
            let slope = dg.compose(&h)?;
            let corr = err.div(&slope)?;
            h = h.sub(&corr).assume_precision(n);
        }
        Err(Error::InsufficientPrecision("series reversion did not converge"))
    }

    /// Renders `c*t^e` terms joined by ` + `, followed by `O(t^N)` when inexact.
    pub fn format(&self) -> String {
        let f = &*self.field;
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let coeff = f.format(c);
            let simple = f.to_prime(c).is_some();
            let mono = match e {
                0 => String::new(),
                1 => format!("{}", self.var),
                _ => format!("{}^{}", self.var, e),
            };
            let s = if mono.is_empty() {
                if simple { coeff } else { format!("({coeff})") }
            } else if c == Fe::ONE {
                mono
            } else if simple {
                format!("{coeff}*{mono}")
            } else {
                format!("({coeff})*{mono}")
            };
            parts.push(s);
        }
        if !self.is_exact() {
            parts.push(format!("O({}^{})", self.var, self.prec));
        }
        if parts.is_empty() {
            return String::from("0");
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}
