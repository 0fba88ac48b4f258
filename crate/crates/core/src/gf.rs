//! Arithmetic in the residue field F_{p^m}.
//!
//! Elements are stored as their coordinate vector over F_p in the power basis
//! `1, a, ..., a^{m-1}`, packed base `p` into a single index
//! (`index = sum c_i p^i`). Multiplication goes through exp/log tables built
//! once per context; fields are capped at `p^m <= 2^16`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// An element of F_{p^m}; meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field F_{p^m} with a fixed defining modulus.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    m: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_tab: Option<Vec<u16>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, constant-first.
fn poly_trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    poly_rem_in_place(&mut r, f, p);
    r
}

fn poly_rem_in_place(r: &mut Vec<u32>, f: &[u32], p: u32) {
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    poly_trim(r);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv as u64 % p as u64;
        if c != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * fi as u64) % p as u64) as u32;
            }
        }
        poly_trim(r);
    }
}

fn poly_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        poly_rem_in_place(&mut a, &b, p);
        core::mem::swap(&mut a, &mut b);
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

/// `x^{p^k} mod f` for k = 0..=m.
fn frobenius_powers_of_x(f: &[u32], p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(m + 1);
    let mut cur = vec![0, 1];
    poly_rem_in_place(&mut cur, f, p);
    out.push(cur.clone());
    for _ in 0..m {
        // cur^p by repeated multiplication
        let mut acc = vec![1];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        cur = acc;
        out.push(cur.clone());
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 || f[m] == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let pw = frobenius_powers_of_x(f, p, m);
    let x = {
        let mut x = vec![0, 1];
        poly_rem_in_place(&mut x, f, p);
        x
    };
    let mut top = pw[m].clone();
    poly_trim(&mut top);
    if top != x {
        return false;
    }
    for l in prime_factors(m as u32) {
        let k = m / l as usize;
        let mut d = pw[k].clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        poly_trim(&mut d);
        let g = poly_gcd(f.to_vec(), d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// F_{p^m} with the lexicographically least monic irreducible modulus
    /// (coefficients compared constant term first).
    pub fn new(p: u32, m: usize) -> Result<Self> {
        Self::check_params(p, m)?;
        let q = p.pow(m as u32);
        for idx in 0..q {
            // c_0 is the most significant digit so that idx order is lex order
            let mut f = vec![0u32; m + 1];
            let mut rest = idx;
            for i in (0..m).rev() {
                f[i] = rest % p;
                rest /= p;
            }
            f[m] = 1;
            if is_irreducible(&f, p) {
                return Self::build(p, f);
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {m} over F_{p}")))
    }

    /// F_{p^m} with an explicit monic modulus (constant-first, length m+1).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let m = modulus.len() - 1;
        Self::check_params(p, m)?;
        if modulus[m] % p != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let f: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if !is_irreducible(&f, p) {
            return Err(Error::NotIrreducible);
        }
        Self::build(p, f)
    }

    fn check_params(p: u32, m: usize) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q *= p as u64;
            if q > MAX_FIELD_SIZE as u64 {
                return Err(Error::InvalidField(format!("p^m exceeds {MAX_FIELD_SIZE}")));
            }
        }
        Ok(())
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let m = modulus.len() - 1;
        let q = p.pow(m as u32);
        let to_poly = |idx: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(m);
            let mut r = idx;
            for _ in 0..m {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let from_poly = |v: &[u32]| -> u32 {
            let mut idx = 0u32;
            for &c in v.iter().take(m).rev() {
                idx = idx * p + c;
            }
            idx
        };
        // primitive element search with the slow multiplication
        let n = q - 1;
        let factors = prime_factors(n.max(1));
        let slow_pow = |g: u32, e: u32| -> u32 {
            let mut acc = vec![1u32];
            let mut base = to_poly(g);
            poly_trim(&mut base);
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &base, &modulus, p);
                }
                base = poly_mulmod(&base, &base, &modulus, p);
                e >>= 1;
            }
            acc.resize(m, 0);
            from_poly(&acc)
        };
        let mut gen = 1u32;
        if n > 1 {
            gen = (2..q)
                .find(|&g| factors.iter().all(|&l| slow_pow(g, n / l) != 1))
                .ok_or(Error::NotIrreducible)?;
        }
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let g_poly = {
            let mut gp = to_poly(gen);
            poly_trim(&mut gp);
            gp
        };
        let mut cur = vec![1u32];
        for i in 0..n {
            let mut c = cur.clone();
            c.resize(m, 0);
            let idx = from_poly(&c);
            exp[i as usize] = idx;
            log[idx as usize] = i;
            cur = poly_mulmod(&cur, &g_poly, &modulus, p);
        }
        for i in 0..n as usize {
            exp[i + n as usize] = exp[i];
        }
        let digit_add = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..m {
                out += ((a % p + b % p) % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            out
        };
        let neg = (0..q)
            .map(|a| {
                let mut a = a;
                let mut out = 0;
                let mut scale = 1;
                for _ in 0..m {
                    out += ((p - a % p) % p) * scale;
                    a /= p;
                    scale *= p;
                }
                out
            })
            .collect();
        let add_tab = if p != 2 && q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(FieldCtx { p, m, q, modulus, exp, log, neg, add_tab })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining modulus, constant-first, monic of degree m.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The generator `a`, a root of the modulus. For m = 1 this is the
    /// prime-field residue of that root.
    pub fn generator(&self) -> Fe {
        if self.m == 1 {
            // a is a root of the linear modulus X + c0
            Fe((self.p - self.modulus[0]) % self.p)
        } else {
            Fe(self.p)
        }
    }

    /// `a^l` for `0 <= l < m`: the standard F_p-basis.
    pub fn basis(&self, l: usize) -> Fe {
        assert!(l < self.m);
        Fe(self.p.pow(l as u32))
    }

    pub fn basis_elements(&self) -> Vec<Fe> {
        (0..self.m).map(|l| self.basis(l)).collect()
    }

    pub fn from_index(&self, idx: u32) -> Fe {
        assert!(idx < self.q, "index out of range");
        Fe(idx)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u32)
    }

    /// The integer `0..p` if `x` lies in the prime field.
    pub fn to_prime(&self, x: Fe) -> Option<u32> {
        (x.0 < self.p).then_some(x.0)
    }

    pub fn coords(&self, x: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.m);
        let mut r = x.0;
        for _ in 0..self.m {
            v.push(r % self.p);
            r /= self.p;
        }
        v
    }

    pub fn from_coords(&self, c: &[u32]) -> Fe {
        assert!(c.len() <= self.m);
        let mut idx = 0u32;
        for &ci in c.iter().rev() {
            idx = idx * self.p + ci % self.p;
        }
        Fe(idx)
    }

    /// Element given by a polynomial in `a` with integer coefficients
    /// (constant-first), reduced by the modulus.
    pub fn from_poly_coeffs(&self, c: &[i64]) -> Fe {
        let mut acc = Fe::ZERO;
        let a = self.generator();
        let mut pw = Fe::ONE;
        for &ci in c {
            acc = self.add(acc, self.mul(self.from_int(ci), pw));
            pw = self.mul(pw, a);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_tab {
            return Fe(t[(a.0 * self.q + b.0) as usize] as u32);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[s as usize])
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero in F_q");
        let n = self.q - 1;
        Fe(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    /// `a^e`, with `0^0 = 1`; negative exponents invert (panics on zero).
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            assert!(e > 0, "negative power of zero");
            return Fe::ZERO;
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let s = (l * (e.rem_euclid(n))).rem_euclid(n);
        Fe(self.exp[s as usize])
    }

    /// Integer multiple `c * a`.
    pub fn mul_int(&self, a: Fe, c: i64) -> Fe {
        self.mul(self.from_int(c), a)
    }

    /// `x^{p^n}`; negative `n` gives iterated p-th roots. `n` is read mod m.
    pub fn frobenius(&self, x: Fe, n: i64) -> Fe {
        if x.is_zero() {
            return x;
        }
        let k = n.rem_euclid(self.m as i64) as u32;
        if k == 0 {
            return x;
        }
        let order = (self.q - 1) as u64;
        let mut e = self.log[x.0 as usize] as u64;
        for _ in 0..k {
            e = e * self.p as u64 % order;
        }
        Fe(self.exp[e as usize])
    }

    /// Absolute trace to F_p, as an integer in `0..p`.
    pub fn trace(&self, x: Fe) -> u32 {
        let mut acc = Fe::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.frobenius(y, 1);
        }
        self.to_prime(acc).expect("trace lands in the prime field")
    }

    /// `x^p - x`.
    pub fn wp(&self, x: Fe) -> Fe {
        self.sub(self.frobenius(x, 1), x)
    }

    /// A fixed complement of the image of `x -> x^p - x`: the first
    /// standard-basis element with nonzero trace.
    pub fn wp_complement(&self) -> Fe {
        self.basis_elements()
            .into_iter()
            .find(|&b| self.trace(b) != 0)
            .expect("trace is surjective")
    }

    /// Writes `c = wp(y) + s * z` with `z = wp_complement()`; returns `(y, s)`.
    pub fn wp_decompose(&self, c: Fe) -> (Fe, u32) {
        let z = self.wp_complement();
        let p = self.p;
        let tz = self.trace(z);
        let inv_tz = (1..p).find(|&i| i * tz % p == 1).unwrap();
        let s = self.trace(c) * inv_tz % p;
        let rest = self.sub(c, self.mul_int(z, s as i64));
        let cols: Vec<Vec<u32>> = self.basis_elements().iter().map(|&b| self.coords(self.wp(b))).collect();
        let rows: Vec<Vec<u32>> = (0..self.m).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let y = crate::linalg::solve_mod_p(&rows, &self.coords(rest), self.m, p)
            .expect("trace-zero elements lie in the image of wp");
        (self.from_coords(&y), s)
    }

    /// The subfield F_{p^nu}, or `None` if nu does not divide m.
    pub fn subfield_elements(&self, nu: usize) -> Option<Vec<Fe>> {
        assert!(nu >= 1);
        if self.m % nu != 0 {
            return None;
        }
        Some(self.elements().filter(|&x| self.frobenius(x, nu as i64) == x).collect())
    }

    /// An F_p-basis of F_{p^nu}, or `None` if nu does not divide m.
    pub fn subfield_basis(&self, nu: usize) -> Option<Vec<Fe>> {
        let elems = self.subfield_elements(nu)?;
        let mut basis: Vec<Fe> = Vec::new();
        for x in elems {
            if basis.len() == nu {
                break;
            }
            let mut cand = basis.clone();
            cand.push(x);
            if self.fp_independent(&cand) {
                basis = cand;
            }
        }
        Some(basis)
    }

    /// Whether the given elements are linearly independent over F_p.
    pub fn fp_independent(&self, xs: &[Fe]) -> bool {
        let rows: Vec<Vec<u32>> = xs.iter().map(|&x| self.coords(x)).collect();
        crate::linalg::rank_mod_p(&rows, self.p) == xs.len()
    }

    /// Solves `sum_j y_j v^{p^{nu-j}} = value(v)` for `j = 0..nu` at each point.
    pub fn moore_solve(&self, points: &[Fe], values: &[Fe], nu: usize) -> Result<Vec<Fe>> {
        if points.len() != nu || values.len() != nu {
            return Err(Error::DimensionMismatch { expected: nu, found: points.len() });
        }
        let mat: Vec<Vec<Fe>> = points
            .iter()
            .map(|&v| (0..nu).map(|j| self.frobenius(v, (nu - j) as i64)).collect())
            .collect();
        self.solve(mat, values.to_vec())
    }

    /// Solves the square system `mat * y = rhs` over F_q.
    pub fn solve(&self, mut mat: Vec<Vec<Fe>>, mut rhs: Vec<Fe>) -> Result<Vec<Fe>> {
        let n = mat.len();
        for col in 0..n {
            let piv = (col..n).find(|&r| !mat[r][col].is_zero()).ok_or(Error::SingularSystem)?;
            mat.swap(col, piv);
            rhs.swap(col, piv);
            let inv = self.inv(mat[col][col]);
            for c in col..n {
                mat[col][c] = self.mul(mat[col][c], inv);
            }
            rhs[col] = self.mul(rhs[col], inv);
            for r in 0..n {
                if r == col || mat[r][col].is_zero() {
                    continue;
                }
                let f = mat[r][col];
                for c in col..n {
                    let d = self.mul(f, mat[col][c]);
                    mat[r][c] = self.sub(mat[r][c], d);
                }
                let d = self.mul(f, rhs[col]);
                rhs[r] = self.sub(rhs[r], d);
            }
        }
        Ok(rhs)
    }

    /// Formats `x` as a polynomial in `a`, e.g. `a^2+2*a+1`.
    pub fn format(&self, x: Fe) -> String {
        let c = self.coords(x);
        let mut s = String::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            let mono = match i {
                0 => String::new(),
                1 => String::from("a"),
                _ => format!("a^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&format!("{ci}"));
            } else if ci == 1 {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{ci}*{mono}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn display(&self, x: Fe) -> FeDisplay<'_> {
        FeDisplay { ctx: self, x }
    }
}

pub struct FeDisplay<'a> {
    ctx: &'a FieldCtx,
    x: Fe,
}

impl fmt::Display for FeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format(self.x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 2).unwrap()
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(FieldCtx::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldCtx::new(4, 1).is_err());
        assert!(FieldCtx::new(2, 17).is_err());
        assert_eq!(FieldCtx::with_modulus(2, &[1, 0, 1]), Err(Error::NotIrreducible));
    }

    #[test]
    fn wp_decomposition_is_exact() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 2)] {
            let k = FieldCtx::new(p, m).unwrap();
            let z = k.wp_complement();
            for c in k.elements() {
                let (y, s) = k.wp_decompose(c);
                assert_eq!(k.add(k.wp(y), k.mul_int(z, s as i64)), c);
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let k = f4();
        let a = k.generator();
        assert_eq!(k.frobenius(a, 1), k.add(a, Fe::ONE));
        assert_eq!(k.frobenius(Fe::ZERO, 5), Fe::ZERO);
        let k9 = FieldCtx::new(3, 2).unwrap();
        let a9 = k9.generator();
        assert_eq!(k9.frobenius(a9, 2), a9);
        for x in k9.elements() {
            assert_eq!(k9.frobenius(k9.frobenius(x, -1), 1), x);
            assert_eq!(k9.pow(k9.frobenius(x, -1), 3), x);
        }
    }

    #[test]
    fn trace_examples() {
        let k = f4();
        assert_eq!(k.trace(k.generator()), 1);
        assert_eq!(k.trace(Fe::ZERO), 0);
        let k5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(k5.trace(k5.from_int(3)), 3);
    }

    #[test]
    fn wp_complement_examples() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().wp_complement(), Fe::ONE);
        let k = f4();
        assert_eq!(k.wp_complement(), k.generator());
        assert_eq!(FieldCtx::new(3, 1).unwrap().wp_complement(), Fe::ONE);
    }

    #[test]
    fn subfields() {
        let k = f4();
        assert_eq!(k.subfield_elements(2).unwrap().len(), 4);
        assert_eq!(k.subfield_elements(1).unwrap(), vec![Fe::ZERO, Fe::ONE]);
        assert!(FieldCtx::new(3, 2).unwrap().subfield_elements(3).is_none());
    }

    #[test]
    fn moore_examples() {
        let k3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(k3.moore_solve(&[Fe::ONE], &[Fe::ONE], 1).unwrap(), vec![Fe::ONE]);
        let k9 = FieldCtx::new(3, 2).unwrap();
        let a = k9.generator();
        assert_eq!(k9.moore_solve(&[Fe::ONE, a], &[Fe::ONE, a], 2).unwrap(), vec![Fe::ONE, Fe::ZERO]);
        assert_eq!(
            k9.moore_solve(&[Fe::ONE, Fe::ONE], &[Fe::ONE, a], 2),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn exhaustive_field_laws() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (2, 4)] {
            let k = FieldCtx::new(p, m).unwrap();
            for x in k.elements() {
                for y in k.elements() {
                    let fx = k.frobenius(x, 1);
                    let fy = k.frobenius(y, 1);
                    assert_eq!(k.frobenius(k.add(x, y), 1), k.add(fx, fy));
                    assert_eq!(k.frobenius(k.mul(x, y), 1), k.mul(fx, fy));
                    assert_eq!((k.trace(x) + k.trace(y)) % p, k.trace(k.add(x, y)));
                }
                assert_eq!(k.trace(k.frobenius(x, 1)), k.trace(x));
                if !x.is_zero() {
                    assert_eq!(k.mul(x, k.inv(x)), Fe::ONE);
                }
            }
        }
    }

    #[test]
    fn wp_decomposition() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 2), (2, 6), (3, 4)] {
            let k = FieldCtx::new(p, m).unwrap();
            let kernel: Vec<Fe> = k.elements().filter(|&x| k.wp(x).is_zero()).collect();
            assert_eq!(kernel.len() as u32, p);
            assert!(kernel.iter().all(|&x| k.to_prime(x).is_some()));
            let mut image: Vec<Fe> = k.elements().map(|x| k.wp(x)).collect();
            image.sort();
            image.dedup();
            assert_eq!(image.len() as u32 * p, k.q());
            // every element splits as image + F_p * complement
            let z = k.wp_complement();
            for x in k.elements() {
                let hits = (0..p)
                    .filter(|&c| image.binary_search(&k.sub(x, k.mul_int(z, c as i64))).is_ok())
                    .count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn moore_solution_is_additive() {
        let k = FieldCtx::new(2, 4).unwrap();
        let pts: Vec<Fe> = vec![Fe::ONE, k.generator()];
        let vals = vec![k.from_index(7), k.from_index(11)];
        let y = k.moore_solve(&pts, &vals, 2).unwrap();
        let eval = |v: Fe| {
            (0..2).fold(Fe::ZERO, |acc, j| k.add(acc, k.mul(y[j], k.frobenius(v, (2 - j) as i64))))
        };
        for c0 in 0..2 {
            for c1 in 0..2 {
                let v = k.add(k.mul_int(pts[0], c0), k.mul_int(pts[1], c1));
                let want = k.add(k.mul_int(vals[0], c0), k.mul_int(vals[1], c1));
                assert_eq!(eval(v), want);
            }
        }
    }

    #[test]
    fn formatting() {
        let k = FieldCtx::new(3, 2).unwrap();
        let a = k.generator();
        assert_eq!(k.format(k.add(k.mul(a, a), Fe::ONE)), "0");
        assert_eq!(k.format(k.add(a, Fe::ONE)), "a+1");
        assert_eq!(k.format(k.mul_int(a, 2)), "2*a");
        assert_eq!(k.format(Fe::ZERO), "0");
    }
}
