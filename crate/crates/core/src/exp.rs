//! The Artin-Hasse exponential `E_p`, its logarithmic companion `lambda`,
//! and coordinates of unit classes in `U^1 / (U^1)^p U^{b+1}`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::series::Series;

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `C(a, k) mod p` for `0 <= a, k < p`.
fn small_binom(a: u64, k: u64, p: u64) -> u64 {
    if k > a {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    let (g, inv) = {
        let e = (den as i64).extended_gcd(&(p as i64));
        (e.gcd, e.x)
    };
    debug_assert_eq!(g, 1);
    num * (inv.rem_euclid(p as i64) as u64) % p
}

/// `C(alpha, k) mod p` by Lucas' theorem, where `alpha` is a p-adic integer
/// given by its base-p digits (enough of them to cover `k`).
fn lucas(alpha_digits: &[u64], mut k: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut i = 0;
    while k > 0 {
        let a = alpha_digits.get(i).copied().unwrap_or(0);
        r = r * small_binom(a, k % p, p) % p;
        if r == 0 {
            return 0;
        }
        k /= p;
        i += 1;
    }
    r
}

/// Coefficients of `E_p(X) mod X^n`, reduced mod p.
pub fn e_series(p: u32, n: usize) -> Vec<u32> {
    let pp = p as u64;
    let mut out = vec![0u64; n];
    if n == 0 {
        return Vec::new();
    }
    out[0] = 1;
    let mut digits = 1u32;
    let mut modulus = pp;
    while modulus <= n as u64 {
        modulus *= pp;
        digits += 1;
    }
    for c in 1..n as u64 {
        if c % pp == 0 {
            continue;
        }
        let mu = mobius(c);
        if mu == 0 {
            continue;
        }
        // alpha = -mu / c as a p-adic integer, mod p^digits
        let inv_c = (c as i128).extended_gcd(&(modulus as i128)).x.rem_euclid(modulus as i128) as u64;
        let alpha = ((-mu).rem_euclid(modulus as i64) as u128 * inv_c as u128 % modulus as u128) as u64;
        let mut alpha_digits = Vec::with_capacity(digits as usize);
        let mut a = alpha;
        for _ in 0..digits {
            alpha_digits.push(a % pp);
            a /= pp;
        }
        // (1 - X^c)^alpha = sum_k C(alpha, k) (-1)^k X^{ck}
        let mut factor = vec![0u64; n];
        let mut k = 0u64;
        while (c * k) < n as u64 {
            let b = lucas(&alpha_digits, k, pp);
            factor[(c * k) as usize] = if k % 2 == 1 { (pp - b) % pp } else { b };
            k += 1;
        }
        let mut prod = vec![0u64; n];
        for (i, &x) in out.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in factor[..n - i].iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + x * y) % pp;
                }
            }
        }
        out = prod;
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// Coefficients of `lambda(X) = X + X^p + X^{p^2} + ... mod X^n`.
pub fn lambda_series(p: u32, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    let mut e = 1usize;
    while e < n {
        out[e] = 1;
        e *= p as usize;
    }
    out
}

/// `E_p(alpha)` modulo `var^prec` (never beyond the precision of `alpha`).
pub fn e_eval(alpha: &Series, prec: i64) -> Result<Series> {
    let field = alpha.field();
    let prec = prec.min(alpha.precision());
    let var = alpha.var_name();
    if alpha.is_indistinguishable_from_zero() {
        if alpha.valuation_bound() < 1 && alpha.precision() < 1 {
            return Err(Error::InsufficientPrecision("argument of E_p not known to lie in M_K"));
        }
        return Ok(Series::one(field, var, prec));
    }
    let v = alpha.valuation()?;
    if v < 1 {
        return Err(Error::PreconditionViolated("E_p needs an argument of positive valuation".into()));
    }
    let terms = ((prec.max(0) + v - 1) / v).max(1) as usize;
    let coeffs = e_series(field.p(), terms);
    let alpha = alpha.truncate(prec);
    let mut acc = Series::zero(field, var, crate::series::EXACT);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(&alpha).truncate(prec);
        if c != 0 {
            acc = acc.add(&Series::monomial(field, var, field.from_int(c as i64), 0, crate::series::EXACT));
        }
    }
    Ok(acc.truncate(prec))
}

/// The unique `alpha` in `M_K` with `E_p(alpha) = u` to the precision of `u`.
pub fn lambda_inverse(u: &Series) -> Result<Series> {
    let field = u.field();
    let var = u.var_name();
    let n = u.precision();
    if n < 1 {
        return Err(Error::InsufficientPrecision("unit not known modulo var"));
    }
    if u.coeff(0) != Fe::ONE || u.valuation_bound() < 0 {
        return Err(Error::PreconditionViolated("lambda_inverse needs u = 1 mod var".into()));
    }
    let mut alpha = Series::zero(field, var, n);
    loop {
        let diff = u.sub(&e_eval(&alpha, n)?);
        if diff.is_indistinguishable_from_zero() {
            return Ok(alpha);
        }
        let (j, c) = diff.leading()?;
        debug_assert!(j >= 1);
        alpha = alpha.add(&Series::monomial(field, var, c, j, n));
    }
}

/// Layout of `W = U^1 / (U^1)^p U^{b+1}`: one block of `m` F_p-coordinates
/// for each level `1 <= k <= b` with `p` not dividing `k`, in increasing `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WLayout {
    pub p: u32,
    pub m: usize,
    pub b: i64,
}

impl WLayout {
    pub fn new(field: &FieldCtx, b: i64) -> Self {
        WLayout { p: field.p(), m: field.m(), b }
    }

    pub fn levels(&self) -> impl Iterator<Item = i64> + '_ {
        (1..=self.b).filter(move |k| k % self.p as i64 != 0)
    }

    pub fn dim(&self) -> usize {
        self.levels().count() * self.m
    }

    /// First coordinate of the block for level `k`.
    pub fn offset(&self, k: i64) -> Option<usize> {
        if k < 1 || k > self.b || k % self.p as i64 == 0 {
            return None;
        }
        let before = (k - 1) - (k - 1) / self.p as i64;
        Some(before as usize * self.m)
    }

    /// `(k, l)` label of coordinate `i`: basis unit `E_p(a^l t^k)`.
    pub fn label(&self, i: usize) -> (i64, usize) {
        let block = i / self.m;
        let k = self.levels().nth(block).expect("coordinate out of range");
        (k, i % self.m)
    }
}

/// Class of an element of `K^x` in `(W + <t>)`: the valuation mod p and the
/// coordinates of its unit part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WVector {
    pub b: i64,
    pub t: u32,
    pub coords: Vec<u32>,
}

impl WVector {
    /// `[t, coords...]`, the row used for F_p linear algebra.
    pub fn row(&self) -> Vec<u32> {
        let mut r = Vec::with_capacity(self.coords.len() + 1);
        r.push(self.t);
        r.extend_from_slice(&self.coords);
        r
    }

    pub fn from_row(b: i64, row: &[u32]) -> Self {
        WVector { b, t: row[0], coords: row[1..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.t == 0 && self.coords.iter().all(|&x| x == 0)
    }
}

/// Coordinates of `u = 1 mod var` in `W` for level `b`.
pub fn unit_coordinates(u: &Series, b: i64) -> Result<WVector> {
    let field = u.field().clone();
    let var = u.var_name();
    let p = field.p() as i64;
    let layout = WLayout::new(&field, b);
    if u.precision() < b + 1 {
        return Err(Error::InsufficientPrecision("unit not known modulo U^{b+1}"));
    }
    if u.valuation_bound() != 0 || u.coeff(0) != Fe::ONE {
        return Err(Error::PreconditionViolated("unit_coordinates needs u = 1 mod var".into()));
    }
    let one = Series::one(&field, var, b + 1);
    let mut coords = vec![0u32; layout.dim()];
    let mut r = u.truncate(b + 1);
    loop {
        let diff = r.sub(&one);
        if diff.is_indistinguishable_from_zero() {
            break;
        }
        let (j, c) = diff.leading()?;
        let divisor = if j % p == 0 {
            Series::from_terms(&field, var, &[(0, Fe::ONE), (j, c)], b + 1)
        } else {
            let off = layout.offset(j).expect("level in range");
            for (slot, x) in coords[off..off + layout.m].iter_mut().zip(field.coords(c)) {
                *slot = (*slot + x) % field.p();
            }
            e_eval(&Series::monomial(&field, var, c, j, b + 1), b + 1)?
        };
        r = r.div(&divisor)?.truncate(b + 1);
    }
    Ok(WVector { b, t: 0, coords })
}

/// Coordinates of any `eta` in `K^x`: `eta = c t^v u` with `c` a constant
/// (a p-th power) and `u = 1 mod t`.
pub fn class_coordinates(eta: &Series, b: i64) -> Result<WVector> {
    let field = eta.field();
    let (v, c) = eta.leading()?;
    let u = eta.shift(-v).scale(field.inv(c));
    let mut w = unit_coordinates(&u, b)?;
    w.t = v.rem_euclid(field.p() as i64) as u32;
    Ok(w)
}
