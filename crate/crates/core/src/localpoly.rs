//! Polynomials over K = F_q((t)): resultants, norms from L = K[X]/(g),
//! characteristic polynomials of powers, and Eisenstein data.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::series::{Series, EXACT};

/// Polynomial in `X` with series coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    field: Arc<FieldCtx>,
    var: char,
    coeffs: Vec<Series>,
}

impl KPoly {
    pub fn new(field: &Arc<FieldCtx>, var: char, coeffs: Vec<Series>) -> Self {
        let mut f = KPoly { field: field.clone(), var, coeffs };
        while f.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            f.coeffs.pop();
        }
        f
    }

    pub fn zero(field: &Arc<FieldCtx>, var: char) -> Self {
        KPoly { field: field.clone(), var, coeffs: Vec::new() }
    }

    pub fn constant(c: Series) -> Self {
        let field = c.field().clone();
        let var = c.var_name();
        KPoly::new(&field, var, vec![c])
    }

    /// `X` itself.
    pub fn x(field: &Arc<FieldCtx>, var: char) -> Self {
        KPoly::new(field, var, vec![Series::zero(field, var, EXACT), Series::one(field, var, EXACT)])
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the top stored coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Series {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Series::zero(&self.field, self.var, EXACT))
    }

    pub fn leading(&self) -> Series {
        self.coeff(self.degree())
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        KPoly::new(&self.field, self.var, coeffs)
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        KPoly::new(&self.field, self.var, coeffs)
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field, self.var);
        }
        let mut out = vec![Series::zero(&self.field, self.var, EXACT); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        KPoly::new(&self.field, self.var, out)
    }

    pub fn scale(&self, c: &Series) -> KPoly {
        KPoly::new(&self.field, self.var, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, g: &KPoly) -> KPoly {
        let n = g.degree();
        let mut r = self.coeffs.clone();
        while r.len() > n {
            let top = r.pop().unwrap();
            if top.is_exact_zero() {
                continue;
            }
            let shift = r.len() - n;
            for i in 0..n {
                r[shift + i] = r[shift + i].sub(&top.mul(&g.coeffs[i]));
            }
        }
        KPoly::new(&self.field, self.var, r)
    }

    pub fn mul_mod(&self, other: &KPoly, g: &KPoly) -> KPoly {
        self.mul(other).rem_monic(g)
    }

    /// `X^k mod g`.
    pub fn x_pow_mod(g: &KPoly, k: usize) -> KPoly {
        let field = g.field();
        let mut acc = KPoly::constant(Series::one(field, g.var_t(), EXACT));
        let x = KPoly::x(field, g.var_t());
        for _ in 0..k {
            acc = acc.mul(&x).rem_monic(g);
        }
        acc
    }

    fn var_t(&self) -> char {
        self.var
    }

    pub fn eval(&self, x: &Series) -> Series {
        let mut acc = Series::zero(&self.field, self.var, EXACT);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl FnMut(&Series) -> Result<Series>) -> Result<KPoly> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        let (field, var) = coeffs.first().map(|c| (c.field().clone(), c.var_name())).unwrap_or((self.field.clone(), self.var));
        Ok(KPoly::new(&field, var, coeffs))
    }

    /// Text form with `X` as the variable, highest degree first.
    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => String::from("X"),
                _ => format!("X^{i}"),
            };
            let cs = c.format();
            let simple = c.is_exact() && c.terms().count() == 1 && !cs.contains(" + ");
            let s = if mono.is_empty() {
                if simple || c.is_exact() { cs } else { format!("({cs})") }
            } else if c.is_exact() && c.terms().count() == 1 && c.coeff(0) == Fe::ONE && c.valuation_bound() == 0 {
                mono
            } else if simple && !cs.starts_with('(') {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return String::from("0");
        }
        parts.join(" + ")
    }
}

/// Determinant by elimination, always pivoting on an entry of least valuation.
pub fn determinant(mut a: Vec<Vec<Series>>, field: &Arc<FieldCtx>, var: char) -> Result<Series> {
    let n = a.len();
    let mut det = Series::one(field, var, EXACT);
    let mut negate = false;
    for col in 0..n {
        let mut best: Option<usize> = None;
        let mut all_exact_zero = true;
        for r in col..n {
            let e = &a[r][col];
            if !e.is_exact_zero() {
                all_exact_zero = false;
            }
            if e.is_indistinguishable_from_zero() {
                continue;
            }
            if best.is_none_or(|b| e.valuation_bound() < a[b][col].valuation_bound()) {
                best = Some(r);
            }
        }
        let Some(piv) = best else {
            if all_exact_zero {
                return Ok(Series::zero(field, var, EXACT));
            }
            return Err(Error::InsufficientPrecision("elimination pivot indistinguishable from zero"));
        };
        if piv != col {
            a.swap(piv, col);
            negate = !negate;
        }
        let pivot = a[col][col].clone();
        let pinv = pivot.inv()?;
        det = det.mul(&pivot);
        for r in col + 1..n {
            if a[r][col].is_exact_zero() {
                continue;
            }
            let factor = a[r][col].mul(&pinv);
            for c in col + 1..n {
                let delta = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
        }
    }
    Ok(if negate { det.neg() } else { det })
}

/// `Res(f, g) = lead(f)^{deg g} * prod g(roots of f)`, the Sylvester determinant.
pub fn resultant(f: &KPoly, g: &KPoly) -> Result<Series> {
    let field = f.field().clone();
    let var = f.var();
    if f.is_zero() || g.is_zero() {
        return Ok(Series::zero(&field, var, EXACT));
    }
    for h in [f, g] {
        if h.leading().is_indistinguishable_from_zero() {
            return Err(Error::InsufficientPrecision("leading coefficient indistinguishable from zero"));
        }
    }
    let n = f.degree();
    let m = g.degree();
    let size = n + m;
    if size == 0 {
        return Ok(Series::one(&field, var, EXACT));
    }
    let zero = Series::zero(&field, var, EXACT);
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for j in 0..=n {
            row[i + j] = f.coeff(n - j);
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for j in 0..=m {
            row[i + j] = g.coeff(m - j);
        }
        rows.push(row);
    }
    determinant(rows, &field, var)
}

/// Matrix of multiplication by `a` on the power basis of `K[X]/(g)`;
/// column `i` holds the coordinates of `a * X^i`.
fn mult_matrix(g: &KPoly, a: &KPoly) -> Vec<Vec<Series>> {
    let n = g.degree();
    let field = g.field();
    let var = g.var();
    let mut cols = Vec::with_capacity(n);
    let mut cur = a.rem_monic(g);
    let x = KPoly::x(field, var);
    for _ in 0..n {
        cols.push(cur.clone());
        cur = cur.mul(&x).rem_monic(g);
    }
    (0..n).map(|r| (0..n).map(|c| cols[c].coeff(r)).collect()).collect()
}

/// Characteristic polynomial `det(X I - A)` by Berkowitz's division-free
/// recursion, constant term first.
pub fn charpoly(a: &[Vec<Series>], field: &Arc<FieldCtx>, var: char) -> KPoly {
    let n = a.len();
    let zero = Series::zero(field, var, EXACT);
    // coefficients of det(X I - A_i), leading first
    let mut vect = vec![Series::one(field, var, EXACT)];
    for i in 0..n {
        let mut col = vec![Series::one(field, var, EXACT), a[i][i].neg()];
        // t_{2+k} = -R A_i^k C
        let mut v: Vec<Series> = (0..i).map(|r| a[r][i].clone()).collect();
        for k in 0..i {
            let mut dot = zero.clone();
            for (c, vc) in v.iter().enumerate() {
                dot = dot.add(&a[i][c].mul(vc));
            }
            col.push(dot.neg());
            if k + 1 < i {
                v = (0..i)
                    .map(|r| {
                        let mut s = zero.clone();
                        for (c, vc) in v.iter().enumerate() {
                            s = s.add(&a[r][c].mul(vc));
                        }
                        s
                    })
                    .collect();
            }
        }
        let mut next = vec![zero.clone(); i + 2];
        for (j, slot) in next.iter_mut().enumerate() {
            for (l, vl) in vect.iter().enumerate().take(j.min(i) + 1) {
                *slot = slot.add(&col[j - l].mul(vl));
            }
        }
        vect = next;
    }
    vect.reverse();
    KPoly::new(field, var, vect)
}

/// Eisenstein polynomial of degree `p^nu` defining a totally ramified
/// extension; `a_k` is the coefficient of `X^{p^nu - k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinPoly {
    poly: KPoly,
    nu: u32,
    n: usize,
}

impl EisensteinPoly {
    pub fn new(poly: KPoly) -> Result<Self> {
        let field = poly.field().clone();
        let p = field.p() as usize;
        let n = poly.degree();
        if n < p {
            return Err(Error::NotEisenstein(format!("degree {n} is not a positive power of p")));
        }
        let mut nu = 0u32;
        let mut d = n;
        while d % p == 0 {
            d /= p;
            nu += 1;
        }
        if d != 1 {
            return Err(Error::NotEisenstein(format!("degree {n} is not a power of {p}")));
        }
        let lead = poly.leading();
        if lead.sub(&Series::one(&field, poly.var(), EXACT)).valuation_bound() < 1
            || lead.coeff(0) != Fe::ONE
            || lead.valuation_bound() != 0
        {
            return Err(Error::NotEisenstein("polynomial is not monic".into()));
        }
        for k in 1..=n {
            let a = poly.coeff(n - k);
            if a.valuation_bound() < 1 {
                if a.is_indistinguishable_from_zero() {
                    return Err(Error::InsufficientPrecision("Eisenstein coefficient not known mod t"));
                }
                return Err(Error::NotEisenstein(format!("a_{k} has valuation {}", a.valuation_bound())));
            }
        }
        let an = poly.coeff(0);
        if an.is_indistinguishable_from_zero() {
            if an.precision() <= 1 {
                return Err(Error::InsufficientPrecision("constant term not known mod t^2"));
            }
            return Err(Error::NotEisenstein("constant term vanishes".into()));
        }
        if an.valuation_bound() != 1 {
            return Err(Error::NotEisenstein(format!("constant term has valuation {}", an.valuation_bound())));
        }
        Ok(EisensteinPoly { poly, nu, n })
    }

    pub fn poly(&self) -> &KPoly {
        &self.poly
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.poly.field()
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Smallest precision among the coefficients.
    pub fn precision(&self) -> i64 {
        self.poly.coeffs().iter().map(|c| c.precision()).min().unwrap_or(EXACT)
    }

    /// `a_k` for `1 <= k <= p^nu`.
    pub fn a(&self, k: usize) -> Series {
        self.poly.coeff(self.n - k)
    }

    /// Whether the constant term is exactly `-t` at its precision.
    pub fn is_normalized(&self) -> bool {
        let field = self.field();
        let minus_t = Series::monomial(field, self.poly.var(), field.neg(Fe::ONE), 1, EXACT);
        self.a(self.n).sub(&minus_t).is_indistinguishable_from_zero()
    }

    /// Rewrites the coefficients in the uniformizer `t' = -a_{p^nu}` so that
    /// the constant term becomes `-t'`; the variable name is kept.
    pub fn rebase(&self) -> Result<EisensteinPoly> {
        let field = self.field().clone();
        let var = self.poly.var();
        let tprime = self.a(self.n).neg();
        let t_of_tprime = tprime.revert()?;
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|c| {
                let prec = c.precision();
                let out = c.compose(&t_of_tprime)?;
                Ok(if prec >= EXACT { out } else { out.truncate(prec) })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut coeffs = coeffs;
        let prec = coeffs[0].precision();
        coeffs[0] = Series::monomial(&field, var, field.neg(Fe::ONE), 1, prec);
        EisensteinPoly::new(KPoly::new(&field, var, coeffs))
    }

    /// `c_{i,h}`: the coefficient of `t^h` in `a_i`, extended by `a_{i+p^nu} = t a_i`.
    pub fn c(&self, i: usize, h: i64) -> Result<Fe> {
        debug_assert!(i >= 1);
        let k1 = (i - 1) / self.n;
        let k0 = i - k1 * self.n;
        self.a(k0).known_coeff(h - k1 as i64)
    }

    /// Norm of the class of `a` in `L = K[X]/(g)`.
    pub fn norm(&self, a: &KPoly) -> Result<Series> {
        norm(self, a)
    }
}

/// `N_{L/K}(a) = det(multiplication by a) = Res(g, a)`.
pub fn norm(g: &EisensteinPoly, a: &KPoly) -> Result<Series> {
    let m = mult_matrix(g.poly(), a);
    determinant(m, g.field(), g.poly().var())
}

/// Monic polynomial whose roots are the k-th powers of the roots of `g`.
pub fn power_char_poly(g: &EisensteinPoly, k: usize) -> Result<KPoly> {
    let p = g.field().p() as usize;
    if k == 0 || k % p == 0 {
        return Err(Error::KDivisibleByP);
    }
    let xk = KPoly::x_pow_mod(g.poly(), k);
    let m = mult_matrix(g.poly(), &xk);
    Ok(charpoly(&m, g.field(), g.poly().var()))
}

/// `N_{L/K}(1 - r X^k) = r^{p^nu} g_k(r^{-1})`.
pub fn norm_one_minus(g: &EisensteinPoly, r: Fe, k: usize) -> Result<Series> {
    let field = g.field();
    let var = g.poly().var();
    if r.is_zero() {
        if k % field.p() as usize == 0 {
            return Err(Error::KDivisibleByP);
        }
        return Ok(Series::one(field, var, EXACT));
    }
    let gk = power_char_poly(g, k)?;
    let n = g.degree();
    let mut acc = Series::zero(field, var, EXACT);
    for i in 0..=n {
        let rp = field.pow(r, (n - i) as i64);
        acc = acc.add(&gk.coeff(i).scale(rp));
    }
    Ok(acc)
}

/// Same value as [`norm_one_minus`], through the multiplication matrix.
pub fn norm_one_minus_direct(g: &EisensteinPoly, r: Fe, k: usize) -> Result<Series> {
    let field = g.field();
    let var = g.poly().var();
    let mut coeffs = vec![Series::zero(field, var, EXACT); k + 1];
    coeffs[0] = Series::one(field, var, EXACT);
    coeffs[k] = Series::monomial(field, var, field.neg(r), 0, EXACT);
    norm(g, &KPoly::new(field, var, coeffs).rem_monic(g.poly()))
}

/// `p`-adic valuation of a positive integer.
pub fn vp(mut i: u64, p: u64) -> u32 {
    debug_assert!(i > 0);
    let mut v = 0;
    while i % p == 0 {
        i /= p;
        v += 1;
    }
    v
}

/// Lower bound `f_i = ceil(b - (p^{v_p(i)} b - i) / p^nu)` for `v_K(a_i)`.
pub fn f_bound(p: u32, nu: u32, b: i64, i: u64) -> i64 {
    let n = (p as i64).pow(nu);
    let pj = (p as i64).pow(vp(i, p as u64));
    let num = b * n - (pj * b - i as i64);
    Integer::div_ceil(&num, &n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, m: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    fn tpoly(k: &Arc<FieldCtx>, terms: &[(usize, &[(i64, i64)])], prec: i64) -> KPoly {
        let deg = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Series::zero(k, 't', EXACT); deg + 1];
        for &(i, ts) in terms {
            let ts: Vec<(i64, Fe)> = ts.iter().map(|&(e, c)| (e, k.from_int(c))).collect();
            let pr = if i == deg { EXACT } else { prec };
            coeffs[i] = Series::from_terms(k, 't', &ts, pr);
        }
        KPoly::new(k, 't', coeffs)
    }

    fn x2txt(k: &Arc<FieldCtx>) -> EisensteinPoly {
        EisensteinPoly::new(tpoly(k, &[(2, &[(0, 1)]), (1, &[(1, 1)]), (0, &[(1, 1)])], EXACT)).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let k = field(5, 1);
        let s = k.from_int(2);
        let r = k.from_int(4);
        let f = KPoly::new(&k, 't', vec![Series::monomial(&k, 't', k.neg(s), 0, EXACT), Series::one(&k, 't', EXACT)]);
        let g = KPoly::new(&k, 't', vec![Series::monomial(&k, 't', k.neg(r), 0, EXACT), Series::one(&k, 't', EXACT)]);
        assert_eq!(resultant(&f, &g).unwrap(), Series::monomial(&k, 't', k.sub(s, r), 0, EXACT));
        let k2 = field(2, 1);
        let f = x2txt(&k2);
        let x = KPoly::x(&k2, 't');
        assert_eq!(resultant(f.poly(), &x).unwrap(), Series::var(&k2, 't'));
        let sq = tpoly(&k2, &[(2, &[(0, 1)])], EXACT);
        assert!(resultant(&sq, &sq).unwrap().is_exact_zero());
    }

    #[test]
    fn norm_examples() {
        let k = field(2, 1);
        let g = x2txt(&k);
        assert_eq!(norm(&g, &KPoly::x(&k, 't')).unwrap(), Series::var(&k, 't'));
        let one_plus_x = tpoly(&k, &[(1, &[(0, 1)]), (0, &[(0, 1)])], EXACT);
        assert_eq!(norm(&g, &one_plus_x).unwrap(), Series::one(&k, 't', EXACT));
        let one = KPoly::constant(Series::one(&k, 't', EXACT));
        assert_eq!(norm(&g, &one).unwrap(), Series::one(&k, 't', EXACT));
    }

    #[test]
    fn power_char_poly_examples() {
        let k = field(2, 1);
        let g = x2txt(&k);
        assert_eq!(power_char_poly(&g, 1).unwrap(), *g.poly());
        let g3 = power_char_poly(&g, 3).unwrap();
        assert_eq!(g3.degree(), 2);
        assert_eq!(g3.coeff(2), Series::one(&k, 't', EXACT));
        assert_eq!(g3.coeff(0), Series::monomial(&k, 't', Fe::ONE, 3, EXACT));
        assert_eq!(power_char_poly(&g, 2), Err(Error::KDivisibleByP));
    }

    #[test]
    fn power_char_poly_odd_p_constant_term() {
        let k = field(3, 1);
        // X^3 + t X + t: constant term of g_k must be -(-t)^k... i.e. (-1)^{3} prod(-theta^k)
        let g = EisensteinPoly::new(tpoly(&k, &[(3, &[(0, 1)]), (1, &[(1, 1)]), (0, &[(1, 2)])], EXACT)).unwrap();
        for kk in [1usize, 2, 4, 5] {
            let gk = power_char_poly(&g, kk).unwrap();
            // g_k(0) = -prod(theta^k) = -(N theta)^k = -t^k  (degree 3, N(theta) = -a_3 = t)
            assert_eq!(gk.coeff(0), Series::monomial(&k, 't', k.from_int(-1), kk as i64, EXACT));
        }
    }

    #[test]
    fn norm_one_minus_paths_agree() {
        let k = field(2, 1);
        let g = x2txt(&k);
        assert_eq!(norm_one_minus(&g, Fe::ZERO, 1).unwrap(), Series::one(&k, 't', EXACT));
        assert_eq!(norm_one_minus(&g, Fe::ONE, 1).unwrap(), Series::one(&k, 't', EXACT));
        assert_eq!(
            norm_one_minus(&g, Fe::ONE, 3).unwrap().truncate(40),
            norm_one_minus_direct(&g, Fe::ONE, 3).unwrap().truncate(40)
        );
        let k9 = field(3, 2);
        let g = EisensteinPoly::new(tpoly(&k9, &[(3, &[(0, 1)]), (2, &[(2, 1)]), (1, &[(1, 1)]), (0, &[(1, 2)])], 6)).unwrap();
        for r in k9.elements().skip(1).take(4) {
            for kk in [1usize, 2, 4] {
                let a = norm_one_minus(&g, r, kk).unwrap().truncate(6);
                let b = norm_one_minus_direct(&g, r, kk).unwrap().truncate(6);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn eisenstein_validation() {
        let k = field(2, 1);
        assert!(EisensteinPoly::new(tpoly(&k, &[(2, &[(0, 1)]), (0, &[(2, 1)])], EXACT)).is_err());
        assert!(EisensteinPoly::new(tpoly(&k, &[(3, &[(0, 1)]), (0, &[(1, 1)])], EXACT)).is_err());
        assert!(EisensteinPoly::new(tpoly(&k, &[(2, &[(0, 1)]), (1, &[(0, 1)]), (0, &[(1, 1)])], EXACT)).is_err());
        let g = x2txt(&k);
        assert_eq!(g.nu(), 1);
        assert!(g.is_normalized());
        assert_eq!(g.c(1, 1).unwrap(), Fe::ONE);
        assert_eq!(g.c(3, 2).unwrap(), Fe::ONE);
        assert_eq!(g.c(3, 1).unwrap(), Fe::ZERO);
    }

    #[test]
    fn rebase_makes_constant_term_minus_t() {
        let k = field(3, 1);
        let g = EisensteinPoly::new(tpoly(&k, &[(3, &[(0, 1)]), (1, &[(2, 1)]), (0, &[(1, 1), (2, 1)])], 8)).unwrap();
        assert!(!g.is_normalized());
        let h = g.rebase().unwrap();
        assert!(h.is_normalized());
        assert_eq!(h.precision(), 8);
    }

    #[test]
    fn f_bound_values() {
        // p = 2, nu = 1, b = 1: f_1 = ceil(1 - 0/2) = 1, f_2 = ceil(1 - 0) = 1
        assert_eq!(f_bound(2, 1, 1, 1), 1);
        assert_eq!(f_bound(2, 2, 3, 3), 3);
        assert_eq!(f_bound(3, 2, 4, 1), 4);
        assert_eq!(f_bound(3, 2, 4, 12), 4);
    }

    #[test]
    fn formatting() {
        let k = field(2, 1);
        assert_eq!(x2txt(&k).poly().format(), "X^2 + t*X + t");
    }
}
