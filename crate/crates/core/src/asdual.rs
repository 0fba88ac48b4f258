//! The Artin-Schreier side: reduction to `K_0`, the dual group `B_0` of a
//! norm group, the maps `psi_k`, the coefficient recovery, and closed forms
//! for the indices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exp::{e_eval, WLayout};
use crate::gf::{Fe, FieldCtx};
use crate::insep::IndexVector;
use crate::linalg::kernel_mod_p;
use crate::localpoly::{f_bound, vp};
use crate::normgrp::WSubspace;
use crate::schmid::pairing;
use crate::series::{Series, EXACT};

/// Element `x_0 + x_1 t^{-1} + ... + x_s t^{-s}` of `K_0`: `x_0` lies in the
/// fixed complement of `wp(K̄)` and `x_{pi} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedElem {
    pub x0: Fe,
    /// `xs[i - 1] = x_i`.
    pub xs: Vec<Fe>,
}

impl ReducedElem {
    pub fn x(&self, i: usize) -> Fe {
        if i == 0 {
            self.x0
        } else {
            self.xs.get(i - 1).copied().unwrap_or(Fe::ZERO)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.xs.iter().all(|x| x.is_zero())
    }

    /// `-max { i : x_i != 0 }`, or `None` for zero and constants give `Some(0)`.
    pub fn valuation(&self) -> Option<i64> {
        if let Some(i) = self.xs.iter().rposition(|x| !x.is_zero()) {
            return Some(-(i as i64 + 1));
        }
        if self.x0.is_zero() {
            None
        } else {
            Some(0)
        }
    }

    pub fn to_series(&self, field: &alloc::sync::Arc<FieldCtx>, var: char) -> Series {
        let mut terms: Vec<(i64, Fe)> = self.xs.iter().enumerate().map(|(i, &c)| (-(i as i64) - 1, c)).collect();
        terms.push((0, self.x0));
        Series::from_terms(field, var, &terms, EXACT)
    }
}

/// Splits `beta = xi + z^p - z` with `xi` in `K_0`. Only the coefficients of
/// `beta` below `var^1` matter for `xi`; `z` carries the precision of `beta`.
pub fn wp_reduce(beta: &Series) -> Result<(Series, Series)> {
    let field = beta.field().clone();
    let var = beta.var_name();
    let p = field.p() as i64;
    let prec = beta.precision();
    if prec < 1 {
        return Err(Error::InsufficientPrecision("Artin-Schreier reduction needs beta mod var"));
    }
    let lo = beta.valuation_bound().min(0);
    let mut neg: Vec<Fe> = (lo..=0).map(|e| beta.coeff(e)).collect();
    let idx = |e: i64| (e - lo) as usize;
    let mut z_terms: Vec<(i64, Fe)> = Vec::new();
    for e in lo..0 {
        let c = neg[idx(e)];
        if c.is_zero() || e % p != 0 {
            continue;
        }
        // c t^e = wp(r t^{e/p}) + r t^{e/p} with r^p = c
        let r = field.frobenius(c, -1);
        neg[idx(e)] = Fe::ZERO;
        let i = idx(e / p);
        neg[i] = field.add(neg[i], r);
        z_terms.push((e / p, r));
    }
    let (y, s) = field.wp_decompose(neg[idx(0)]);
    neg[idx(0)] = field.mul_int(field.wp_complement(), s as i64);
    z_terms.push((0, y));
    let xi_terms: Vec<(i64, Fe)> = (lo..=0).map(|e| (e, neg[idx(e)])).collect();
    let xi = Series::from_terms(&field, var, &xi_terms, EXACT);
    let mut z = Series::from_terms(&field, var, &z_terms, EXACT);
    // positive tail x = wp(-(x + x^p + x^{p^2} + ...))
    let tail_terms: Vec<(i64, Fe)> = beta.terms().filter(|&(e, _)| e >= 1).collect();
    let tail = Series::from_terms(&field, var, &tail_terms, prec);
    if !tail.is_indistinguishable_from_zero() || prec < EXACT {
        let mut acc = Series::zero(&field, var, prec);
        let mut pw = tail.clone();
        while !pw.is_indistinguishable_from_zero() {
            acc = acc.add(&pw);
            pw = pw.pth_power().truncate(prec);
        }
        z = z.sub(&acc.truncate(prec));
    }
    Ok((xi, z))
}

/// The representative of `beta + wp(K)` in `K_0`.
pub fn reduce_to_k0(beta: &Series) -> Result<ReducedElem> {
    let (xi, _) = wp_reduce(beta)?;
    let s = (-xi.valuation_bound()).max(0) as usize;
    Ok(ReducedElem { x0: xi.coeff(0), xs: (1..=s).map(|i| xi.coeff(-(i as i64))).collect() })
}

/// A basis of `B_0 = B ∩ K_0` together with the top coefficients `V` and
/// the maps `psi_k`.
#[derive(Clone, Debug)]
pub struct B0Basis {
    pub field: Arc<FieldCtx>,
    pub nu: u32,
    pub b: i64,
    pub elems: Vec<ReducedElem>,
    /// `v[i]` is the `t^{-b}` coefficient of `elems[i]`; an F_p-basis of `V`.
    pub v: Vec<Fe>,
}

impl B0Basis {
    /// `psi_k(v[i])`.
    pub fn psi(&self, k: i64, i: usize) -> Fe {
        self.elems[i].x(k as usize)
    }

    /// All `p^nu` elements of `B_0` as coefficient vectors `(x_1, ..., x_b)`.
    pub fn enumerate(&self) -> Vec<Vec<Fe>> {
        let field = &self.field;
        let p = field.p() as u64;
        let total = p.pow(self.nu);
        (0..total)
            .map(|mut idx| {
                let mut x = vec![Fe::ZERO; self.b as usize];
                for e in &self.elems {
                    let c = field.from_int((idx % p) as i64);
                    idx /= p;
                    for (i, xi) in x.iter_mut().enumerate() {
                        *xi = field.add(*xi, field.mul(c, e.x(i + 1)));
                    }
                }
                x
            })
            .collect()
    }
}

/// Solves for `B_0` as the set of `xi = sum x_k t^{-k}` in `K_0` orthogonal to
/// `H`. The pairing is evaluated on the basis `theta_l t^{-k}` against the
/// units `E_p(theta_l' t^k')` that index the coordinates of `W`.
pub fn b0_from_h(h: &WSubspace, b: i64) -> Result<B0Basis> {
    let field = h.field().clone();
    let p = field.p();
    if h.b() != b {
        return Err(Error::PreconditionViolated(format!("subspace has level {}, expected {b}", h.b())));
    }
    let layout = WLayout::new(&field, b);
    let dim = layout.dim();
    let t = Series::var(&field, 't');
    let mut t_row = vec![0u32; dim + 1];
    t_row[0] = 1;
    if !h.contains_row(&t_row) {
        return Err(Error::PreconditionViolated("t is not in the norm group".into()));
    }
    let nu = h.codim();
    if nu == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let basis = field.basis_elements();
    let xis: Vec<Series> = (0..dim)
        .map(|d| {
            let (k, l) = layout.label(d);
            Series::monomial(&field, 't', basis[l], -k, EXACT)
        })
        .collect();
    let etas: Vec<Series> = (0..dim)
        .map(|d| {
            let (k, l) = layout.label(d);
            e_eval(&Series::monomial(&field, 't', basis[l], k, EXACT), b + 2)
        })
        .collect::<Result<_>>()?;
    let mut pmat = vec![vec![0u32; dim + 1]; dim];
    for (d, xi) in xis.iter().enumerate() {
        pmat[d][0] = pairing(xi, &t)?;
        for (e, eta) in etas.iter().enumerate() {
            pmat[d][e + 1] = pairing(xi, eta)?;
        }
    }
    let eqs: Vec<Vec<u32>> = h
        .basis()
        .iter()
        .map(|row| {
            (0..dim)
                .map(|d| {
                    let s: u64 = row.iter().zip(&pmat[d]).map(|(&a, &b)| a as u64 * b as u64).sum();
                    (s % p as u64) as u32
                })
                .collect()
        })
        .collect();
    let ker = kernel_mod_p(&eqs, dim, p);
    if ker.len() != nu {
        return Err(Error::DimensionMismatch { expected: nu, found: ker.len() });
    }
    let elems: Vec<ReducedElem> = ker
        .iter()
        .map(|sol| {
            let mut xs = vec![Fe::ZERO; b as usize];
            for k in layout.levels() {
                let off = layout.offset(k).unwrap();
                xs[k as usize - 1] = field.from_coords(&sol[off..off + layout.m]);
            }
            ReducedElem { x0: Fe::ZERO, xs }
        })
        .collect();
    let v: Vec<Fe> = elems.iter().map(|e| e.x(b as usize)).collect();
    if !field.fp_independent(&v) {
        return Err(Error::NotSingleBreak("top coefficients of B_0 are dependent".into()));
    }
    Ok(B0Basis { field, nu: nu as u32, b, elems, v })
}

/// `w_{jk}` with `psi_k(x) = sum_j w_{jk} x^{p^{nu-j}}` on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCoeffs {
    pub p: u32,
    pub nu: u32,
    pub b: i64,
    /// `w[j][k - 1] = w_{jk}`.
    pub w: Vec<Vec<Fe>>,
}

impl WCoeffs {
    pub fn w_series(&self, field: &Arc<FieldCtx>, j: usize) -> Series {
        let terms: Vec<(i64, Fe)> = self.w[j].iter().enumerate().map(|(k, &c)| (-(k as i64) - 1, c)).collect();
        Series::from_terms(field, 't', &terms, EXACT)
    }

    /// `v_K(w_j)`, `None` for `w_j = 0`.
    pub fn valuation(&self, j: usize) -> Option<i64> {
        self.w[j].iter().rposition(|c| !c.is_zero()).map(|k| -(k as i64) - 1)
    }
}

pub fn w_interpolate(b0: &B0Basis) -> Result<WCoeffs> {
    let field = &b0.field;
    let nu = b0.nu as usize;
    let mut w = vec![vec![Fe::ZERO; b0.b as usize]; nu];
    for k in 1..=b0.b {
        let values: Vec<Fe> = (0..nu).map(|i| b0.psi(k, i)).collect();
        let sol = field.moore_solve(&b0.v, &values, nu)?;
        for (j, c) in sol.into_iter().enumerate() {
            w[j][k as usize - 1] = c;
        }
    }
    Ok(WCoeffs { p: field.p(), nu: b0.nu, b: b0.b, w })
}

/// Recovered coefficients `c_{i,b}` keyed by `i = k p^j`, `p ∤ k <= b`, `j < nu`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CTable {
    pub entries: BTreeMap<u64, Fe>,
}

impl CTable {
    pub fn get(&self, i: u64) -> Option<Fe> {
        self.entries.get(&i).copied()
    }
}

/// Reverse induction on `k`: each step solves a Moore system for
/// `y_j = c_{kp^j,b}^{p^{nu-j}}`, the lower terms of the recurrence being
/// known through `c_{kp^j,h} = c_{kp^j + (b-h)p^nu, b}`. The indices are then
/// read off the recovered `c_{i,b}`.
pub fn algorithm_compute(b0: &B0Basis, b: i64, nu: u32) -> Result<(IndexVector, CTable)> {
    let field = &b0.field;
    let p = field.p();
    let pl = p as u64;
    if b % p as i64 == 0 {
        return Err(Error::KDivisibleByP);
    }
    if b0.nu != nu || b0.v.len() != nu as usize {
        return Err(Error::DimensionMismatch { expected: nu as usize, found: b0.v.len() });
    }
    let nuz = nu as usize;
    let binv = field.inv(field.from_int(b));
    let mut table = CTable::default();
    for k in (1..=b).rev().filter(|k| k % p as i64 != 0) {
        let mut rhs: Vec<Fe> = (0..nuz).map(|i| b0.psi(k, i)).collect();
        for j in 0..nu {
            let i = k as u64 * pl.pow(j);
            let tw = (nu - j) as i64;
            for h in f_bound(p, nu, b, i).max(1)..b {
                if h % p as i64 == 0 {
                    continue;
                }
                let kk = k as u64 + (b - h) as u64 * pl.pow(nu - j);
                let c = table.get(kk * pl.pow(j)).ok_or_else(|| {
                    Error::PreconditionViolated(format!("c_{{{},b}} needed before it is known", kk * pl.pow(j)))
                })?;
                if c.is_zero() {
                    continue;
                }
                let coef = field.mul_int(field.frobenius(c, tw), h);
                for (ix, r) in rhs.iter_mut().enumerate() {
                    let term = field.mul(coef, field.frobenius(b0.psi(h, ix), tw));
                    *r = field.sub(*r, term);
                }
            }
        }
        let rhs: Vec<Fe> = rhs.into_iter().map(|r| field.mul(r, binv)).collect();
        let ys = field.moore_solve(&b0.v, &rhs, nuz)?;
        for (j, y) in ys.into_iter().enumerate() {
            table.entries.insert(k as u64 * pl.pow(j as u32), field.frobenius(y, j as i64 - nu as i64));
        }
    }
    let n = (p as i64).pow(nu);
    let mut indices = Vec::with_capacity(nuz + 1);
    for j in 0..nu {
        let upper = b as u64 * pl.pow(j);
        let best = table
            .entries
            .iter()
            .filter(|&(&i, c)| !c.is_zero() && i >= b as u64 && i <= upper && vp(i, pl) <= j)
            .map(|(&i, _)| b * n - i as i64)
            .min()
            .ok_or_else(|| Error::PreconditionViolated("no nonzero c_{i,b} in range".into()))?;
        indices.push(best);
    }
    indices.push(0);
    Ok((IndexVector::new(p, indices), table))
}

/// `i_j = b p^nu + min { p^{j'} v(w_{j'}) : j' <= j }` for `b <= p - 1`.
pub fn indices_via_w_small_b(w: &WCoeffs, b: i64) -> Result<IndexVector> {
    let p = w.p as i64;
    if b >= p {
        return Err(Error::PreconditionViolated(format!("b = {b} is not below p = {p}")));
    }
    let n = p.pow(w.nu);
    let mut best = i64::MAX;
    let mut indices = Vec::new();
    for j in 0..w.nu as usize {
        if let Some(v) = w.valuation(j) {
            best = best.min(p.pow(j as u32) * v);
        }
        indices.push(b * n + best);
    }
    indices.push(0);
    Ok(IndexVector::new(w.p, indices))
}

/// `i_1 = b p^2 + min(-b, p v(w_1))` for `nu = 2`.
pub fn i1_via_w_nu2(w: &WCoeffs, b: i64) -> Result<i64> {
    if w.nu != 2 {
        return Err(Error::PreconditionViolated("needs nu = 2".into()));
    }
    let p = w.p as i64;
    let tail = w.valuation(1).map_or(-b, |v| (-b).min(p * v));
    Ok(b * p * p + tail)
}

/// The three conditions that are equivalent for `ceil(b/p) <= k <= b - 1`:
/// the index bounds `i_j >= b p^nu - k p^j`, stability of `B_0 + M^{-k}`
/// under `F_{p^nu}`, and `v(w_j) >= -k`.
pub fn zpn_condition_check(b0: &B0Basis, w: &WCoeffs, iv: &IndexVector, k: i64) -> Result<(bool, bool, bool)> {
    let field = &b0.field;
    let p = field.p() as i64;
    let b = b0.b;
    let nu = b0.nu;
    if k < num_integer::Integer::div_ceil(&b, &p) || k > b - 1 {
        return Err(Error::PreconditionViolated(format!("k = {k} outside [ceil(b/p), b-1]")));
    }
    let n = p.pow(nu);
    let cond1 = (1..nu as usize).all(|j| iv.get(j) >= b * n - k * p.pow(j as u32));
    let cond3 = (1..nu as usize).all(|j| w.valuation(j).is_none_or(|v| v >= -k));
    let cond2 = match field.subfield_elements(nu as usize) {
        None => false,
        Some(zetas) => {
            let top = |x: &[Fe]| x[k as usize..].to_vec();
            let tops: Vec<Vec<Fe>> = b0.enumerate().iter().map(|x| top(x)).collect();
            zetas.iter().all(|&z| {
                b0.elems.iter().all(|e| {
                    let scaled: Vec<Fe> = (1..=b as usize).map(|i| field.mul(z, e.x(i))).collect();
                    tops.contains(&top(&scaled))
                })
            })
        }
    };
    Ok((cond1, cond2, cond3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insep::indices_from_minpoly;
    use crate::normgrp::norm_generators_exact;
    use crate::tower::{build, TowerOptions};

    fn f(p: u32, m: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    #[test]
    fn reduce_examples() {
        let k = f(2, 1);
        let b = Series::monomial(&k, 't', Fe::ONE, -2, EXACT);
        assert_eq!(reduce_to_k0(&b).unwrap(), ReducedElem { x0: Fe::ZERO, xs: vec![Fe::ONE] });
        let x = Series::monomial(&k, 't', Fe::ONE, -1, EXACT);
        assert!(reduce_to_k0(&x.pth_power().sub(&x)).unwrap().is_zero());
        let k4 = f(2, 2);
        // Tr(1) = 0 in F_4
        assert!(reduce_to_k0(&Series::one(&k4, 't', EXACT)).unwrap().is_zero());
    }

    #[test]
    fn reduction_identity_holds() {
        let k = f(3, 2);
        let a = k.generator();
        let beta = Series::from_terms(&k, 't', &[(-9, a), (-6, Fe::ONE), (-2, a), (0, Fe::ONE), (2, a)], 12);
        let (xi, z) = wp_reduce(&beta).unwrap();
        let back = xi.add(&z.pth_power()).sub(&z);
        assert_eq!(back.truncate(12), beta);
        assert_eq!(xi.valuation().unwrap(), -2);
        assert!(xi.terms().all(|(e, _)| e == 0 || e % 3 != 0));
    }

    fn mono(k: &Arc<FieldCtx>, c: Fe, e: i64) -> Series {
        Series::monomial(k, 't', c, e, EXACT)
    }

    fn pipeline(betas: &[Series]) -> (B0Basis, WCoeffs, IndexVector, IndexVector) {
        let built = build(betas, &TowerOptions::default()).unwrap();
        let h = norm_generators_exact(&built.minpoly).unwrap();
        let b0 = b0_from_h(&h, built.b).unwrap();
        let w = w_interpolate(&b0).unwrap();
        let (iv, _) = algorithm_compute(&b0, built.b, betas.len() as u32).unwrap();
        (b0, w, iv, indices_from_minpoly(&built.minpoly).unwrap())
    }

    #[test]
    fn quadratic_recovery() {
        let k = f(2, 1);
        let (b0, w, iv, direct) = pipeline(&[mono(&k, Fe::ONE, -1)]);
        assert_eq!(b0.v, vec![Fe::ONE]);
        assert_eq!(iv.indices, vec![1, 0]);
        assert_eq!(iv, direct);
        assert_eq!(w.valuation(0), Some(-1));
    }

    #[test]
    fn nine_recovery() {
        let k = f(3, 2);
        let a = k.generator();
        let (b0, w, iv, direct) = pipeline(&[mono(&k, Fe::ONE, -1), mono(&k, a, -1)]);
        let mut vs: Vec<Fe> = b0.enumerate().into_iter().map(|x| x[0]).collect();
        vs.sort();
        let mut all: Vec<Fe> = k.elements().collect();
        all.sort();
        assert_eq!(vs, all);
        assert_eq!(w.w, vec![vec![Fe::ONE], vec![Fe::ZERO]]);
        assert_eq!(iv.indices, vec![8, 8, 0]);
        assert_eq!(iv, direct);
        assert_eq!(indices_via_w_small_b(&w, 1).unwrap(), iv);
        assert_eq!(i1_via_w_nu2(&w, 1).unwrap(), 8);
    }

    #[test]
    fn full_w_is_rejected() {
        let k = f(2, 1);
        let layout = WLayout::new(&k, 1);
        let gens = vec![
            crate::exp::WVector { b: 1, t: 1, coords: vec![0] },
            crate::exp::WVector { b: 1, t: 0, coords: vec![1] },
        ];
        assert_eq!(layout.dim(), 1);
        let h = WSubspace::new(&k, 1, gens);
        assert!(matches!(b0_from_h(&h, 1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn larger_break_recovery_and_conditions() {
        let k = f(2, 2);
        let a = k.generator();
        let betas = [
            Series::from_terms(&k, 't', &[(-5, Fe::ONE), (-3, a)], EXACT),
            Series::from_terms(&k, 't', &[(-5, a), (-1, Fe::ONE)], EXACT),
        ];
        let (b0, w, iv, direct) = pipeline(&betas);
        assert_eq!(iv, direct);
        assert_eq!(i1_via_w_nu2(&w, 5).unwrap(), iv.get(1));
        for kk in 3..=4 {
            let (c1, c2, c3) = zpn_condition_check(&b0, &w, &iv, kk).unwrap();
            assert!(c1 == c2 && c2 == c3, "k = {kk}");
        }
    }
}
