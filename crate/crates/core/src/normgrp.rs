//! The norm group `H = N(L^x)` seen in the finite quotient
//! `K^x / (K^x)^p U^{b+1}`, and the subspace tests on `Lambda(H ∩ U^{k+1})`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exp::{e_eval, e_series, lambda_inverse, unit_coordinates, WLayout, WVector};
use crate::gf::{Fe, FieldCtx};
use crate::insep::{break_from_indices, indices_from_minpoly};
use crate::linalg::{in_span_mod_p, kernel_mod_p, rref_mod_p};
use crate::localpoly::{f_bound, norm, EisensteinPoly, KPoly};
use crate::series::{Series, EXACT};

/// Default cap on enumerated classes.
pub const ENUMERATION_CAP: u128 = 1 << 20;

/// An F_p-subspace of `W + <t>`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct WSubspace {
    field: Arc<FieldCtx>,
    pub layout: WLayout,
    pub gens: Vec<WVector>,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl PartialEq for WSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.layout == other.layout && self.basis == other.basis
    }
}

impl Eq for WSubspace {}

impl WSubspace {
    pub fn new(field: &Arc<FieldCtx>, b: i64, gens: Vec<WVector>) -> Self {
        let layout = WLayout::new(field, b);
        let width = layout.dim() + 1;
        let rows: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| {
                let mut r = g.row();
                r.resize(width, 0);
                r
            })
            .collect();
        let (basis, pivots) = rref_mod_p(&rows, field.p());
        let basis = basis
            .into_iter()
            .map(|mut r| {
                r.resize(width, 0);
                r
            })
            .collect();
        WSubspace { field: field.clone(), layout, gens, basis, pivots }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn b(&self) -> i64 {
        self.layout.b
    }

    /// Echelonized basis rows `[t, coords...]`.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.layout.dim() + 1
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.rank()
    }

    pub fn contains_row(&self, row: &[u32]) -> bool {
        in_span_mod_p(&self.basis, &self.pivots, row, self.field.p())
    }

    pub fn contains(&self, w: &WVector) -> bool {
        self.contains_row(&w.row())
    }
}

fn check_normalized(g: &EisensteinPoly) -> Result<i64> {
    if !g.is_normalized() {
        return Err(Error::PreconditionViolated("constant term must be -t; rebase first".into()));
    }
    let iv = indices_from_minpoly(g)?;
    let b = break_from_indices(&iv)?;
    if g.precision() < b + 1 {
        return Err(Error::InsufficientPrecision("coefficients needed modulo t^{b+1}"));
    }
    Ok(b)
}

fn t_generator(layout: &WLayout) -> WVector {
    WVector { b: layout.b, t: 1, coords: vec![0; layout.dim()] }
}

/// Generators `N(E_p(theta_l pi^k))` and `t = N(pi)`, with the norms computed
/// as resultants.
pub fn norm_generators_exact(g: &EisensteinPoly) -> Result<WSubspace> {
    let b = check_normalized(g)?;
    let field = g.field().clone();
    let var = g.poly().var();
    let p = field.p() as i64;
    let n = g.degree() as i64;
    let layout = WLayout::new(&field, b);
    let bound = (b + 1) * n;
    let mut gens = vec![t_generator(&layout)];
    for k in layout.levels() {
        let terms = Integer::div_ceil(&bound, &k) as usize;
        let e = e_series(p as u32, terms);
        for theta in field.basis_elements() {
            let mut coeffs = vec![Series::zero(&field, var, EXACT); (k as usize) * (terms - 1) + 1];
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    let c = field.mul_int(field.pow(theta, i as i64), ei as i64);
                    coeffs[k as usize * i] = Series::monomial(&field, var, c, 0, EXACT);
                }
            }
            let a = KPoly::new(&field, var, coeffs).rem_monic(g.poly());
            let nm = norm(g, &a)?;
            gens.push(unit_coordinates(&nm, b)?);
        }
    }
    Ok(WSubspace::new(&field, b, gens))
}

/// The same generators read off the coefficients `c_{i,h}` of `g` through the
/// congruence `N(E(r pi^k)) = E(r^{p^nu} t^k) prod E(-k c_{kp^j,h} r^{p^j} t^h)`
/// modulo `U^{b+1}`.
pub fn norm_generators_congruence(g: &EisensteinPoly) -> Result<WSubspace> {
    let b = check_normalized(g)?;
    let field = g.field().clone();
    let p = field.p();
    let nu = g.nu();
    let layout = WLayout::new(&field, b);
    let mut gens = vec![t_generator(&layout)];
    let add_at = |coords: &mut Vec<u32>, h: i64, c: Fe| {
        if let Some(off) = layout.offset(h) {
            for (slot, x) in coords[off..off + layout.m].iter_mut().zip(field.coords(c)) {
                *slot = (*slot + x) % p;
            }
        }
    };
    for k in layout.levels() {
        for r in field.basis_elements() {
            let mut coords = vec![0u32; layout.dim()];
            add_at(&mut coords, k, field.frobenius(r, nu as i64));
            for j in 0..nu {
                let i = k as u64 * (p as u64).pow(j);
                let rj = field.frobenius(r, j as i64);
                for h in f_bound(p, nu, b, i).max(1)..=b {
                    let c = g.c(i as usize, h)?;
                    if !c.is_zero() {
                        add_at(&mut coords, h, field.mul_int(field.mul(c, rj), -k));
                    }
                }
            }
            gens.push(WVector { b, t: 0, coords });
        }
    }
    Ok(WSubspace::new(&field, b, gens))
}

/// Levels `h` with `k < h <= b`, `p ∤ h`: the part of `M^{k+1}/M^{b+1}` seen by `W`.
fn upper_levels(layout: &WLayout, k: i64) -> Vec<i64> {
    layout.levels().filter(|&h| h > k).collect()
}

fn row_of(field: &FieldCtx, layout: &WLayout, levels: &[i64], alpha: &[Fe]) -> Vec<u32> {
    let mut row = vec![0u32; layout.dim() + 1];
    for (&h, &a) in levels.iter().zip(alpha) {
        let off = layout.offset(h).expect("level in range") + 1;
        row[off..off + layout.m].copy_from_slice(&field.coords(a));
    }
    row
}

/// Whether `Lambda(H ∩ U^{k+1})` is stable under `F_{p^nu}`, for
/// `k + 1 >= ceil(b/p)`. On that range `E_p` is additive modulo `U^{b+1}`
/// and `E_p(c t^h)` is a p-th power for `p | h`, so the set is the preimage of
/// `H` under a linear map and it suffices to test a spanning set.
pub fn lambda_subspace_test(h: &WSubspace, k: i64, nu: u32) -> Result<bool> {
    let field = h.field().clone();
    let p = field.p();
    let b = h.b();
    let Some(zetas) = field.subfield_basis(nu as usize) else {
        return Ok(false);
    };
    if k >= b {
        return Ok(true);
    }
    if k < 0 || k + 1 < Integer::div_ceil(&b, &(p as i64)) {
        return Err(Error::PreconditionViolated("need k + 1 >= ceil(b/p)".into()));
    }
    let layout = &h.layout;
    let levels = upper_levels(layout, k);
    let m = layout.m;
    let na = levels.len() * m;
    let nb = h.rank();
    // unknowns: alpha coordinates, then coefficients on the basis of H
    let mut eqs = vec![vec![0u32; na + nb]; layout.dim() + 1];
    for (li, &lev) in levels.iter().enumerate() {
        let off = layout.offset(lev).unwrap() + 1;
        for l in 0..m {
            eqs[off + l][li * m + l] = 1;
        }
    }
    for (bi, row) in h.basis().iter().enumerate() {
        for (d, &x) in row.iter().enumerate() {
            eqs[d][na + bi] = (p - x) % p;
        }
    }
    for sol in kernel_mod_p(&eqs, na + nb, p) {
        let alpha: Vec<Fe> = (0..levels.len()).map(|li| field.from_coords(&sol[li * m..(li + 1) * m])).collect();
        for &z in &zetas {
            let scaled: Vec<Fe> = alpha.iter().map(|&a| field.mul(z, a)).collect();
            if !h.contains_row(&row_of(&field, layout, &levels, &scaled)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same test by brute force: every unit `u` in `U^{k+1}` modulo `U^{b+1}`
/// with class in `H` is mapped through `Lambda`, scaled by each `zeta` in
/// `F_{p^nu}`, exponentiated back and tested for membership.
pub fn lambda_subspace_enumerate(h: &WSubspace, k: i64, nu: u32, cap: u128) -> Result<bool> {
    let field = h.field().clone();
    let b = h.b();
    let Some(zetas) = field.subfield_elements(nu as usize) else {
        return Ok(false);
    };
    if k >= b {
        return Ok(true);
    }
    let q = field.q() as u128;
    let free = (b - k) as u32;
    let size = q.checked_pow(free).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let var = 't';
    for idx in 0..size {
        let mut terms = vec![(0i64, Fe::ONE)];
        let mut r = idx;
        for e in (k + 1)..=b {
            terms.push((e, field.from_index((r % q) as u32)));
            r /= q;
        }
        let u = Series::from_terms(&field, var, &terms, b + 1);
        if !h.contains(&unit_coordinates(&u, b)?) {
            continue;
        }
        let alpha = lambda_inverse(&u)?;
        for &z in &zetas {
            let v = e_eval(&alpha.scale(z), b + 1)?;
            if !h.contains(&unit_coordinates(&v, b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `i_1 = p^2 b - max(b, p k)` for `nu = 2`, where `k` is the least level at
/// which `Lambda(H ∩ U^{k+1})` is an `F_{p^2}`-space (`k = b` if `F_{p^2}` is
/// not in the residue field). Levels below `ceil(b/p) - 1` give the same
/// value as `ceil(b/p) - 1` since then `p k < b`.
pub fn cor_combining_i1(h: &WSubspace, b: i64) -> Result<i64> {
    let field = h.field();
    let p = field.p() as i64;
    let k = if field.subfield_elements(2).is_none() {
        b
    } else {
        let start = (Integer::div_ceil(&b, &p) - 1).max(0);
        let mut k = b;
        for cand in start..=b {
            if lambda_subspace_test(h, cand, 2)? {
                k = cand;
                break;
            }
        }
        k
    };
    Ok(p * p * b - b.max(p * k))
}
