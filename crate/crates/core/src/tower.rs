//! Forward construction: adjoin Artin-Schreier roots one at a time, carry a
//! uniformizer of each level, and read off the Eisenstein polynomial of the
//! top uniformizer over `K`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::asdual::wp_reduce;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::localpoly::{EisensteinPoly, KPoly};
use crate::series::{Series, EXACT};

/// Variable used for the uniformizer of every level above `K`.
pub const PI_VAR: char = 'u';

#[derive(Clone, Debug)]
pub struct TowerOptions {
    /// `N_K`: Eisenstein coefficients are produced modulo `t^{N_K}`.
    /// Defaults to `b + 2`.
    pub k_precision: Option<i64>,
    /// Replaces the exponent pair `(u0, s0)` by `(u0 + p k, s0 + b k)`.
    pub pair_shift: i64,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { k_precision: None, pair_shift: 0 }
    }
}

/// One level `K_j = K(rho_1, ..., rho_j)` seen through its uniformizer.
#[derive(Clone, Debug)]
pub struct TowerState {
    pub level: u32,
    /// `t` as a series in the current uniformizer.
    pub t: Series,
    /// The roots `rho_i` as series in the current uniformizer.
    pub rhos: Vec<Series>,
    pub betas: Vec<Series>,
}

impl TowerState {
    pub fn base(field: &Arc<FieldCtx>) -> Self {
        TowerState { level: 0, t: Series::var(field, 't'), rhos: Vec::new(), betas: Vec::new() }
    }
}

/// Checks that every nonzero `F_p`-combination of `betas` reduces to an
/// element of valuation `-b` with the same `b`, and returns `b`.
pub fn validate_single_break(betas: &[Series]) -> Result<i64> {
    let first = betas.first().ok_or_else(|| Error::PreconditionViolated("no generators".into()))?;
    let field = first.field().clone();
    let p = field.p();
    let nu = betas.len() as u32;
    let total = (p as u64).checked_pow(nu).ok_or(Error::EnumerationTooLarge { size: u128::MAX, cap: 1 << 20 })?;
    if total > 1 << 20 {
        return Err(Error::EnumerationTooLarge { size: total as u128, cap: 1 << 20 });
    }
    let mut b = None;
    for idx in 1..total {
        let mut combo = Series::zero(&field, 't', EXACT);
        let mut r = idx;
        for beta in betas {
            let c = (r % p as u64) as i64;
            r /= p as u64;
            if c != 0 {
                combo = combo.add_scaled(beta, field.from_int(c));
            }
        }
        let (xi, _) = wp_reduce(&combo)?;
        if xi.is_indistinguishable_from_zero() {
            return Err(Error::DependentGenerators);
        }
        let v = xi.valuation()?;
        if v >= 0 {
            return Err(Error::NotSingleBreak("a combination gives an unramified extension".into()));
        }
        match b {
            None => b = Some(-v),
            Some(b0) if b0 != -v => {
                return Err(Error::NotSingleBreak(format!("combinations have breaks {b0} and {}", -v)));
            }
            _ => {}
        }
    }
    Ok(b.unwrap())
}

fn unit(field: &Arc<FieldCtx>, c: Fe, prec: i64) -> Series {
    Series::monomial(field, PI_VAR, c, 0, prec)
}

/// Adjoins a root of `X^p - X = beta`, where `beta` has break `b` over
/// the current level. The new uniformizer is `rho'^{u0} u^{s0}` with `rho'`
/// the reduced root and `u` the old uniformizer; `cap` bounds the Newton
/// precision of the unit parts.
pub fn adjoin_step(state: &TowerState, beta: &Series, b: i64, pair_shift: i64, cap: i64) -> Result<TowerState> {
    let field = beta.field().clone();
    let p = field.p() as i64;
    let beta_cur = beta.compose(&state.t)?;
    let (xi, z) = wp_reduce(&beta_cur)?;
    let (v, lead) = if xi.is_indistinguishable_from_zero() {
        return Err(Error::ReductionFailed("generator became trivial".into()));
    } else {
        xi.leading()?
    };
    if v != -b {
        return Err(Error::ReductionFailed(format!("reduced valuation {v}, expected {}", -b)));
    }
    let xi = xi.with_var(PI_VAR);
    let binv = (1..p).find(|&x| (x * b).rem_euclid(p) == 1).ok_or(Error::KDivisibleByP)?;
    let u0 = p - binv + p * pair_shift;
    let s0 = (1 + b * u0) / p;
    debug_assert_eq!(s0 * p, 1 + b * u0);

    let dxi = xi.derivative();
    let pi_pow = |e: i64, prec: i64| Series::monomial(&field, PI_VAR, Fe::ONE, e, prec);
    let mut r = unit(&field, field.pow(lead, s0), 1);
    let mut uu = unit(&field, field.pow(lead, -u0), 1);
    let residuals = |r: &Series, uu: &Series, prec: i64| -> Result<(Series, Series)> {
        let f1 = r.pow(u0)?.mul(&uu.pow(s0)?).sub(&Series::one(&field, PI_VAR, EXACT)).truncate(prec);
        let g = uu.shift(p);
        let f2 = r
            .pow(p)?
            .sub(&r.shift(b * (p - 1)))
            .sub(&xi.compose(&g)?.shift(b * p))
            .truncate(prec);
        Ok((f1, f2))
    };
    let mut prec = 1;
    while prec < cap {
        prec = (2 * prec).min(cap);
        r = r.assume_precision(prec);
        uu = uu.assume_precision(prec);
        let (f1, f2) = residuals(&r, &uu, prec)?;
        let g = uu.shift(p);
        let a = r.pow(u0 - 1)?.mul(&uu.pow(s0)?).scale(field.from_int(u0)).truncate(prec);
        let bc = r.pow(u0)?.mul(&uu.pow(s0 - 1)?).scale(field.from_int(s0)).truncate(prec);
        let cp = pi_pow(b * (p - 1), EXACT).neg();
        let dp = dxi.compose(&g)?.shift(b * p + p).neg().truncate(prec);
        let det = a.mul(&dp).sub(&bc.mul(&cp)).truncate(prec);
        let dr = bc.mul(&f2).sub(&dp.mul(&f1)).div(&det)?;
        let du = cp.mul(&f1).sub(&a.mul(&f2)).div(&det)?;
        r = r.add(&dr).truncate(prec);
        uu = uu.add(&du).truncate(prec);
    }
    let (f1, f2) = residuals(&r, &uu, prec)?;
    if !f1.is_indistinguishable_from_zero() || !f2.is_indistinguishable_from_zero() {
        return Err(Error::ResidualNonzero("Newton iteration did not converge".into()));
    }
    // certified by Hensel: the Jacobian is a unit
    let r = r.assume_precision(f1.precision().min(f2.precision()).min(cap));
    let uu = uu.assume_precision(r.precision());

    let old_pi = uu.shift(p);
    let t = state.t.compose(&old_pi)?;
    let rho_red = r.shift(-b);
    let rho = rho_red.add(&z.compose(&old_pi)?);
    let mut rhos = state.rhos.iter().map(|x| x.compose(&old_pi)).collect::<Result<Vec<_>>>()?;
    rhos.push(rho);
    let mut betas = state.betas.clone();
    betas.push(beta.clone());

    let pi_check = rho_red.pow(u0)?.mul(&old_pi.pow(s0)?).sub(&pi_pow(1, EXACT));
    if !pi_check.is_indistinguishable_from_zero() || pi_check.precision() < 2 {
        return Err(Error::ResidualNonzero("new uniformizer does not have valuation one".into()));
    }
    let next = TowerState { level: state.level + 1, t, rhos, betas };
    next.check_relations()?;
    Ok(next)
}

impl TowerState {
    /// Verifies `rho_i^p - rho_i = beta_i(t)` to the tracked precision.
    pub fn check_relations(&self) -> Result<()> {
        for (i, (rho, beta)) in self.rhos.iter().zip(&self.betas).enumerate() {
            let res = rho.pth_power().sub(rho).sub(&beta.compose(&self.t)?);
            if !res.is_indistinguishable_from_zero() {
                return Err(Error::ResidualNonzero(format!("relation {} fails at {}", i + 1, res.valuation()?)));
            }
            if res.precision() < 1 {
                return Err(Error::InsufficientPrecision("relation not checked past the pole"));
            }
        }
        Ok(())
    }
}

/// Result of the forward construction.
#[derive(Clone, Debug)]
pub struct Built {
    pub b: i64,
    pub state: TowerState,
    /// Eisenstein polynomial of the top uniformizer over `K`, in `t`.
    pub raw_minpoly: EisensteinPoly,
    /// The same polynomial rewritten in `t' = -a_{p^nu}`.
    pub minpoly: EisensteinPoly,
    /// `t'` as a series in the top uniformizer.
    pub expansion: Series,
}

/// Builds `L = K(rho_1, ..., rho_nu)` from Artin-Schreier generators.
pub fn build(betas: &[Series], opts: &TowerOptions) -> Result<Built> {
    let b = validate_single_break(betas)?;
    let field = betas[0].field().clone();
    let p = field.p() as i64;
    let nu = betas.len() as u32;
    let n = p.pow(nu);
    let nk = opts.k_precision.unwrap_or(b + 2);
    if nk < b + 2 {
        return Err(Error::PreconditionViolated(format!("coefficient precision {nk} below b + 2 = {}", b + 2)));
    }
    let target = n * (nk + 1);
    let mut margin = p;
    for _ in 0..4 {
        let mut state = TowerState::base(&field);
        for (j, beta) in betas.iter().enumerate() {
            let levels_left = nu - j as u32 - 1;
            let cap = Integer::div_ceil(&target, &p.pow(levels_left)) + margin;
            state = adjoin_step(&state, beta, b, opts.pair_shift, cap)?;
        }
        if state.t.precision() >= target {
            return finish(state, b, n, nk);
        }
        margin *= 4;
    }
    Err(Error::InsufficientPrecision("tower lost too much precision"))
}

fn finish(state: TowerState, b: i64, n: i64, nk: i64) -> Result<Built> {
    let raw = extract_minpoly(&state.t, n, nk)?;
    let minpoly = raw.rebase()?;
    let expansion = raw.a(n as usize).neg().compose(&state.t)?.truncate(n * nk);
    Ok(Built { b, state, raw_minpoly: raw, minpoly, expansion })
}

/// `t` as a series in a root `pi` of the normalized Eisenstein polynomial
/// `g`, i.e. the solution of `t = pi^n + sum_{k<n} a_k(t) pi^{n-k}`, found by
/// Newton iteration. Known modulo `pi^{n N}` when `g` is known modulo `t^N`.
pub fn expansion_from_minpoly(g: &EisensteinPoly) -> Result<Series> {
    if !g.is_normalized() {
        return Err(Error::PreconditionViolated("constant term must be -t".into()));
    }
    let field = g.field().clone();
    let n = g.degree() as i64;
    let nk = g.precision();
    let target = if nk >= EXACT { n * (n + 2) } else { n * nk };
    let coeffs: Vec<Series> = (1..n as usize).map(|k| g.a(k)).collect();
    let derivs: Vec<Series> = coeffs.iter().map(|a| a.derivative()).collect();
    let pin = Series::monomial(&field, PI_VAR, Fe::ONE, n, EXACT);
    let residual = |t: &Series, prec: i64| -> Result<Series> {
        let mut f = t.sub(&pin);
        for (k, a) in coeffs.iter().enumerate() {
            f = f.sub(&a.compose(t)?.shift(n - 1 - k as i64));
        }
        Ok(f.truncate(prec))
    };
    let mut t = Series::monomial(&field, PI_VAR, Fe::ONE, n, n + 1);
    let mut prec = n + 1;
    while prec < target {
        prec = (2 * prec).min(target);
        t = t.assume_precision(prec);
        let f = residual(&t, prec)?;
        let mut fp = Series::one(&field, PI_VAR, EXACT);
        for (k, d) in derivs.iter().enumerate() {
            fp = fp.sub(&d.compose(&t)?.shift(n - 1 - k as i64));
        }
        t = t.sub(&f.div(&fp.truncate(prec))?).truncate(prec);
    }
    let f = residual(&t, target)?;
    if !f.is_indistinguishable_from_zero() {
        return Err(Error::ResidualNonzero("expansion of t does not satisfy g".into()));
    }
    Ok(t.assume_precision(f.precision().min(target)))
}

/// Writes `pi^n = -sum_k a_k(t) pi^{n-k}` greedily using the basis
/// `t^h pi^i` with distinct valuations `n h + i`.
fn extract_minpoly(t_in_pi: &Series, n: i64, nk: i64) -> Result<EisensteinPoly> {
    let field = t_in_pi.field().clone();
    let prec = t_in_pi.precision();
    if prec < n * nk {
        return Err(Error::InsufficientPrecision("t not known to n N_K"));
    }
    let (vt, tau) = t_in_pi.leading()?;
    if vt != n {
        return Err(Error::NotAUniformizer);
    }
    let mut tpows = vec![Series::one(&field, PI_VAR, EXACT)];
    for h in 1..nk {
        let next = tpows[h as usize - 1].mul(t_in_pi).truncate(prec);
        tpows.push(next);
    }
    let mut acc: Vec<Vec<(i64, Fe)>> = vec![Vec::new(); n as usize + 1];
    let mut rem = Series::monomial(&field, PI_VAR, Fe::ONE, n, prec);
    while !rem.is_indistinguishable_from_zero() {
        let (v, c) = rem.leading()?;
        if v >= n * nk {
            break;
        }
        let h = v.div_euclid(n);
        let k = n - v.rem_euclid(n);
        if k == n && h == 0 {
            return Err(Error::NotAUniformizer);
        }
        let coef = field.div(c, field.pow(tau, h));
        acc[k as usize].push((h, field.neg(coef)));
        rem = rem.sub(&tpows[h as usize].shift(n - k).scale(coef));
    }
    if rem.is_indistinguishable_from_zero() && rem.precision() < n * nk {
        return Err(Error::InsufficientPrecision("remainder ran out of digits"));
    }
    let mut coeffs = vec![Series::one(&field, 't', EXACT); n as usize + 1];
    for k in 1..=n {
        coeffs[(n - k) as usize] = Series::from_terms(&field, 't', &acc[k as usize], nk);
    }
    EisensteinPoly::new(KPoly::new(&field, 't', coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insep::{indices_from_expansion, indices_from_minpoly};

    fn f(p: u32, m: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    fn mono(k: &Arc<FieldCtx>, c: Fe, e: i64) -> Series {
        Series::monomial(k, 't', c, e, EXACT)
    }

    #[test]
    fn validate_examples() {
        let k = f(2, 1);
        let bad = [mono(&k, Fe::ONE, -1), mono(&k, Fe::ONE, -2)];
        assert_eq!(validate_single_break(&bad), Err(Error::DependentGenerators));
        let k9 = f(3, 2);
        let a = k9.generator();
        assert_eq!(validate_single_break(&[mono(&k9, Fe::ONE, -1), mono(&k9, a, -1)]), Ok(1));
        let two = [mono(&k9, Fe::ONE, -1), mono(&k9, Fe::ONE, -2)];
        assert!(matches!(validate_single_break(&two), Err(Error::NotSingleBreak(_))));
    }

    #[test]
    fn quadratic_example() {
        let k = f(2, 1);
        let built = build(&[mono(&k, Fe::ONE, -1)], &TowerOptions::default()).unwrap();
        let t = mono(&k, Fe::ONE, 1);
        assert!(built.minpoly.a(1).sub(&t).is_indistinguishable_from_zero());
        assert!(built.minpoly.a(2).sub(&t).is_indistinguishable_from_zero());
        assert_eq!(built.minpoly.precision(), 3);
        let iv = indices_from_minpoly(&built.minpoly).unwrap();
        assert_eq!(iv.indices, vec![1, 0]);
        assert_eq!(indices_from_expansion(&built.expansion, 1).unwrap(), iv);
    }

    #[test]
    fn nine_example() {
        let k = f(3, 2);
        let a = k.generator();
        let built = build(&[mono(&k, Fe::ONE, -1), mono(&k, a, -1)], &TowerOptions::default()).unwrap();
        let iv = indices_from_minpoly(&built.minpoly).unwrap();
        assert_eq!(iv.indices, vec![8, 8, 0]);
        assert_eq!(indices_from_expansion(&built.expansion, 2).unwrap(), iv);
    }

    #[test]
    fn expansion_matches_tower() {
        let k = f(3, 2);
        let a = k.generator();
        let betas = [mono(&k, Fe::ONE, -2), Series::from_terms(&k, 't', &[(-2, a), (-1, Fe::ONE)], EXACT)];
        let built = build(&betas, &TowerOptions::default()).unwrap();
        let e = expansion_from_minpoly(&built.minpoly).unwrap();
        let prec = e.precision().min(built.expansion.precision());
        assert!(prec >= 9 * 4);
        assert_eq!(e.truncate(prec), built.expansion.truncate(prec));
    }

    #[test]
    fn pair_shift_gives_same_indices() {
        let k = f(3, 2);
        let a = k.generator();
        let betas = [mono(&k, Fe::ONE, -2), Series::from_terms(&k, 't', &[(-2, a), (-1, Fe::ONE)], EXACT)];
        let x = build(&betas, &TowerOptions::default()).unwrap();
        let y = build(&betas, &TowerOptions { pair_shift: 1, ..Default::default() }).unwrap();
        assert_eq!(indices_from_minpoly(&x.minpoly).unwrap(), indices_from_minpoly(&y.minpoly).unwrap());
        assert!(x.state.check_relations().is_ok());
    }
}
