//! Random single-break instances and the per-instance invariant checks run by
//! `verify`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use raminsep_core::asdual::{
    algorithm_compute, b0_from_h, i1_via_w_nu2, indices_via_w_small_b, w_interpolate, zpn_condition_check,
};
use raminsep_core::insep::{
    break_from_indices, indices_from_expansion, indices_from_minpoly, phi_from_breaks, phi_from_indices, IndexVector,
};
use raminsep_core::localpoly::{f_bound, EisensteinPoly};
use raminsep_core::normgrp::{
    cor_combining_i1, lambda_subspace_enumerate, lambda_subspace_test, norm_generators_congruence,
    norm_generators_exact,
};
use raminsep_core::tower::{build, validate_single_break, TowerOptions};
use raminsep_core::{Error, Fe, FieldCtx, Series, EXACT};

/// Largest brute-force enumeration run alongside the linear subspace test.
pub const ENUMERATION_BUDGET: u128 = 1 << 12;

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug)]
pub struct SweepParams {
    pub p: u32,
    pub m: usize,
    pub nu: u32,
    pub bmax: i64,
    pub trials: usize,
    pub seed: u64,
    pub precision: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceBundle {
    pub trial: usize,
    pub seed: u64,
    pub p: u32,
    pub m: usize,
    pub nu: u32,
    pub b: i64,
    pub betas: Vec<String>,
    pub minpoly: String,
    pub c_expansion: String,
    pub indices: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    #[serde(flatten)]
    pub bundle: InstanceBundle,
    /// Check name to outcome; checks that do not apply are absent.
    pub checks: BTreeMap<String, bool>,
    /// Number of brute-force Lambda enumerations compared with the linear test.
    pub enumerations: usize,
}

impl InstanceReport {
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect()
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub p: u32,
    pub m: usize,
    pub nu: u32,
    pub bmax: i64,
    pub trials: usize,
    pub seed: u64,
    pub instances: Vec<InstanceReport>,
    pub failures: usize,
}

/// Breaks allowed in a sweep: `1 <= b <= bmax` with `p ∤ b`.
pub fn admissible_breaks(p: u32, bmax: i64) -> Vec<i64> {
    (1..=bmax).filter(|b| b % p as i64 != 0).collect()
}

/// Draws `nu` generators supported on exponents `-b..-1` prime to `p` with
/// uniform coefficients, retrying until they define a single-break extension.
pub fn random_betas(field: &Arc<FieldCtx>, nu: u32, b: i64, rng: &mut impl Rng) -> Result<Vec<Series>, Error> {
    if nu as usize > field.m() {
        return Err(Error::PreconditionViolated(format!(
            "a single break needs nu <= m, got nu = {nu}, m = {}",
            field.m()
        )));
    }
    let p = field.p() as i64;
    let q = field.q();
    for _ in 0..MAX_ATTEMPTS {
        let betas: Vec<Series> = (0..nu)
            .map(|_| {
                let terms: Vec<(i64, Fe)> = (1..=b)
                    .filter(|e| e % p != 0)
                    .map(|e| (-e, field.from_index(rng.gen_range(0..q))))
                    .collect();
                Series::from_terms(field, 't', &terms, EXACT)
            })
            .collect();
        match validate_single_break(&betas) {
            Ok(bb) if bb == b => return Ok(betas),
            Ok(_) | Err(Error::DependentGenerators) | Err(Error::NotSingleBreak(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PreconditionViolated("no single-break sample found".into()))
}

fn coefficient_bounds_hold(g: &EisensteinPoly, b: i64) -> bool {
    let p = g.field().p();
    let nu = g.nu();
    (1..g.degree()).all(|i| {
        let a = g.a(i);
        let f = f_bound(p, nu, b, i as u64);
        match a.valuation() {
            Ok(v) => v >= f,
            Err(_) => true,
        }
    })
}

fn phi_matches(iv: &IndexVector, b: i64) -> bool {
    let n = iv.degree();
    let direct = phi_from_indices(iv);
    let from_breaks = phi_from_breaks(&[(b, n as u64)], n as u64);
    let allowed: Vec<_> = iv.indices.iter().map(|&i| num_rational::Ratio::new(i, n)).collect();
    direct == from_breaks && direct.intercepts().iter().all(|c| allowed.contains(c))
}

/// Runs every applicable invariant on one instance.
pub fn check_instance(
    betas: &[Series],
    opts: &TowerOptions,
    enum_budget: u128,
) -> Result<(raminsep_core::tower::Built, BTreeMap<String, bool>, usize), Error> {
    let field = betas[0].field().clone();
    let p = field.p() as i64;
    let m = field.m();
    let nu = betas.len() as u32;
    let n = p.pow(nu);
    let built = build(betas, opts)?;
    let b = built.b;
    let g = &built.minpoly;
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, ok: bool| {
        checks.insert(name.to_string(), ok);
    };

    let ivm = indices_from_minpoly(g)?;
    let ive = indices_from_expansion(&built.expansion, nu)?;
    let h = norm_generators_exact(g)?;
    let b0 = b0_from_h(&h, b)?;
    let w = w_interpolate(&b0)?;
    let (iva, ctable) = algorithm_compute(&b0, b, nu)?;
    put("pipeline", ivm == ive && ive == iva);
    put("break", break_from_indices(&ivm).ok() == Some(b));
    put("rebase_invariance", indices_from_minpoly(&built.raw_minpoly)? == ivm);
    put("index_invariants", ivm.check_invariants().is_ok());
    put("norm_group_codim", h.codim() == nu as usize);
    put("congruence_chain", norm_generators_congruence(g)? == h);
    let ctable_ok = ctable.entries.iter().all(|(&i, &c)| g.c(i as usize, b).map(|x| x == c).unwrap_or(false));
    put("ctable", ctable_ok);
    put("eisenstein_bound", coefficient_bounds_hold(g, b) && coefficient_bounds_hold(&built.raw_minpoly, b));
    put("phi", phi_matches(&ivm, b));
    put("w0_valuation", w.valuation(0) == Some(-b));
    if b < p {
        put("small_b", indices_via_w_small_b(&w, b)? == iva);
    }
    if nu == 2 {
        put("zp2", i1_via_w_nu2(&w, b)? == iva.get(1));
        put("combining", cor_combining_i1(&h, b)? == iva.get(1));
    }
    let d = (b + p - 1) / p;
    let mut zpn_ok = true;
    let mut sub_ok = true;
    for k in d..b {
        let (c1, c2, c3) = zpn_condition_check(&b0, &w, &iva, k)?;
        zpn_ok &= c1 == c2 && c2 == c3;
        sub_ok &= c2 == lambda_subspace_test(&h, k, nu)?;
    }
    if d < b {
        put("zpn", zpn_ok);
        put("sub", sub_ok);
    }
    let mut enumerations = 0;
    let mut enum_ok = true;
    let q = field.q() as u128;
    for k in (d - 1).max(0)..b {
        if q.checked_pow((b - k) as u32).is_none_or(|s| s > enum_budget) {
            continue;
        }
        enumerations += 1;
        enum_ok &= lambda_subspace_test(&h, k, nu)? == lambda_subspace_enumerate(&h, k, nu, enum_budget)?;
    }
    if enumerations > 0 {
        put("lambda_enumeration", enum_ok);
    }
    if m % nu as usize != 0 && b >= 2 {
        put("nu_not_dividing_m", (1..nu as usize).any(|j| iva.get(j) == b * n - b * p.pow(j as u32)));
    }
    Ok((built, checks, enumerations))
}

fn bundle(trial: usize, seed: u64, betas: &[Series], built: &raminsep_core::tower::Built) -> Result<InstanceBundle, Error> {
    let field = betas[0].field();
    Ok(InstanceBundle {
        trial,
        seed,
        p: field.p(),
        m: field.m(),
        nu: betas.len() as u32,
        b: built.b,
        betas: betas.iter().map(|s| s.format()).collect(),
        minpoly: built.minpoly.poly().format(),
        c_expansion: built.expansion.format(),
        indices: indices_from_minpoly(&built.minpoly)?.indices,
    })
}

/// One trial: the trial seed determines `b` and the generators.
pub fn run_trial(
    field: &Arc<FieldCtx>,
    nu: u32,
    bmax: i64,
    trial: usize,
    seed: u64,
    opts: &TowerOptions,
) -> Result<InstanceReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let breaks = admissible_breaks(field.p(), bmax);
    if breaks.is_empty() {
        return Err(Error::PreconditionViolated(format!("no admissible break up to {bmax}")));
    }
    let b = breaks[rng.gen_range(0..breaks.len())];
    let betas = random_betas(field, nu, b, &mut rng)?;
    let (built, checks, enumerations) = check_instance(&betas, opts, ENUMERATION_BUDGET)?;
    Ok(InstanceReport { bundle: bundle(trial, seed, &betas, &built)?, checks, enumerations })
}

/// The full sweep; trial seeds are drawn from the master seed in order.
pub fn sweep(params: &SweepParams) -> Result<SweepReport, Error> {
    let field = Arc::new(FieldCtx::new(params.p, params.m)?);
    let opts = TowerOptions { k_precision: params.precision, pair_shift: 0 };
    let mut master = ChaCha8Rng::seed_from_u64(params.seed);
    let seeds: Vec<u64> = (0..params.trials).map(|_| master.next_u64()).collect();
    let instances = seeds
        .iter()
        .enumerate()
        .map(|(i, &s)| run_trial(&field, params.nu, params.bmax, i, s, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let failures = instances.iter().filter(|r| !r.passed()).count();
    Ok(SweepReport {
        p: params.p,
        m: params.m,
        nu: params.nu,
        bmax: params.bmax,
        trials: params.trials,
        seed: params.seed,
        instances,
        failures,
    })
}
