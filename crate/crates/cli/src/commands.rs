//! The subcommands as functions from arguments to a JSON document.

use std::sync::Arc;

use raminsep_core::asdual::{algorithm_compute, b0_from_h, w_interpolate};
use raminsep_core::insep::{break_from_indices, indices_from_expansion, indices_from_minpoly};
use raminsep_core::localpoly::{EisensteinPoly, KPoly};
use raminsep_core::normgrp::{norm_generators_congruence, norm_generators_exact};
use raminsep_core::schmid::pairing;
use raminsep_core::tower::{build, expansion_from_minpoly, TowerOptions};
use raminsep_core::{Error, FieldCtx, EXACT};

use crate::parse::{parse_poly, parse_series, ParseError};
use crate::report::{ctable_out, w_out, B0Out, BuildOut, IndicesOut, RecoverOut, SubspaceOut};
use crate::sweep::{sweep, SweepParams};

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    /// Bad input text; reported on standard error with exit code 2.
    #[error("{0}")]
    Parse(#[from] ParseError),
    /// A mathematical precondition failed; exit code 3.
    #[error("{0}")]
    Math(#[from] Error),
}

/// A JSON document and whether every check it reports passed.
pub struct Output {
    pub json: String,
    pub ok: bool,
}

impl Output {
    fn ok(value: &impl serde::Serialize) -> Self {
        Output { json: serde_json::to_string(value).expect("serializable"), ok: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    All,
    Minpoly,
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Congruence,
    Both,
}

pub fn field(p: u32, m: usize) -> Result<Arc<FieldCtx>, CmdError> {
    Ok(Arc::new(FieldCtx::new(p, m)?))
}

fn eisenstein(field: &Arc<FieldCtx>, text: &str) -> Result<EisensteinPoly, CmdError> {
    Ok(EisensteinPoly::new(parse_poly(field, text)?)?)
}

/// Truncates exact coefficients to `t^{N_K}` (default `b + 2`) and rewrites
/// the polynomial in the uniformizer `-a_{p^nu}`.
pub fn normalize(g: EisensteinPoly, precision: Option<i64>) -> Result<EisensteinPoly, Error> {
    let b = break_from_indices(&indices_from_minpoly(&g)?)?;
    let nk = precision.unwrap_or(b + 2);
    if nk < b + 2 {
        return Err(Error::PreconditionViolated(format!("precision {nk} below b + 2 = {}", b + 2)));
    }
    let n = g.degree();
    let coeffs = g
        .poly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i == n || c.precision() < EXACT { c.clone() } else { c.truncate(nk) })
        .collect();
    let g = EisensteinPoly::new(KPoly::new(g.field(), 't', coeffs))?;
    if g.is_normalized() {
        Ok(g)
    } else {
        g.rebase()
    }
}

pub fn indices(field: &Arc<FieldCtx>, minpoly: &str) -> Result<Output, CmdError> {
    let g = eisenstein(field, minpoly)?;
    let iv = indices_from_minpoly(&g)?;
    let brk = break_from_indices(&iv)?;
    Ok(Output::ok(&IndicesOut { indices: iv.indices, brk }))
}

pub fn build_cmd(
    field: &Arc<FieldCtx>,
    betas: &str,
    emit: Emit,
    precision: Option<i64>,
    pair_shift: i64,
) -> Result<Output, CmdError> {
    let betas = betas.split(',').map(|s| parse_series(field, s)).collect::<Result<Vec<_>, _>>()?;
    let built = build(&betas, &TowerOptions { k_precision: precision, pair_shift })?;
    let iv = indices_from_minpoly(&built.minpoly)?;
    let out = BuildOut::new(&betas, &built, iv.indices, emit != Emit::Expansion, emit != Emit::Minpoly);
    Ok(Output::ok(&out))
}

pub fn normgroup(field: &Arc<FieldCtx>, minpoly: &str, method: Method, precision: Option<i64>) -> Result<Output, CmdError> {
    let g = normalize(eisenstein(field, minpoly)?, precision)?;
    match method {
        Method::Exact => Ok(Output::ok(&SubspaceOut::new(&norm_generators_exact(&g)?))),
        Method::Congruence => Ok(Output::ok(&SubspaceOut::new(&norm_generators_congruence(&g)?))),
        Method::Both => {
            let exact = SubspaceOut::new(&norm_generators_exact(&g)?);
            let congruence = SubspaceOut::new(&norm_generators_congruence(&g)?);
            let equal = exact == congruence;
            let json = serde_json::json!({ "exact": exact, "congruence": congruence, "equal": equal });
            Ok(Output { json: json.to_string(), ok: equal })
        }
    }
}

pub fn recover(field: &Arc<FieldCtx>, minpoly: &str, precision: Option<i64>) -> Result<Output, CmdError> {
    let g = normalize(eisenstein(field, minpoly)?, precision)?;
    let nu = g.nu();
    let ivm = indices_from_minpoly(&g)?;
    let b = break_from_indices(&ivm)?;
    let ive = indices_from_expansion(&expansion_from_minpoly(&g)?, nu)?;
    let h = norm_generators_exact(&g)?;
    let b0 = b0_from_h(&h, b)?;
    let w = w_interpolate(&b0)?;
    let (iva, ctable) = algorithm_compute(&b0, b, nu)?;
    let matches = ivm == ive && ive == iva;
    let out = RecoverOut {
        b,
        indices_minpoly: ivm.indices,
        indices_expansion: ive.indices,
        indices_recovered: iva.indices,
        b0: B0Out::new(&b0),
        w: w_out(field, &w),
        c_table: ctable_out(field, &ctable),
        matches,
    };
    Ok(Output { json: serde_json::to_string(&out).expect("serializable"), ok: matches })
}

pub fn pairing_cmd(field: &Arc<FieldCtx>, beta: &str, eta: &str) -> Result<Output, CmdError> {
    let beta = parse_series(field, beta)?;
    let eta = parse_series(field, eta)?;
    let value = pairing(&beta, &eta)?;
    Ok(Output::ok(&serde_json::json!({ "value": value })))
}

pub fn verify(params: &SweepParams) -> Result<Output, CmdError> {
    let report = sweep(params)?;
    Ok(Output { json: serde_json::to_string(&report).expect("serializable"), ok: report.failures == 0 })
}
