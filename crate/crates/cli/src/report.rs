//! JSON shapes of the command outputs. Field elements, series and
//! polynomials are written in their text form, so every string parses back.

use std::collections::BTreeMap;

use serde::Serialize;

use raminsep_core::asdual::{B0Basis, CTable, WCoeffs};
use raminsep_core::normgrp::WSubspace;
use raminsep_core::tower::Built;
use raminsep_core::{FieldCtx, Series};

#[derive(Debug, Serialize)]
pub struct IndicesOut {
    pub indices: Vec<i64>,
    #[serde(rename = "break")]
    pub brk: i64,
}

#[derive(Debug, Serialize)]
pub struct BuildOut {
    pub p: u32,
    pub m: usize,
    pub nu: u32,
    pub b: i64,
    pub betas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_expansion: Option<String>,
    pub indices: Vec<i64>,
}

impl BuildOut {
    pub fn new(betas: &[Series], built: &Built, indices: Vec<i64>, minpoly: bool, expansion: bool) -> Self {
        let field = betas[0].field();
        BuildOut {
            p: field.p(),
            m: field.m(),
            nu: betas.len() as u32,
            b: built.b,
            betas: betas.iter().map(|s| s.format()).collect(),
            minpoly: minpoly.then(|| built.minpoly.poly().format()),
            c_expansion: expansion.then(|| built.expansion.format()),
            indices,
        }
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct SubspaceOut {
    pub p: u32,
    pub m: usize,
    pub b: i64,
    /// `t`, then `k:l` for the unit `E_p(a^l t^k)`.
    pub labels: Vec<String>,
    pub basis: Vec<Vec<u32>>,
    pub codim: usize,
}

impl SubspaceOut {
    pub fn new(h: &WSubspace) -> Self {
        let layout = &h.layout;
        let mut labels = vec![String::from("t")];
        labels.extend((0..layout.dim()).map(|i| {
            let (k, l) = layout.label(i);
            format!("{k}:{l}")
        }));
        SubspaceOut {
            p: layout.p,
            m: layout.m,
            b: layout.b,
            labels,
            basis: h.basis().to_vec(),
            codim: h.codim(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct B0Out {
    pub elements: Vec<String>,
    pub v: Vec<String>,
}

impl B0Out {
    pub fn new(b0: &B0Basis) -> Self {
        let field = &b0.field;
        B0Out {
            elements: b0.elems.iter().map(|e| e.to_series(field, 't').format()).collect(),
            v: b0.v.iter().map(|&x| field.format(x)).collect(),
        }
    }
}

pub fn w_out(field: &std::sync::Arc<FieldCtx>, w: &WCoeffs) -> Vec<String> {
    (0..w.nu as usize).map(|j| w.w_series(field, j).format()).collect()
}

pub fn ctable_out(field: &FieldCtx, c: &CTable) -> BTreeMap<u64, String> {
    c.entries.iter().map(|(&i, &x)| (i, field.format(x))).collect()
}

#[derive(Debug, Serialize)]
pub struct RecoverOut {
    pub b: i64,
    pub indices_minpoly: Vec<i64>,
    pub indices_expansion: Vec<i64>,
    pub indices_recovered: Vec<i64>,
    pub b0: B0Out,
    pub w: Vec<String>,
    pub c_table: BTreeMap<u64, String>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct ErrorOut {
    pub error: String,
    pub message: String,
}

impl ErrorOut {
    pub fn new(e: &raminsep_core::Error) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        ErrorOut { error: kind, message: e.to_string() }
    }
}
