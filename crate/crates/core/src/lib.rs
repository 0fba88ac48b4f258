//! Indices of inseparability for elementary abelian p-extensions of
//! F_q((t)) with a single ramification break.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parsing and the command
//! line live in the companion `raminsep` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asdual;
pub mod error;
pub mod exp;
pub mod gf;
pub mod insep;
pub mod linalg;
pub mod normgrp;
pub mod localpoly;
pub mod schmid;
pub mod series;
pub mod tower;

pub use error::{Error, Result};
pub use gf::{Fe, FieldCtx};
pub use series::{Series, EXACT};
