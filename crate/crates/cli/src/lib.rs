//! Parsing, JSON reports and randomized verification on top of
//! `raminsep-core`.

pub mod commands;
pub mod parse;
pub mod report;
pub mod sweep;
