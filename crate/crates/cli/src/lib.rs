//! Table-reproduction harness, divisor search and reports for skew cyclic codes.

pub mod commands;
pub mod config;
pub mod fixture;
pub mod report;
pub mod search;
pub mod verify;
