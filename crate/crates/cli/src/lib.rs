//! File formats, generators, DOT output and the command-line driver for
//! `polyresolve-core`.

pub mod acceptance;
pub mod cli;
pub mod dot;
pub mod gen;
pub mod io;
