//! File formats, parallel runners and the `driftbound` command-line tool
//! built on [`driftbound_core`].

pub mod cli;
pub mod config;
pub mod io;
pub mod runner;
