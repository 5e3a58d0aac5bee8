//! File formats, threaded Monte Carlo and the `ncmd` command-line front end
//! over [`ncmd_core`].

pub mod cli;
pub mod config;
pub mod formats;
pub mod mc;
pub mod svg;

pub use ncmd_core;
