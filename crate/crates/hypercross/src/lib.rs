//! File formats, witness verification and the command-line front end for
//! `hypercross-core`.

pub mod cli;
pub mod format;
pub mod suites;
pub mod verify;
