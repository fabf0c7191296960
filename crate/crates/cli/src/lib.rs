//! Corpus loading, argument parsing and command execution for the
//! `pigroups` tool.

pub mod commands;
pub mod corpus;
pub mod parse;
pub mod report;

pub use commands::{run, Command, Options, Output};
pub use corpus::{load_corpus, NamedGroup};
