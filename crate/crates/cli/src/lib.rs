//! Command-line layer: JSON codecs, subcommands and the acceptance suite.

pub mod codec;
pub mod commands;
pub mod suite;
