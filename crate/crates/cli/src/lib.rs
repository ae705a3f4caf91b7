//! JSON documents, the expression parser and the subcommands behind the
//! `sullivan` binary.

pub mod commands;
pub mod document;
pub mod expr;
pub mod library;

pub use commands::{run, Command, Options, RunError};
pub use document::{parse_document, Document};
pub use expr::{parse_expression, ParseError};
