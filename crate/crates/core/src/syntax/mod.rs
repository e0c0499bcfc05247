//! Parsers and printers for both calculi.

mod lexer;
pub mod pi;
pub mod rho;

use thiserror::Error;

pub use pi::{parse_pi, print_pi};
pub use rho::{parse_rho, parse_rho_name, print_rho, print_rho_name, RhoPrinter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
