//! Reading term arguments: inline text, or a `.rho` / `.pi` file path.

use std::collections::BTreeSet;
use std::path::Path;

use rhopi::pi::{PiName, PiProc};
use rhopi::rho::{RhoName, RhoProc};
use rhopi::syntax::{parse_pi, parse_rho, parse_rho_name, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Encode(#[from] rhopi::encode::EncodeError),
    #[error("{0}")]
    Usage(String),
}

/// Text of the argument: the file contents if it names an existing file.
fn source(arg: &str) -> Result<(String, Option<&str>), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?;
        Ok((text, path.extension().and_then(|e| e.to_str())))
    } else {
        Ok((arg.to_string(), None))
    }
}

/// Whether the argument should be read as π: forced by flag or by extension.
pub fn is_pi(arg: &str, flag: bool) -> bool {
    flag || Path::new(arg).extension().is_some_and(|e| e == "pi") && Path::new(arg).is_file()
}

pub fn rho_term(arg: &str) -> Result<RhoProc, CliError> {
    let (text, ext) = source(arg)?;
    if ext == Some("pi") {
        return Err(CliError::Usage(format!("{arg} is a π file; pass it with --pi")));
    }
    Ok(parse_rho(&text)?)
}

pub fn pi_term(arg: &str) -> Result<PiProc, CliError> {
    Ok(parse_pi(&source(arg)?.0)?)
}

pub fn rho_name(arg: &str) -> Result<RhoName, CliError> {
    Ok(parse_rho_name(&source(arg)?.0)?)
}

pub fn rho_names(xs: &[String]) -> Result<BTreeSet<RhoName>, CliError> {
    xs.iter().map(|x| Ok(parse_rho_name(x.trim())?)).collect()
}

pub fn pi_names(xs: &[String]) -> Result<BTreeSet<PiName>, CliError> {
    xs.iter()
        .map(|x| {
            let x = x.trim();
            let ok = !x.is_empty() && x.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            if ok {
                Ok(PiName::atom(x))
            } else {
                Err(CliError::Usage(format!("not a π name: {x:?}")))
            }
        })
        .collect()
}
