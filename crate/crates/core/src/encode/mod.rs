//! π-to-ρ translations: the name-server scheme and the legacy scheme.

pub mod mr;
pub mod ns;
pub mod policy;

use thiserror::Error;

pub use mr::{default_legacy_params, encode_mr, translate_mr, LegacyParams};
pub use ns::{
    encode_ns, encode_ns_with, materialized_handles, name_server, translate_ns, EncodingParams,
    NsEncoding, ParamManifest,
};
pub use policy::RenamingPolicy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("replication must be input-guarded: {0}")]
    UnguardedReplication(String),
    #[error("invalid encoding parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    NameServer,
    LegacyMR,
}
