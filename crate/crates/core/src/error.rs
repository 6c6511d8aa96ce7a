use std::path::PathBuf;

/// Everything that can go wrong while building or evaluating a surface.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("non-finite value while evaluating `{expr}` at {var} = {at}")]
    NonFinite {
        expr: String,
        var: &'static str,
        at: f64,
    },

    #[error("u = {u} lies outside the domain [{lo}, {hi}]")]
    Domain { u: f64, lo: f64, hi: f64 },

    #[error("invalid surface: {0}")]
    InvalidSpec(String),

    #[error("frame integration failed: {0}")]
    Integration(String),

    #[error("support function vanishes at (u, v) = ({u}, {v}): |q| = {q:e}")]
    SupportVanishing { u: f64, v: f64, q: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("at (u, v) = ({u}, {v}): {source}")]
    AtPoint { u: f64, v: f64, source: Box<Error> },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
