use std::path::PathBuf;

use crate::kernel::{Integer, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("square root of negative integer {0}")]
    NegativeSqrt(Integer),

    #[error("degenerate equation: leading coefficient is zero")]
    DegenerateEquation,

    #[error("expected a polynomial of degree {expected}, got degree {actual}")]
    WrongDegree { expected: usize, actual: usize },

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("invalid Y^{{p,q}} parameters (p={p}, q={q}): {reason}")]
    InvalidYpq {
        p: Integer,
        q: Integer,
        reason: &'static str,
    },

    #[error("Y^{{{p},{q}}} is not quasi-regular: 4p^2-3q^2 is not a perfect square")]
    NotQuasiRegular { p: Integer, q: Integer },

    #[error("invalid join data: {0}")]
    InvalidJoin(String),

    #[error("k must be a rational number > 1, got {0}")]
    KOutOfRange(Rational),

    #[error("Sasaki-Einstein cubic has {count} real roots in (1, inf), expected exactly one")]
    SeRootCount { count: usize },

    #[error("degenerate Reeb ray: w1*v3_inf = w2*v3_0")]
    DegenerateRay,

    #[error("irregular Reeb ray has no quotient orbifold")]
    IrregularRay,

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid Calabi data: {0}")]
    InvalidCalabi(String),

    #[error("Kähler-Einstein conditions do not hold (ke1={ke1}, ke2={ke2})")]
    NotKahlerEinstein { ke1: bool, ke2: bool },

    #[error("constructed profile is not positive on (-1, 1)")]
    ProfileNotPositive,

    #[error("profile vanishes at interior point {0}")]
    ProfileVanishes(Rational),

    #[error("invalid orbifold: {0}")]
    InvalidOrbifold(String),

    #[error("invalid monoid element: {0}")]
    InvalidMonoid(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
