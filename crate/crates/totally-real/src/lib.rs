//! Exhaustive tabulation of totally real number fields of bounded root
//! discriminant.
//!
//! A number field `F` of degree `n` is totally real when all of its
//! embeddings into the complex numbers land in the reals. This crate
//! enumerates, provably completely, every such field (up to isomorphism)
//! whose root discriminant `d_F^(1/n)` is at most a bound `B`, and it
//! produces one canonical defining polynomial per field.
//!
//! The search runs in two cooperating pipelines:
//!
//! * [`search`] enumerates candidate minimal polynomials coefficient by
//!   coefficient. Trace normalization plus a geometry-of-numbers bound on
//!   `T2(x) = sum of squared embeddings` pins the two leading coefficients;
//!   interlacing root ladders and Lagrange-multiplier envelopes bound every
//!   coefficient after that. Candidates then pass a six-step sieve ending in
//!   a maximal-order computation and a canonical reduction.
//! * [`relative`] enumerates fields with a proper subfield `E` as relative
//!   quadratic/cubic/... extensions of each possible `E`, which reaches the
//!   imprimitive fields the absolute bounds treat poorly.
//!
//! Supporting layers: exact integer/polynomial arithmetic with certified
//! dyadic interval evaluation ([`arith`]), exact lattice reduction and
//! enumeration ([`lattice`]), maximal orders and canonical polynomial
//! reduction ([`orders`]), the coefficient-bound machinery ([`bounds`]),
//! and persistence plus deterministic work-unit planning ([`driver`]).
//!
//! The `examples/` directory is the best starting point; each file is a
//! runnable tour of one capability:
//!
//! ```text
//! cargo run --release --example search_quadratics
//! cargo run --release --example coefficient_bounds
//! cargo run --release --example sieve_walkthrough
//! cargo run --release --example reduce_polynomial
//! cargo run --release --example lll_and_short_vectors
//! cargo run --release --example polytope_points
//! cargo run --release --example relative_quartics
//! cargo run --release --example shard_plan
//! cargo run --release --example verify_table_rows
//! ```
//!
//! The same functionality is exposed by the thin `totally-real` binary with
//! subcommands `search`, `merge`, `verify`, and `tables`.

pub mod arith;
pub mod bounds;
pub mod driver;
pub mod lattice;
pub(crate) mod linalg;
pub mod orders;
pub mod relative;
pub mod search;

use num_bigint::BigInt;

/// Errors surfaced by the tabulation pipelines.
///
/// Precision escalation is handled internally (dyadic refinement retries);
/// anything that reaches this enum is a genuine caller-visible condition.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("polynomial is reducible: {0}")]
    Reducible(String),

    #[error("discriminant factorization incomplete: unresolved cofactor {0}")]
    UnresolvedCofactor(BigInt),

    #[error("rank-deficient lattice basis")]
    RankDeficient,

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("missing prerequisite tabulation: {0}")]
    MissingTabulation(String),

    #[error("incompatible result file: {0}")]
    IncompatibleFile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
