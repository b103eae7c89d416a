//! Revenue/welfare trade-offs for deterministic single-item auctions.
//!
//! A seller offers one item to `n` bidders whose valuations are drawn from
//! finite, discrete distributions (independent marginals, or an explicit
//! correlated joint for two bidders).  A deterministic, ex-post incentive
//! compatible mechanism is an allocation matrix over valuation tuples that is
//! monotone in every winner's own coordinate; payments are then forced to be
//! threshold payments.  Every mechanism maps to a point in the plane spanned
//! by expected social welfare and expected revenue, and this crate is about
//! computing and approximating the Pareto frontier of those points.
//!
//! All correctness-relevant arithmetic is exact (arbitrary-precision
//! rationals); floating point appears only in SVG rendering.
//!
//! # Modules
//!
//! * [`model`] — distributions, instances, allocation matrices, threshold
//!   payments, objective points, dominance and Pareto filtering.
//! * [`mechanisms`] — Vickrey, discrete Myerson virtual values, ironing,
//!   the revenue-optimal auction, λ-combined objectives, and randomized
//!   welfare/revenue mixtures.
//! * [`dp`] — the two-bidder dynamic program over truncated supports:
//!   contribution tables, achievable scaled-value sets, exact witnesses.
//! * [`fptas`] — the gap query (dominate-or-certify) with floor rounding and
//!   the ε-Pareto set construction built on it.
//! * [`oracle`] — brute-force enumeration of all feasible allocation
//!   matrices, exact Pareto sets, single-bidder price curves.
//! * [`generators`] — hard-instance families: a non-convex frontier, two
//!   Partition reductions, an exponentially large frontier, and a binary
//!   multi-bidder Partition family.
//! * [`matching`] — the bipartite-style graph whose matchings correspond to
//!   feasible mechanisms on binary instances.
//! * [`io`] — JSON/CSV/SVG serialization of instances, mechanisms, curves.
//! * [`cli`] — the command-line front end (also see the `pareto-auctions`
//!   binary and the `examples/` directory).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run -p pareto-auctions --example nonconvex_curve      # exact Pareto set that is not convex
//! cargo run -p pareto-auctions --example classic_auctions     # Vickrey, Myerson, λ-combined optima
//! cargo run -p pareto-auctions --example randomized_mixture   # hitting a welfare target on the hull
//! cargo run -p pareto-auctions --example exact_value_dp       # achievable-value sets and witnesses
//! cargo run -p pareto-auctions --example eps_pareto_fptas     # ε-Pareto set vs. the oracle
//! cargo run -p pareto-auctions --example partition_instances  # Partition-hard welfare targets
//! cargo run -p pareto-auctions --example exponential_family   # 2^k points on the frontier
//! cargo run -p pareto-auctions --example binary_matching      # matchings ↔ mechanisms
//! cargo run -p pareto-auctions --example single_bidder        # posted-price curves and convexity
//! ```

pub mod cli;
pub mod dp;
pub mod fptas;
pub mod generators;
pub mod io;
pub mod matching;
pub mod mechanisms;
pub mod model;
pub mod oracle;
pub mod rational;

pub use model::{
    evaluate, is_monotone, pareto_filter, threshold_payments, validate_instance, AllocationMatrix,
    Instance, InstanceSpec, MarginalDistribution, Mechanism, ObjectivePoint, ParetoSet, Rat,
};

/// Crate-wide error type.  Variants are grouped by the module that raises
/// them; all are surfaced through the one enum so call sites compose.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    // ---- instance validation ----
    #[error("bidder {bidder}: support values must be strictly increasing")]
    NonIncreasingSupport { bidder: usize },
    #[error("bidder {bidder}: support values must be strictly positive")]
    NonPositiveValue { bidder: usize },
    #[error("{context}: probability mass must not be negative (marginal masses strictly positive)")]
    NonPositiveMass { context: String },
    #[error("{context}: masses sum to {got}, expected 1")]
    MassNotOne { context: String, got: String },
    #[error("joint distribution row/column sums disagree with the declared marginals")]
    JointMarginalMismatch,
    #[error("a joint distribution is only supported for exactly two bidders (got {n})")]
    JointArityError { n: usize },
    #[error("malformed instance: {0}")]
    BadShape(String),
    #[error("cannot parse rational literal {literal:?}")]
    ParseRational { literal: String },

    // ---- allocation matrices ----
    #[error("allocation matrix shape {matrix:?} does not match instance shape {instance:?}")]
    ShapeMismatch {
        matrix: Vec<usize>,
        instance: Vec<usize>,
    },
    #[error("winner index {winner} at cell {cell} exceeds the number of bidders {n}")]
    WinnerOutOfRange { winner: u8, cell: usize, n: usize },
    #[error("allocation matrix is not monotone in every winner's own coordinate")]
    NotMonotone,
    #[error("epsilon must be non-negative")]
    NegativeEps,

    // ---- classic mechanisms ----
    #[error("{op} requires independent bidders (product distribution)")]
    CorrelatedUnsupported { op: String },
    #[error("lambda must be non-negative")]
    NegativeLambda,
    #[error("target welfare {target} is outside the achievable range [{lo}, {hi}]")]
    TargetOutOfRange {
        target: String,
        lo: String,
        hi: String,
    },

    // ---- dynamic program / fptas ----
    #[error("{op} is only implemented for exactly two bidders (got {n})")]
    ArityError { op: String, n: usize },
    #[error("scaled integer magnitude exceeds the supported range")]
    ScaleOverflow,
    #[error("gap bound coordinates must be strictly positive")]
    NonPositiveBound,
    #[error("delta must be strictly positive")]
    NonPositiveDelta,
    #[error("epsilon must be strictly positive")]
    NonPositiveEps,

    // ---- generators ----
    #[error("generator input must be non-increasing (descending) : {0}")]
    NotDescending(String),
    #[error("generator input too small: {0}")]
    TooSmall(String),
    #[error("generator input too large: {0}")]
    TooLarge(String),

    // ---- matching graph ----
    #[error("the matching-graph construction requires binary supports (every h_i = 2)")]
    NotBinary,
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("edge set is not a matching: {0}")]
    NotAMatching(String),

    // ---- cli / io ----
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
