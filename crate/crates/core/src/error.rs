use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no ordinary edges")]
    NoEdges,

    #[error("{what} has {count} vertices, above the brute-force bound {bound}")]
    VertexBoundExceeded {
        what: &'static str,
        count: usize,
        bound: usize,
    },

    #[error("loop multiplicity for color {color} is {numerator}/{denominator}, not an integer")]
    NonIntegralMu {
        color: usize,
        numerator: u128,
        denominator: u128,
    },

    #[error(
        "v = {v}, lambda = {lambda} are not admissible (global {global_ok}, local {local_ok})"
    )]
    Inadmissible {
        v: usize,
        lambda: u64,
        global_ok: bool,
        local_ok: bool,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {q} exceeds the supported bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },

    #[error("index {m} does not divide q - 1 = {order}")]
    IndexDoesNotDivide { m: u64, order: u64 },

    #[error("-1 is not in the index-{m} subgroup of GF({q})^x")]
    MinusOneNotInSubgroup { q: u64, m: u64 },

    #[error("q = {q} is not congruent to 1 modulo 2m = {two_m}")]
    CongruenceFails { q: u64, two_m: u64 },

    #[error("search space exhausted without a solution")]
    SearchExhausted,

    #[error("search timed out after {elapsed_ms} ms")]
    Timeout { elapsed_ms: u128 },

    #[error("no nonnegative solution found within {budget} search nodes")]
    NotFoundWithinBudget { budget: u64 },

    #[error("no integer solution: {0}")]
    Inconsistent(String),

    #[error("constructed decomposition failed verification: {0}")]
    VerificationFailed(String),

    #[error("malformed block {index}: {reason}")]
    MalformedBlock { index: usize, reason: String },

    #[error(
        "block {index} has coefficient {coefficient}; balance checks need a genuine decomposition"
    )]
    SignedInput { index: usize, coefficient: i64 },

    #[error("block {index} has color {color} outside 1..={s}")]
    BadColorRange {
        index: usize,
        color: usize,
        s: usize,
    },

    #[error("order is not a permutation of the {blocks} blocks")]
    NotAPermutation { blocks: usize },

    #[error("block graph is not a disjoint union of loop-colored copies: {0}")]
    NotAUnionBlockGraph(String),

    #[error("arc digraph is not connected: circuit covers {covered} of {total} arcs")]
    DisconnectedArcDigraph { covered: usize, total: usize },

    #[error("host vertex {vertex} has in-degree {indegree} but out-degree {outdegree}")]
    ImbalancedArcs {
        vertex: usize,
        indegree: usize,
        outdegree: usize,
    },

    #[error("block set K is empty")]
    EmptyK,

    #[error("not a pairwise balanced design: {0}")]
    InvalidPbd(String),

    #[error("no part supplied for block size {0}")]
    MissingPart(usize),

    #[error("part for block size {size} rejected: {reason}")]
    PartNotVerified { size: usize, reason: String },

    #[error("loop sums at vertex {vertex} are {got:?}, expected {want:?}")]
    LoopSumMismatch {
        vertex: usize,
        got: Vec<u64>,
        want: Vec<u64>,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "INVALID_GRAPH",
            Error::NoEdges => "NO_EDGES",
            Error::VertexBoundExceeded { .. } => "VERTEX_BOUND_EXCEEDED",
            Error::NonIntegralMu { .. } => "NON_INTEGRAL_MU",
            Error::Inadmissible { .. } => "INADMISSIBLE",
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::NotPrimePower(_) => "NOT_PRIME_POWER",
            Error::FieldTooLarge { .. } => "FIELD_TOO_LARGE",
            Error::IndexDoesNotDivide { .. } => "INDEX_DOES_NOT_DIVIDE",
            Error::MinusOneNotInSubgroup { .. } => "MINUS_ONE_NOT_IN_SUBGROUP",
            Error::CongruenceFails { .. } => "CONGRUENCE_FAILS",
            Error::SearchExhausted => "SEARCH_EXHAUSTED",
            Error::Timeout { .. } => "TIMEOUT",
            Error::NotFoundWithinBudget { .. } => "NOT_FOUND_WITHIN_BUDGET",
            Error::Inconsistent(_) => "INCONSISTENT",
            Error::VerificationFailed(_) => "VERIFICATION_FAILED",
            Error::MalformedBlock { .. } => "MALFORMED_BLOCK",
            Error::SignedInput { .. } => "SIGNED_INPUT",
            Error::BadColorRange { .. } => "BAD_COLOR_RANGE",
            Error::NotAPermutation { .. } => "NOT_A_PERMUTATION",
            Error::NotAUnionBlockGraph(_) => "NOT_A_UNION_BLOCK_GRAPH",
            Error::DisconnectedArcDigraph { .. } => "DISCONNECTED_ARC_DIGRAPH",
            Error::ImbalancedArcs { .. } => "IMBALANCED_ARCS",
            Error::EmptyK => "EMPTY_K",
            Error::InvalidPbd(_) => "INVALID_PBD",
            Error::MissingPart(_) => "MISSING_PART",
            Error::PartNotVerified { .. } => "PART_NOT_VERIFIED",
            Error::LoopSumMismatch { .. } => "LOOP_SUM_MISMATCH",
            Error::Overflow(_) => "OVERFLOW",
        }
    }
}
