use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order assertions form a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("a poset needs at least one element")]
    EmptyPoset,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("{what} exceeds the configured bound of {limit}")]
    BoundExceeded { what: &'static str, limit: usize },
    #[error("poset is not a lattice")]
    NotALattice,
    #[error("poset is not bounded")]
    NotBounded,
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("poset is not a Boolean algebra")]
    NotBoolean,
    #[error("invalid orthocomplementation: {0}")]
    InvalidOrthoMap(String),
    #[error("subspace is not full, separating, and closure-coinciding")]
    NotInS,
    #[error("carrier mismatch: {0} vs {1}")]
    CarrierMismatch(usize, usize),
    #[error("member {member} lies outside a carrier of size {carrier}")]
    MemberOutOfRange { member: usize, carrier: usize },
    #[error("verification of `{check}` failed: {detail}")]
    VerificationFailed { check: &'static str, detail: String },
}
