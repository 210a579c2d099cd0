use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    Hypergraph(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group model mismatch: {0} vs {1}")]
    ModelMismatch(String, String),
    #[error("object is not compatible with the {model} model: {reason}")]
    IncompatibleObject { model: String, reason: String },
    #[error("degenerate geometric object: {0}")]
    Degenerate(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("geometric incidence violated: {0}")]
    Incidence(String),
    #[error("map is not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },
    #[error("invalid colouring: {0}")]
    Colouring(String),
    #[error("group too large: {size} elements exceeds the cap of {cap}")]
    GroupTooLarge { size: u128, cap: u128 },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("vertex set {0} does not disconnect the hypergraph")]
    NotDisconnecting(String),
    #[error("sparsity profile is not constant across the realisation")]
    NoProfile,
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Internal invariant failures map to a distinct exit code in the CLI.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
