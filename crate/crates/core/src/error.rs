use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generated group exceeds the order bound {bound}")]
    ClosureTooLarge { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group of order {order} exceeds the bound {bound} for {what}")]
    GroupTooLarge { order: usize, bound: usize, what: &'static str },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },
    #[error("element is not a central idempotent")]
    NotCentralIdempotent,
    #[error("class function is not an irreducible character")]
    NotIrreducible,
    #[error("chain search exhausted its budget of {budget} extensions")]
    SearchBudgetExceeded { budget: u64 },
    #[error("no single rational multiple relates e_Q(λ^G) and e(G,H,K)")]
    InconsistentMultiple,
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
