use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Cartan datum: {0}")]
    UnsupportedCartan(String),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("not in domain of pi_D: monomial {0} has nonzero c_D weight")]
    NotInHcDomain(String),
    #[error("slot {slot} out of range for k = {k}")]
    SlotOutOfRange { slot: usize, k: usize },
    #[error("slot count mismatch: {0} vs {1}")]
    SlotMismatch(usize, usize),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("supply Phi via file: built-in associator is valid only for N <= 3 (got {0})")]
    BuiltinOrder(usize),
    #[error("F is not a solution at order {0}")]
    NotSolution(usize),
    #[error("pentagon failure at order {0}")]
    Pentagon(usize),
    #[error("non-degeneracy failure: {0}")]
    NonDegenerate(String),
    #[error("internal obstruction: {0}")]
    Obstruction(String),
    #[error("not equivalent: obstruction at order {0}")]
    NotEquivalent(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
