use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The closed-up diagram has more than one component.
    #[error("closure is not a knot ({components} components)")]
    NotAKnot { components: usize },

    #[error("first homology is not cyclic")]
    NonCyclicHomology,

    /// No residue class of q satisfies the coprimality condition.
    #[error("family is empty: 3 divides gcd(2n+1, p0+q0)")]
    EmptyFamily,

    /// A torsion denominator or minor vanished under the character of order `divisor`.
    #[error("torsion hypothesis violated at divisor {divisor} (minor {r},{s})")]
    HypothesisViolation { divisor: u64, r: usize, s: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u64, found: u64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
