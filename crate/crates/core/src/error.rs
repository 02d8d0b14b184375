use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {q}^{degree} does not fit the element encoding")]
    FieldTooLarge { q: u32, degree: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("{k} does not divide {size} - 1")]
    NoRootOfUnity { k: u64, size: u64 },
    #[error("{m} does not divide the field degree {degree}")]
    DegreeMismatch { m: usize, degree: usize },
    #[error("element is outside the image of the embedding")]
    NotInImage,
    #[error("characteristic 2 has no solution with y != 0")]
    EvenCharacteristic,
    #[error("gcd({base}, {modulus}) != 1")]
    NotCoprime { base: u64, modulus: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order exceeds the bound {0}")]
    OrderBound(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not nilpotent")]
    NotNilpotent,

    #[error("group order {order} is not invertible in characteristic {q}")]
    NotSemisimple { order: usize, q: u32 },
    #[error("quotient is not cyclic")]
    NotCyclic,
    #[error("invalid cyclotomic class: {0}")]
    InvalidClass(String),
    #[error("mismatched group or field context")]
    ContextMismatch,

    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("enumeration of {0} codewords exceeds the bound")]
    EnumerationBound(u64),
    #[error("code has no non-zero codewords")]
    EmptyCode,
}
