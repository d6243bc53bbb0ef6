//! Exact-arithmetic Schubert calculus on flag varieties over Spec Z.
//!
//! The engine computes in the split model of the invariant arithmetic Chow
//! ring: a class is a pair of a Schubert-coefficient table and an
//! SU(n)-invariant differential form with rational coefficients.  Every
//! computation is exact; no floating point appears anywhere.
//!
//! Module map:
//! - [`perm`]: permutations, flag types, Monk transpositions, index sets
//! - [`poly`]: sparse multivariate polynomials over `Q`, divided differences,
//!   Schubert polynomials, scalar products, ideal decomposition
//! - [`forms`]: the graded-commutative algebra of invariant forms, curvature
//!   matrices, `dd^c`, integration of top forms
//! - [`bcform`]: Bott-Chern forms of hermitian filtrations with induced metrics
//! - [`chow`]: arithmetic classes, products, degrees, heights, arithmetic Monk
//! - [`verify`]: the runnable property suites behind `flagchow verify`
//!
//! ```
//! use flagchow::chow::{arithmetic_degree, monomial_class, height_pluriplucker};
//! use flagchow::perm::FlagType;
//! use flagchow::ratio;
//!
//! // deg(x̂_2^4) on the three-dimensional complete flag variety
//! let r = FlagType::complete(3);
//! let class = monomial_class(&[0, 4, 0], &r).unwrap();
//! assert_eq!(arithmetic_degree(&class).unwrap(), ratio(1, 2));
//!
//! // the pluri-Pluecker height of the projective plane
//! let p2 = FlagType::new(vec![1, 3]).unwrap();
//! assert_eq!(height_pluriplucker(&p2).unwrap(), ratio(5, 4));
//! ```

pub mod bcform;
pub mod chow;
pub mod forms;
pub mod perm;
pub mod poly;
pub mod verify;

use num_bigint::BigInt;

/// Exact rational scalar used everywhere in the engine.
pub type Rat = num_rational::BigRational;

/// Shorthand for a small integer rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Shorthand for the exact fraction `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Errors reported for invalid inputs.  Internal invariant violations are
/// engine faults and panic instead: they indicate a bug, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(u32, u32),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("polynomial is not in the ideal: Schubert support meets S_n at w = {0}")]
    NotInIdeal(String),
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("class is not reduced: {0}")]
    NotReduced(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("odd-type input: {0}")]
    OddType(String),
    #[error("ambient dimension {0} exceeds the configured cap {1} (set FLAGCHOW_NMAX to raise it)")]
    CapExceeded(u32, u32),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest ambient dimension accepted by default.  The invariant form
/// algebra on the complete flag has `2^(n(n-1))` potential words, so the
/// guard protects against accidental blowup.  `FLAGCHOW_NMAX` overrides.
pub const DEFAULT_MAX_N: u32 = 8;

/// Effective ambient cap, honoring the `FLAGCHOW_NMAX` environment variable.
pub fn ambient_cap() -> u32 {
    match std::env::var("FLAGCHOW_NMAX") {
        Ok(s) => s.trim().parse().unwrap_or(DEFAULT_MAX_N),
        Err(_) => DEFAULT_MAX_N,
    }
}

pub(crate) fn check_ambient(n: u32) -> Result<()> {
    let cap = ambient_cap().min(8);
    if n == 0 {
        return Err(Error::InvalidFlagType("ambient dimension must be positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded(n, cap));
    }
    Ok(())
}

pub use chow::ArithmeticClass;
pub use forms::{Form, FormMatrix};
pub use perm::{FlagType, Permutation};
pub use poly::Poly;
