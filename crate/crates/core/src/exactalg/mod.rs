//! Exact scalars and sparse polynomial arithmetic.

mod binary;
mod monomial;
mod poly;
mod scalar;

pub use binary::{binary_gcd, linear_root, BinaryForm, UPoly};
pub use monomial::{binomial, monomials_of_degree, Monomial};
pub use poly::{indexed_vars, make_vars, BiDegree, MultiPoly, Vars};
pub(crate) use poly::same_vars;
pub use scalar::{format_rational, parse_rational, Domain, Fp, Scalar};

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("scalar domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("polynomials live in different variable lists")]
    VariableMismatch,
    #[error("expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("split {split} does not partition {nvars} variables")]
    InvalidPartition { split: usize, nvars: usize },
    #[error("operation requires rational coefficients")]
    NotRational,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("denominator divisible by {0}")]
    DenominatorDivisibleByPrime(u64),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a binary form")]
    NotBinaryForm,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Exact product of two polynomials in the same ring.
pub fn poly_mul(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    p.checked_mul(q)
}

/// Exact value of `p` at `point`.
pub fn poly_eval(p: &MultiPoly, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
    p.eval(point)
}

pub fn partial_derivative(p: &MultiPoly, var: &str) -> Result<MultiPoly, AlgebraError> {
    p.partial_derivative_by_name(var)
}

/// Block degrees with the X-block `[0, split)`.
pub fn bidegree(p: &MultiPoly, split: usize) -> Result<BiDegree, AlgebraError> {
    p.bidegree(split)
}

pub fn l1_norm(p: &MultiPoly) -> Result<BigRational, AlgebraError> {
    p.l1_norm()
}
