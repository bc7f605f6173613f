//! Exact arithmetic: rationals, polynomials in the symbolic prime `p`, and
//! sparse multivariate polynomials over `ℚ[p]` in Chern-root variables.

mod multi;
mod param;
mod tensor;
mod text;

pub use multi::{Monomial, MultiPoly, VarSpace};
pub use param::{format_rational, int, parse_rational, rat, ParamPoly, ParamRational};
pub use tensor::{doubled_space, Side, TensorPoly};
pub use text::{JsonTerm, PolyJson};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable spaces differ: [{left}] vs [{right}]")]
    SpaceMismatch { left: String, right: String },
    #[error("no image given for variable `{0}`")]
    UnmappedVariable(String),
    #[error("image of variable `{0}` is not a homogeneous linear form")]
    NotLinear(String),
    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
