//! Exact arithmetic in Q(x1, …, xk): integer polynomials, canonical rational
//! functions, a factored product form, the expression grammar and integer
//! factorization.

mod factored;
mod gcd;
mod integer;
mod multipoly;
mod parse;
mod poly;
mod rf;

pub use factored::Factored;
pub use integer::factor_integer;
pub use multipoly::{divides, MultiPoly};
pub use parse::parse;
pub use rf::RationalFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes under substitution")]
    Pole,
    #[error("variable '{0}' is not bound")]
    Unbound(String),
    #[error("cannot factor zero")]
    ZeroInput,
}
