//! Exact arithmetic in the field `Q(q)`.

mod factor;
mod laurent;
mod parse;
mod ratfunc;

pub use factor::{cyclotomic, factor_report, Factor, FactorReport, MAX_CYCLOTOMIC_ORDER};
pub use laurent::LaurentPoly;
pub use ratfunc::{RatFunc, RatFuncJson};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at a pole")]
    Pole,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}
