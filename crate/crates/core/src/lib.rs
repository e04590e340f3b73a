pub mod expr;
pub mod freealg;
pub mod hall;
pub mod linalg;
pub mod scalar;
pub mod uaw;
pub mod verify;

pub use expr::{parse_expr, Expr, ParseError};
pub use freealg::{FreeElement, Letter, Word};
pub use hall::{expand, HallBasis, HallElement, HallError, LieSeries, LieTree};
pub use linalg::{BasisIndex, Elimination, ExactMatrix, LinalgError};
pub use scalar::{LaurentPoly, RatFunc, ScalarError};
pub use uaw::{Central, CommPoly, Engine, NormalWord, ReductionRules, Rule, UawElement, UawError};
pub use verify::{run_check, run_suite, CheckResult, Params, SuiteReport, VerifyError};
