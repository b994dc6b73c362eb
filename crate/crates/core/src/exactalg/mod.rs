//! Exact rationals, multivariate Laurent polynomials and symbolic absolute values.

mod absval;
mod laurent;
mod rat;

pub use absval::{abs_cancel, AbsFactor, AbsKind, AbsProduct};
pub use laurent::{unit_exps, zero_exps, Exps, LaurentPoly, SignedMonomial, Substitution};
pub use rat::{as_i64, factorial, is_nonneg_integer, parse_rat, pow2, rat, rint, serde_rat, Rat};
