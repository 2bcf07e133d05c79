//! Exact arithmetic: polynomials, rational functions, truncated series and
//! closed-form expressions, plus the verification modes built on them.

pub mod eval;
pub mod expr;
pub mod jet;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod ratfun;
pub mod scalar;
pub mod vars;

pub use eval::{check, Env, Identity, Mode, Verdict};
pub use expr::{expand_closed_form, Expr};
pub use jet::LaurentJet;
pub use poly::{Monomial, Poly};
pub use qseries::{QSeries, EXACT};
pub use rational::Rational;
pub use ratfun::{ratfun_eval, RationalFunction};
pub use scalar::Scalar;
pub use vars::Var;
