//! Exact symbolic expressions over (x, y, t), jets of φ and named parameters.

mod atom;
mod diff;
mod eval;
mod expr;
mod parse;
mod print;
mod subst;
pub(crate) mod together;
mod zero;

pub use atom::{Atom, Coord, Dep, Exponent, JetVar, MAX_JET_ORDER};
pub use diff::{derive, differentiate, total_derivative};
pub use eval::{eval_numeric, eval_terms, PointAssignment};
pub use expr::{rat, rint, Expr, Monomial};
pub use parse::parse;
pub use subst::{expand_defined, substitute, substitute_many, substitute_with};
pub use zero::{is_zero, Constraints, ZeroVerdict};

pub type Rational = num_rational::BigRational;

pub const THETA: &str = "theta";
/// γ ≡ (θ−2)/(2(θ−1)).
pub const GAMMA: &str = "gamma";
/// τ ≡ 1/(θ−1).
pub const TAU: &str = "tau";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("jet order {0} exceeds the cap of 4")]
    JetOrder(u8),
    #[error("invalid expression: {0}")]
    Invalid(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unassigned atom `{0}`")]
    Unassigned(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("constraint violation: {0}")]
    Constraint(String),
    #[error("no admissible sample points for the constraint set")]
    NoSamples,
}

/// γ as an expression in θ.
pub fn gamma_expr() -> Expr {
    let th = Expr::theta();
    (th.clone() - Expr::int(2)) / (Expr::int(2) * (th - Expr::one()))
}

/// τ as an expression in θ.
pub fn tau_expr() -> Expr {
    (Expr::theta() - Expr::one()).recip()
}
