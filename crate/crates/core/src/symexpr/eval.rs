//! Double-precision evaluation.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::atom::{Atom, Coord, Dep, Exponent, JetVar};
use super::expr::Expr;
use super::{ExprError, GAMMA, TAU, THETA};

/// Values for the free atoms of an expression. γ and τ default to their
/// definitions in θ when not assigned explicitly.
#[derive(Clone, Debug, Default)]
pub struct PointAssignment {
    values: BTreeMap<Atom, f64>,
}

impl PointAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, a: Atom, v: f64) -> &mut Self {
        self.values.insert(a, v);
        self
    }

    pub fn with(mut self, a: Atom, v: f64) -> Self {
        self.values.insert(a, v);
        self
    }

    pub fn with_var(self, c: Coord, v: f64) -> Self {
        self.with(Atom::Var(c), v)
    }

    pub fn with_param(self, name: &str, v: f64) -> Self {
        self.with(Atom::param(name), v)
    }

    pub fn with_jet(self, dep: Dep, idx: [u8; 3], v: f64) -> Self {
        self.with(Atom::Jet(JetVar::new(dep, idx).expect("valid jet")), v)
    }

    /// Coordinates (x, y, t) at once.
    pub fn at(self, x: f64, y: f64, t: f64) -> Self {
        self.with_var(Coord::X, x).with_var(Coord::Y, y).with_var(Coord::T, t)
    }

    pub fn get(&self, a: &Atom) -> Option<f64> {
        if let Some(v) = self.values.get(a) {
            return Some(*v);
        }
        let th = || self.values.get(&Atom::param(THETA)).copied();
        match a.param_name() {
            Some(GAMMA) => th().map(|t| (t - 2.0) / (2.0 * (t - 1.0))),
            Some(TAU) => th().map(|t| 1.0 / (t - 1.0)),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &f64)> {
        self.values.iter()
    }
}

fn real_pow(b: f64, k: f64, integral: bool) -> Result<f64, ExprError> {
    if integral {
        if b == 0.0 && k < 0.0 {
            return Err(ExprError::Domain("division by zero".into()));
        }
        return Ok(b.powi(k as i32));
    }
    if b < 0.0 {
        return Err(ExprError::Domain(format!("negative base {b} to non-integer power {k}")));
    }
    if b == 0.0 && k <= 0.0 {
        return Err(ExprError::Domain("zero to a non-positive power".into()));
    }
    Ok(b.powf(k))
}

fn atom_value(a: &Atom, at: &PointAssignment) -> Result<f64, ExprError> {
    match a {
        Atom::Var(_) | Atom::Param(_) | Atom::Jet(_) => at.get(a).ok_or_else(|| ExprError::Unassigned(a.to_string())),
        Atom::Base(b) => eval_numeric(b, at),
        Atom::Exp(u) => Ok(eval_numeric(u, at)?.exp()),
        Atom::Ln(u) => {
            let v = eval_numeric(u, at)?;
            if v <= 0.0 {
                return Err(ExprError::Domain(format!("ln of non-positive {v}")));
            }
            Ok(v.ln())
        }
        Atom::Sin(u) => Ok(eval_numeric(u, at)?.sin()),
        Atom::Cos(u) => Ok(eval_numeric(u, at)?.cos()),
    }
}

fn factor_value(a: &Atom, k: &Exponent, at: &PointAssignment) -> Result<f64, ExprError> {
    let b = atom_value(a, at)?;
    match k {
        Exponent::Lat(m, 0) => real_pow(b, *m as f64, true),
        Exponent::Lat(m, n) => {
            let th = at.get(&Atom::param(THETA)).ok_or_else(|| ExprError::Unassigned(THETA.into()))?;
            real_pow(b, *m as f64 + *n as f64 * th, false)
        }
        Exponent::Sym(s) => real_pow(b, eval_numeric(s, at)?, false),
    }
}

/// Value and the largest term magnitude of the top-level sum.
pub fn eval_terms(e: &Expr, at: &PointAssignment) -> Result<(f64, f64), ExprError> {
    let mut total = 0.0;
    let mut biggest: f64 = 0.0;
    for (mono, c) in e.terms() {
        let mut v = c.to_f64().unwrap_or(f64::NAN);
        for (a, k) in mono {
            v *= factor_value(a, k, at)?;
        }
        biggest = biggest.max(v.abs());
        total += v;
    }
    if !total.is_finite() {
        return Err(ExprError::Domain("overflow or NaN".into()));
    }
    Ok((total, biggest))
}

/// Evaluates `e`; fractional powers of negative bases are domain errors.
pub fn eval_numeric(e: &Expr, at: &PointAssignment) -> Result<f64, ExprError> {
    eval_terms(e, at).map(|(v, _)| v)
}
