//! Partial and total derivatives.

use super::atom::{Atom, Coord, Exponent};
use super::expr::Expr;
use super::{ExprError, THETA};

/// Applies the derivation fixed by its action on leaf atoms.
///
/// `leaf` returns the derivative of a variable, parameter or jet atom, or
/// `None` when it is zero. Kernels follow the chain rule; symbolic exponents
/// contribute `a^E · ln(a) · D(E)`.
pub fn derive<F>(e: &Expr, leaf: &F) -> Result<Expr, ExprError>
where
    F: Fn(&Atom) -> Result<Option<Expr>, ExprError>,
{
    let mut parts = Vec::new();
    for (mono, c) in e.terms() {
        for (i, (a, k)) in mono.iter().enumerate() {
            let da = derive_atom(a, leaf)?;
            let dk = match k {
                Exponent::Lat(_, 0) => Expr::zero(),
                Exponent::Lat(_, n) => match leaf(&Atom::param(THETA))? {
                    Some(dt) => dt.scale(&super::expr::rint(*n)),
                    None => Expr::zero(),
                },
                Exponent::Sym(s) => derive(s, leaf)?,
            };
            if da.is_zero() && dk.is_zero() {
                continue;
            }
            let mut rest = mono.clone();
            rest.remove(i);
            let rest = Expr::from_canonical_term(rest, c.clone());
            let a_expr = match a {
                Atom::Base(b) => (**b).clone(),
                _ => Expr::atom(a.clone()),
            };
            let power = a_expr.pow(&k.to_expr());
            let mut term = Expr::zero();
            if !da.is_zero() {
                // k · a^(k-1) · D(a)
                let lowered = a_expr.pow(&(k.to_expr() - Expr::one()));
                term = term + k.to_expr() * lowered * da;
            }
            if !dk.is_zero() {
                term = term + power * a_expr.ln() * dk;
            }
            parts.push(rest * term);
        }
    }
    Ok(Expr::sum(parts))
}

fn derive_atom<F>(a: &Atom, leaf: &F) -> Result<Expr, ExprError>
where
    F: Fn(&Atom) -> Result<Option<Expr>, ExprError>,
{
    Ok(match a {
        Atom::Var(_) | Atom::Param(_) | Atom::Jet(_) => leaf(a)?.unwrap_or_else(Expr::zero),
        Atom::Base(b) => derive(b, leaf)?,
        Atom::Exp(u) => {
            let du = derive(u, leaf)?;
            if du.is_zero() {
                du
            } else {
                Expr::atom(a.clone()) * du
            }
        }
        Atom::Ln(u) => {
            let du = derive(u, leaf)?;
            if du.is_zero() {
                du
            } else {
                du * (**u).recip()
            }
        }
        Atom::Sin(u) => {
            let du = derive(u, leaf)?;
            if du.is_zero() {
                du
            } else {
                u.cos() * du
            }
        }
        Atom::Cos(u) => {
            let du = derive(u, leaf)?;
            if du.is_zero() {
                du
            } else {
                -(u.sin() * du)
            }
        }
    })
}

/// ∂e/∂wrt with every other atom held fixed. `wrt` must be a leaf atom.
pub fn differentiate(e: &Expr, wrt: &Atom) -> Expr {
    assert!(wrt.is_leaf(), "differentiation variable must be a variable, jet or parameter");
    derive(e, &|a: &Atom| Ok(if a == wrt { Some(Expr::one()) } else { None }))
        .expect("partial differentiation cannot overflow the jet order")
}

/// Total derivative D_x, D_y or D_t on the jet space of φ (and of ψ).
pub fn total_derivative(e: &Expr, base: Coord) -> Result<Expr, ExprError> {
    derive(e, &|a: &Atom| match a {
        Atom::Var(c) if *c == base => Ok(Some(Expr::one())),
        Atom::Jet(j) if matches!(j.dep, super::atom::Dep::Phi | super::atom::Dep::Psi) => {
            Ok(Some(Expr::atom(Atom::Jet(j.bump_coord(base)?))))
        }
        _ => Ok(None),
    })
}
