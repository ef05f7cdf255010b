//! Capture-free substitution.

use super::atom::{Atom, Exponent};
use super::expr::{product_of, Expr};
use super::{gamma_expr, tau_expr, ExprError, GAMMA, TAU, THETA};

/// Rebuilds `e`, replacing every atom for which `f` returns a value.
///
/// `f` is consulted on kernels too (before recursing into them), so a whole
/// `Exp(..)` or `Base(..)` can be targeted. θ inside lattice exponents is
/// visited as the parameter `theta`.
pub fn substitute_with<F>(e: &Expr, f: &F) -> Result<Expr, ExprError>
where
    F: Fn(&Atom) -> Result<Option<Expr>, ExprError>,
{
    let theta_sub = f(&Atom::param(THETA))?;
    rebuild(e, f, theta_sub.as_ref())
}

fn rebuild<F>(e: &Expr, f: &F, theta_sub: Option<&Expr>) -> Result<Expr, ExprError>
where
    F: Fn(&Atom) -> Result<Option<Expr>, ExprError>,
{
    let mut parts = Vec::with_capacity(e.len());
    for (mono, c) in e.terms() {
        let mut kept = Vec::new();
        let mut changed = Vec::new();
        for (a, k) in mono {
            let new_a = match f(a)? {
                Some(r) => Some(r),
                None => match a {
                    Atom::Var(_) | Atom::Param(_) | Atom::Jet(_) => None,
                    Atom::Base(b) => changed_inner(b, f, theta_sub)?,
                    Atom::Exp(u) => changed_inner(u, f, theta_sub)?.map(|u| u.exp()),
                    Atom::Ln(u) => changed_inner(u, f, theta_sub)?.map(|u| u.ln()),
                    Atom::Sin(u) => changed_inner(u, f, theta_sub)?.map(|u| u.sin()),
                    Atom::Cos(u) => changed_inner(u, f, theta_sub)?.map(|u| u.cos()),
                },
            };
            let new_k = match k {
                Exponent::Lat(_, n) if *n != 0 && theta_sub.is_some() => {
                    Some(rebuild(&k.to_expr(), f, theta_sub)?)
                }
                Exponent::Sym(s) => {
                    let r = rebuild(s, f, theta_sub)?;
                    (r != **s).then_some(r)
                }
                _ => None,
            };
            match (new_a, new_k) {
                (None, None) => kept.push((a.clone(), k.clone())),
                (na, nk) => {
                    let base = na.unwrap_or_else(|| match a {
                        Atom::Base(b) => (**b).clone(),
                        _ => Expr::atom(a.clone()),
                    });
                    let exp = nk.unwrap_or_else(|| k.to_expr());
                    changed.push(base.pow(&exp));
                }
            }
        }
        let mut term = product_of(c.clone(), kept);
        for x in changed {
            term = term.times(&x);
        }
        parts.push(term);
    }
    Ok(Expr::sum(parts))
}

fn changed_inner<F>(inner: &Expr, f: &F, theta_sub: Option<&Expr>) -> Result<Option<Expr>, ExprError>
where
    F: Fn(&Atom) -> Result<Option<Expr>, ExprError>,
{
    let r = rebuild(inner, f, theta_sub)?;
    Ok((r != *inner).then_some(r))
}

/// Replaces every occurrence of `target` (a leaf or a whole kernel) by `replacement`.
pub fn substitute(e: &Expr, target: &Atom, replacement: &Expr) -> Expr {
    substitute_with(e, &|a: &Atom| Ok((a == target).then(|| replacement.clone())))
        .expect("plain substitution cannot fail")
}

/// Simultaneous substitution.
pub fn substitute_many(e: &Expr, pairs: &[(Atom, Expr)]) -> Expr {
    substitute_with(e, &|a: &Atom| Ok(pairs.iter().find(|(t, _)| t == a).map(|(_, r)| r.clone())))
        .expect("plain substitution cannot fail")
}

/// Expands the defined parameters γ and τ into θ.
pub fn expand_defined(e: &Expr) -> Expr {
    let g = Atom::param(GAMMA);
    let t = Atom::param(TAU);
    if !e.contains_atom(&g) && !e.contains_atom(&t) {
        return e.clone();
    }
    substitute_many(e, &[(g, gamma_expr()), (t, tau_expr())])
}

