//! The governing equation and on-shell reduction.

use std::collections::BTreeMap;

use crate::symexpr::{substitute_many, total_derivative, Atom, Coord, Dep, Expr, ExprError, JetVar};

/// Δ = φ_t − 2φ_x² − 2φφ_xx − 2φ_y² − 2φφ_yy + hφ^θ.
pub fn delta() -> Expr {
    Expr::phi_d(0, 0, 1) - evolution_rhs()
}

/// Right-hand side of φ_t = 2(φ_x² + φ_y²) + 2φ(φ_xx + φ_yy) − hφ^θ.
pub fn evolution_rhs() -> Expr {
    let two = Expr::int(2);
    let phi = Expr::phi();
    let (px, py) = (Expr::phi_d(1, 0, 0), Expr::phi_d(0, 1, 0));
    let lap = Expr::phi_d(2, 0, 0) + Expr::phi_d(0, 2, 0);
    two.clone() * (px.clone() * px + py.clone() * py) + two * phi.clone() * lap
        - Expr::param("h") * phi.pow(&Expr::theta())
}

/// Eliminates every t-derivative of φ using the equation and its total
/// derivatives, innermost first. Fails if a reduction needs order 5.
pub fn on_shell(e: &Expr) -> Result<Expr, ExprError> {
    reduce_t_jets(e, &mut BTreeMap::new())
}

fn reduce_jet(j: JetVar, memo: &mut BTreeMap<JetVar, Expr>) -> Result<Expr, ExprError> {
    if j.idx[2] == 0 {
        return Ok(Expr::atom(Atom::Jet(j)));
    }
    if let Some(r) = memo.get(&j) {
        return Ok(r.clone());
    }
    let [a, b, c] = j.idx;
    // φ_{x^a y^b t^c} = D_x^a D_y^b D_t^(c−1) R, reduced after every D_t
    let mut r = evolution_rhs();
    for _ in 1..c {
        r = total_derivative(&r, Coord::T)?;
        r = reduce_t_jets(&r, memo)?;
    }
    for _ in 0..a {
        r = total_derivative(&r, Coord::X)?;
    }
    for _ in 0..b {
        r = total_derivative(&r, Coord::Y)?;
    }
    memo.insert(j, r.clone());
    Ok(r)
}

fn reduce_t_jets(e: &Expr, memo: &mut BTreeMap<JetVar, Expr>) -> Result<Expr, ExprError> {
    let targets: Vec<JetVar> = e.jets().into_iter().filter(|j| j.dep == Dep::Phi && j.idx[2] > 0).collect();
    let mut pairs = Vec::with_capacity(targets.len());
    for j in targets {
        pairs.push((Atom::Jet(j), reduce_jet(j, memo)?));
    }
    Ok(substitute_many(e, &pairs))
}
