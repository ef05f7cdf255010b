use crate::symexpr::{gamma_expr, substitute_many, tau_expr, Atom, Coord, Expr};

/// New solution generated from `phi` by the flow of Xᵢ with parameter `eps`.
///
/// X₁ maps f to e^(−ε/(θ−1))·f(xe^(−γε), ye^(−γε), te^(−ε)); X₃ is applied as
/// the exact rotation f(x cos ε − y sin ε, x sin ε + y cos ε).
pub fn apply_group(i: usize, eps: &Expr, phi: &Expr) -> Expr {
    let (x, y, t) = (Expr::x(), Expr::y(), Expr::t());
    let at = |nx: Expr, ny: Expr, nt: Expr| {
        substitute_many(phi, &[(Atom::Var(Coord::X), nx), (Atom::Var(Coord::Y), ny), (Atom::Var(Coord::T), nt)])
    };
    match i {
        1 => {
            let shrink = (-(gamma_expr() * eps.clone())).exp();
            let scaled = at(x * shrink.clone(), y * shrink, t * (-eps.clone()).exp());
            (-(tau_expr() * eps.clone())).exp() * scaled
        }
        2 => at(x, y, t - eps.clone()),
        3 => {
            let (c, s) = (eps.cos(), eps.sin());
            at(x.clone() * c.clone() - y.clone() * s.clone(), x * s + y * c, t)
        }
        4 => at(x - eps.clone(), y, t),
        5 => at(x, y - eps.clone(), t),
        _ => panic!("generator index {i} outside 1..=5"),
    }
}
