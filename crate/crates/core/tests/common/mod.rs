#![allow(dead_code)]

use plsym::symexpr::*;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::x()),
        Just(Expr::y()),
        Just(Expr::t()),
        Just(Expr::phi()),
        Just(Expr::phi_d(1, 0, 0)),
        Just(Expr::phi_d(0, 1, 0)),
        Just(Expr::phi_d(1, 1, 0)),
        Just(Expr::param("a")),
        Just(Expr::param("b")),
        Just(Expr::theta()),
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Expr::rational(n, d)),
    ]
}

/// Random expressions built through the public constructors. Kernels only
/// wrap arguments that stay positive on the sampling box used by callers.
pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), -2i64..=3).prop_map(|(a, k)| if a.is_zero() && k <= 0 { a } else { a.powi(k) }),
            (-1i64..=2, -1i64..=1).prop_map(|(m, n)| Expr::phi().pow(&(Expr::int(m) + Expr::int(n) * Expr::theta()))),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.clone().prop_map(|a| (a.clone() * a.clone() + Expr::one()).ln()),
            inner.clone().prop_map(|a| (a * Expr::rational(1, 4)).exp()),
            inner.clone().prop_map(|a| (a.clone() * a + Expr::int(2)).pow(&Expr::theta())),
            inner.prop_map(|a| a / (Expr::x() * Expr::x() + Expr::int(1))),
        ]
    })
}

/// Spatial jet polynomials (no t-jets), safe for D_x D_y commutation.
pub fn jet_expr() -> impl Strategy<Value = Expr> {
    let l = prop_oneof![
        Just(Expr::x()),
        Just(Expr::y()),
        Just(Expr::phi()),
        Just(Expr::phi_d(1, 0, 0)),
        Just(Expr::phi_d(0, 1, 0)),
        Just(Expr::phi().pow(&Expr::theta())),
        (-3i64..=3).prop_map(Expr::int),
    ];
    l.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.prop_map(|a| a.sin()),
        ]
    })
}

pub fn point(x: f64, y: f64, t: f64, phi: f64, a: f64, b: f64, theta: f64) -> PointAssignment {
    PointAssignment::new()
        .at(x, y, t)
        .with_jet(Dep::Phi, [0, 0, 0], phi)
        .with_jet(Dep::Phi, [1, 0, 0], 0.3 * a)
        .with_jet(Dep::Phi, [0, 1, 0], 0.2 * b)
        .with_jet(Dep::Phi, [1, 1, 0], 0.1)
        .with_param("a", a)
        .with_param("b", b)
        .with_param("theta", theta)
}

pub fn point_strategy() -> impl Strategy<Value = PointAssignment> {
    (-2.0..2.0f64, -2.0..2.0f64, 0.5..2.0f64, 0.2..2.0f64, -2.0..2.0f64, -2.0..2.0f64, 0.1..0.9f64)
        .prop_map(|(x, y, t, phi, a, b, th)| point(x, y, t, phi, a, b, th))
}

/// Central difference in x against the symbolic derivative.
pub fn derivative_agrees(e: &Expr, at: &PointAssignment) -> Result<bool, ExprError> {
    let d = differentiate(e, &Atom::Var(Coord::X));
    let x0 = at.get(&Atom::Var(Coord::X)).unwrap();
    let h = 1e-5 * (1.0 + x0.abs());
    let shift = |dx: f64| at.clone().with_var(Coord::X, x0 + dx);
    let cd = |h: f64| -> Result<f64, ExprError> { Ok((eval_numeric(e, &shift(h))? - eval_numeric(e, &shift(-h))?) / (2.0 * h)) };
    let fd = cd(h)?;
    // the oracle is only trusted where it is stable under step halving
    if (fd - cd(h / 2.0)?).abs() > 1e-7 * fd.abs().max(1.0) {
        return Err(ExprError::Domain("finite difference not resolved".into()));
    }
    let an = eval_numeric(&d, at)?;
    let (_, scale) = eval_terms(e, at)?;
    if !fd.is_finite() || !an.is_finite() || scale > 1e6 || an.abs() > 1e6 {
        return Err(ExprError::Domain("ill-conditioned sample".into()));
    }
    Ok((fd - an).abs() <= 1e-6 * an.abs().max(1.0))
}
