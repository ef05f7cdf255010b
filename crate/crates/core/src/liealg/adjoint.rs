use std::sync::OnceLock;

use super::{structure_constants, AlgebraElement, LieError, StructureConstants};
use crate::symexpr::{Expr, GAMMA};

pub type Matrix5 = [[Expr; 5]; 5];

fn constants() -> &'static StructureConstants {
    static C: OnceLock<StructureConstants> = OnceLock::new();
    C.get_or_init(|| structure_constants().expect("standard generators close under the bracket"))
}

fn gamma() -> Expr {
    Expr::param(GAMMA)
}

fn check_index(i: usize) -> Result<usize, LieError> {
    if (1..=5).contains(&i) {
        Ok(i - 1)
    } else {
        Err(LieError::BadIndex(i))
    }
}

/// Coordinates of [X_i, A].
fn bracket_with(i: usize, a: &[Expr; 5]) -> [Expr; 5] {
    let c = constants();
    let mut out: [Expr; 5] = Default::default();
    for (j, aj) in a.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        for k in 0..5 {
            if !c[i][j][k].is_zero() {
                out[k] = &out[k] + &(aj * &c[i][j][k]);
            }
        }
    }
    out
}

/// Matrix of Y ↦ [Y, A]: column j holds the coordinates of [X_j, A].
///
/// This is the arrangement of the displayed Ad(X) matrix in the Killing-form
/// proof (row X₂ reads −α₂, α₁). It is the negative of the usual ad(A), which
/// leaves trace(ad∘ad) unchanged.
pub fn ad_matrix(a: &AlgebraElement) -> Matrix5 {
    let mut m: Matrix5 = Default::default();
    for j in 0..5 {
        let col = bracket_with(j, &a.alpha);
        for (k, v) in col.into_iter().enumerate() {
            m[k][j] = v;
        }
    }
    m
}

pub fn mat_mul(a: &Matrix5, b: &Matrix5) -> Matrix5 {
    let mut m: Matrix5 = Default::default();
    for i in 0..5 {
        for j in 0..5 {
            m[i][j] = Expr::sum((0..5).map(|k| &a[i][k] * &b[k][j]));
        }
    }
    m
}

pub fn identity() -> Matrix5 {
    let mut m: Matrix5 = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Expr::one();
    }
    m
}

/// trace(ad(A) ∘ ad(B)).
pub fn killing_form(a: &AlgebraElement, b: &AlgebraElement) -> Expr {
    let p = mat_mul(&ad_matrix(a), &ad_matrix(b));
    Expr::sum((0..5).map(|i| p[i][i].clone()))
}

/// Closed-form Ad(exp(εX_i)) applied to A (coefficient rows of the
/// invariant-function table).
pub fn adjoint_action(i: usize, eps: &Expr, a: &AlgebraElement) -> Result<AlgebraElement, LieError> {
    let [a1, a2, a3, a4, a5] = a.alpha.clone();
    let g = gamma();
    let alpha = match check_index(i)? {
        0 => {
            let s = (&g * eps).exp();
            [a1, eps.exp() * a2, a3, &s * &a4, &s * &a5]
        }
        1 => {
            let b2 = a2 - eps * &a1;
            [a1, b2, a3, a4, a5]
        }
        2 => {
            let (c, s) = (eps.cos(), eps.sin());
            let b4 = &a4 * &c + &a5 * &s;
            let b5 = &a5 * &c - &a4 * &s;
            [a1, a2, a3, b4, b5]
        }
        3 => {
            let b4 = &a4 - &(&(&g * eps) * &a1);
            let b5 = &a5 + &(eps * &a3);
            [a1, a2, a3, b4, b5]
        }
        _ => {
            let b4 = &a4 - &(eps * &a3);
            let b5 = &a5 - &(&(&g * eps) * &a1);
            [a1, a2, a3, b4, b5]
        }
    };
    Ok(AlgebraElement { alpha })
}

/// Truncated series Σ_{n ≤ order} (−ε)ⁿ/n! adⁿ_{X_i}(A).
pub fn adjoint_series(i: usize, eps: &Expr, a: &AlgebraElement, order: usize) -> Result<AlgebraElement, LieError> {
    let i = check_index(i)?;
    let mut term = a.alpha.clone();
    let mut acc = a.alpha.clone();
    let mut fact = 1i64;
    for n in 1..=order {
        fact *= n as i64;
        term = bracket_with(i, &term);
        let coef = (-eps).powi(n as i64) * Expr::rational(1, fact);
        for (s, t) in acc.iter_mut().zip(&term) {
            *s = &*s + &(&coef * t);
        }
    }
    Ok(AlgebraElement { alpha: acc })
}

/// M_i(ε): the matrix with α·M_i = Ad(exp(εX_i))α for row vectors α.
pub fn generator_matrix(i: usize, eps: &Expr) -> Result<Matrix5, LieError> {
    let mut m = identity();
    let g = gamma();
    match check_index(i)? {
        0 => {
            m[1][1] = eps.exp();
            m[3][3] = (&g * eps).exp();
            m[4][4] = (&g * eps).exp();
        }
        1 => m[0][1] = -eps,
        2 => {
            m[3][3] = eps.cos();
            m[3][4] = -eps.sin();
            m[4][3] = eps.sin();
            m[4][4] = eps.cos();
        }
        3 => {
            m[0][3] = -(&g * eps);
            m[2][4] = eps.clone();
        }
        _ => {
            m[0][4] = -(&g * eps);
            m[2][3] = -eps;
        }
    }
    Ok(m)
}

/// 𝒜(ε₁..ε₅) = M₅M₄M₃M₂M₁, acting on row vectors.
pub fn adjoint_transform_matrix(eps: &[Expr; 5]) -> Matrix5 {
    let mut m = identity();
    for i in (1..=5).rev() {
        m = mat_mul(&m, &generator_matrix(i, &eps[i - 1]).expect("index in range"));
    }
    m
}

/// The displayed closed form of 𝒜 with σ₁ = ε₄cos ε₃ + ε₅sin ε₃ and
/// σ₂ = ε₄sin ε₃ − ε₅cos ε₃.
pub fn printed_adjoint_matrix(eps: &[Expr; 5]) -> Matrix5 {
    let [e1, e2, e3, e4, e5] = eps.clone();
    let g = gamma();
    let (c, s) = (e3.cos(), e3.sin());
    let s1 = &e4 * &c + &e5 * &s;
    let s2 = &e4 * &s - &e5 * &c;
    let ge = (&g * &e1).exp();
    let z = Expr::zero;
    [
        [Expr::one(), -(&e2 * &e1.exp()), z(), -(&(&g * &s1) * &ge), &(&g * &s2) * &ge],
        [z(), e1.exp(), z(), z(), z()],
        [z(), z(), Expr::one(), &s2 * &ge, &s1 * &ge],
        [z(), z(), z(), &ge * &c, -(&ge * &s)],
        [z(), z(), z(), &ge * &s, &ge * &c],
    ]
}

/// Row vector times matrix.
pub fn apply_row(alpha: &[Expr; 5], m: &Matrix5) -> [Expr; 5] {
    let mut out: [Expr; 5] = Default::default();
    for (j, o) in out.iter_mut().enumerate() {
        *o = Expr::sum((0..5).map(|k| &alpha[k] * &m[k][j]));
    }
    out
}
