//! The five-dimensional symmetry algebra of the model.

mod adjoint;
mod classify;
pub mod tables;

pub use adjoint::{
    ad_matrix, adjoint_action, adjoint_series, adjoint_transform_matrix, apply_row, killing_form, printed_adjoint_matrix,
    Matrix5,
};
pub use classify::{classify, invariant_row_mismatches, invariant_values, Classification, Invariants};

use crate::model::{delta, on_shell};
use crate::symexpr::{
    differentiate, expand_defined, is_zero, total_derivative, Atom, Constraints, Coord, Expr, ExprError, Rational,
    ZeroVerdict, GAMMA,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("generator index {0} is outside 1..=5")]
    BadIndex(usize),
    #[error("commutator leaves the span of X1..X5: {0}")]
    OutOfSpan(String),
    #[error("coefficients must be concrete rationals")]
    Symbolic,
    #[error("the zero element has no representative")]
    ZeroElement,
    #[error("theta must lie in (0, 1), got {0}")]
    Theta(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// ξ₁∂x + ξ₂∂y + ξ₃∂t + ξ₄∂φ with coefficients in (x, y, t, φ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub xi: [Expr; 4],
}

impl VectorField {
    pub fn new(xi1: Expr, xi2: Expr, xi3: Expr, xi4: Expr) -> Self {
        VectorField { xi: [xi1, xi2, xi3, xi4] }
    }

    pub fn zero() -> Self {
        VectorField::new(Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero())
    }

    /// The field as a first-order operator on a function of (x, y, t, φ).
    pub fn apply(&self, f: &Expr) -> Expr {
        let atoms = [Atom::Var(Coord::X), Atom::Var(Coord::Y), Atom::Var(Coord::T), Atom::phi()];
        Expr::sum(self.xi.iter().zip(&atoms).map(|(c, a)| c * &differentiate(f, a)))
    }

    pub fn scale(&self, k: &Expr) -> Self {
        VectorField { xi: self.xi.clone().map(|c| k * &c) }
    }

    pub fn plus(&self, o: &VectorField) -> Self {
        let mut xi = self.xi.clone();
        for (a, b) in xi.iter_mut().zip(&o.xi) {
            *a = &*a + b;
        }
        VectorField { xi }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|c| expand_defined(c).is_zero())
    }
}

/// X₁ = γx∂x + γy∂y + t∂t − φ/(θ−1)∂φ, X₂ = ∂t, X₃ = y∂x − x∂y, X₄ = ∂x, X₅ = ∂y.
pub fn standard_generators() -> [VectorField; 5] {
    let g = Expr::param(GAMMA);
    let (x, y, t, phi) = (Expr::x(), Expr::y(), Expr::t(), Expr::phi());
    let (z, one) = (Expr::zero(), Expr::one());
    [
        VectorField::new(&g * &x, &g * &y, t, -(phi / (Expr::theta() - Expr::one()))),
        VectorField::new(z.clone(), z.clone(), one.clone(), z.clone()),
        VectorField::new(y, -x, z.clone(), z.clone()),
        VectorField::new(one.clone(), z.clone(), z.clone(), z.clone()),
        VectorField::new(z.clone(), one, z.clone(), z),
    ]
}

/// `[V, W]^k = V(W^k) − W(V^k)`.
pub fn commutator(v: &VectorField, w: &VectorField) -> VectorField {
    let mut xi: [Expr; 4] = Default::default();
    for k in 0..4 {
        xi[k] = v.apply(&w.xi[k]) - w.apply(&v.xi[k]);
    }
    VectorField { xi }
}

/// Coordinates of `v` in the basis X₁..X₅.
pub fn expand_in_basis(v: &VectorField) -> Result<[Expr; 5], LieError> {
    let x = Atom::Var(Coord::X);
    let y = Atom::Var(Coord::Y);
    let t = Atom::Var(Coord::T);
    let zero_at = |e: &Expr| {
        crate::symexpr::substitute_many(
            e,
            &[(x.clone(), Expr::zero()), (y.clone(), Expr::zero()), (t.clone(), Expr::zero()), (Atom::phi(), Expr::zero())],
        )
    };
    let c1 = differentiate(&v.xi[2], &t);
    let c2 = zero_at(&v.xi[2]);
    let c3 = differentiate(&v.xi[0], &y);
    let c4 = zero_at(&v.xi[0]);
    let c5 = zero_at(&v.xi[1]);
    let coords = [c1, c2, c3, c4, c5];
    let gens = standard_generators();
    let mut rebuilt = VectorField::zero();
    for (c, g) in coords.iter().zip(&gens) {
        rebuilt = rebuilt.plus(&g.scale(c));
    }
    for (a, b) in rebuilt.xi.iter().zip(&v.xi) {
        let d = expand_defined(&(a - b));
        if !d.is_zero() && is_zero(&d, &Constraints::new())? != ZeroVerdict::Zero {
            return Err(LieError::OutOfSpan(format!("{d}")));
        }
    }
    Ok(coords)
}

/// `c[i][j][k]`: coefficient of X_{k+1} in [X_{i+1}, X_{j+1}].
pub type StructureConstants = [[[Expr; 5]; 5]; 5];

pub fn structure_constants() -> Result<StructureConstants, LieError> {
    let gens = standard_generators();
    let mut c: StructureConstants = Default::default();
    for i in 0..5 {
        for j in 0..5 {
            c[i][j] = expand_in_basis(&commutator(&gens[i], &gens[j]))?;
        }
    }
    Ok(c)
}

/// Sum over cyclic permutations of [[X_i, X_j], X_k] expressed through the
/// structure constants; every component should vanish.
pub fn jacobi_sum(c: &StructureConstants, i: usize, j: usize, k: usize) -> [Expr; 5] {
    let bracket = |a: usize, b: usize, e: usize| -> [Expr; 5] {
        let mut out: [Expr; 5] = Default::default();
        for m in 0..5 {
            for (l, out_l) in out.iter_mut().enumerate() {
                *out_l = &*out_l + &(&c[a][b][m] * &c[m][e][l]);
            }
        }
        out
    };
    let (p, q, r) = (bracket(i, j, k), bracket(j, k, i), bracket(k, i, j));
    let mut out: [Expr; 5] = Default::default();
    for l in 0..5 {
        out[l] = &(&p[l] + &q[l]) + &r[l];
    }
    out
}

/// Prolonged coefficients needed by the second-order equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Prolongation {
    pub x: Expr,
    pub y: Expr,
    pub t: Expr,
    pub xx: Expr,
    pub yy: Expr,
}

pub fn prolong2(v: &VectorField) -> Result<Prolongation, ExprError> {
    let d = total_derivative;
    let jets = [Expr::phi_d(1, 0, 0), Expr::phi_d(0, 1, 0), Expr::phi_d(0, 0, 1)];
    let first = |s: Coord| -> Result<Expr, ExprError> {
        let mut out = d(&v.xi[3], s)?;
        for (k, j) in jets.iter().enumerate() {
            out = out - j * &d(&v.xi[k], s)?;
        }
        Ok(out)
    };
    let second = |s: Coord, fs: &Expr| -> Result<Expr, ExprError> {
        let mut out = d(fs, s)?;
        let base = crate::symexpr::JetVar::new(crate::symexpr::Dep::Phi, {
            let mut idx = [0u8; 3];
            idx[s.index()] = 1;
            idx
        })?;
        for (k, c) in Coord::ALL.iter().enumerate() {
            let jet = Expr::atom(Atom::Jet(base.bump_coord(*c)?));
            out = out - jet * d(&v.xi[k], s)?;
        }
        Ok(out)
    };
    let x = first(Coord::X)?;
    let y = first(Coord::Y)?;
    let t = first(Coord::T)?;
    let xx = second(Coord::X, &x)?;
    let yy = second(Coord::Y, &y)?;
    Ok(Prolongation { x, y, t, xx, yy })
}

/// Pr⁽²⁾V(Δ) reduced on solutions, with γ and τ expanded.
pub fn invariance_residual(v: &VectorField) -> Result<Expr, ExprError> {
    let dl = delta();
    let p = prolong2(v)?;
    let pd = |a: Atom| differentiate(&dl, &a);
    let jet = |i: [u8; 3]| Atom::jet(crate::symexpr::Dep::Phi, i);
    let mut r = Expr::sum([
        &v.xi[0] * &pd(Atom::Var(Coord::X)),
        &v.xi[1] * &pd(Atom::Var(Coord::Y)),
        &v.xi[2] * &pd(Atom::Var(Coord::T)),
        &v.xi[3] * &pd(Atom::phi()),
        &p.x * &pd(jet([1, 0, 0])),
        &p.y * &pd(jet([0, 1, 0])),
        &p.t * &pd(jet([0, 0, 1])),
        &p.xx * &pd(jet([2, 0, 0])),
        &p.yy * &pd(jet([0, 2, 0])),
    ]);
    r = expand_defined(&r);
    on_shell(&r)
}

/// Concrete rational coefficients, if every entry is a constant.
pub fn rational_coords(alpha: &[Expr; 5]) -> Option<[Rational; 5]> {
    let v: Vec<Rational> = alpha.iter().map(|a| a.as_constant()).collect::<Option<_>>()?;
    v.try_into().ok()
}

/// α₁X₁ + … + α₅X₅.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub alpha: [Expr; 5],
}

impl AlgebraElement {
    pub fn new(alpha: [Expr; 5]) -> Self {
        AlgebraElement { alpha }
    }

    pub fn zero() -> Self {
        AlgebraElement { alpha: Default::default() }
    }

    pub fn basis(i: usize) -> Self {
        let mut a = Self::zero();
        a.alpha[i - 1] = Expr::one();
        a
    }

    pub fn from_ints(v: [i64; 5]) -> Self {
        AlgebraElement { alpha: v.map(Expr::int) }
    }

    pub fn from_rationals(v: &[Rational; 5]) -> Self {
        AlgebraElement { alpha: v.clone().map(Expr::constant) }
    }

    /// α₁..α₅ as parameters `alpha1`..`alpha5`.
    pub fn symbolic() -> Self {
        AlgebraElement { alpha: [1, 2, 3, 4, 5].map(|i| Expr::param(&format!("alpha{i}"))) }
    }

    pub fn plus(&self, o: &AlgebraElement) -> Self {
        let mut alpha = self.alpha.clone();
        for (a, b) in alpha.iter_mut().zip(&o.alpha) {
            *a = &*a + b;
        }
        AlgebraElement { alpha }
    }

    pub fn scale(&self, k: &Expr) -> Self {
        AlgebraElement { alpha: self.alpha.clone().map(|a| k * &a) }
    }

    pub fn rationals(&self) -> Option<[Rational; 5]> {
        rational_coords(&self.alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(Expr::is_zero)
    }

    pub fn to_field(&self) -> VectorField {
        let gens = standard_generators();
        let mut v = VectorField::zero();
        for (a, g) in self.alpha.iter().zip(&gens) {
            v = v.plus(&g.scale(a));
        }
        v
    }
}

impl std::fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, a) in self.alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.as_constant().is_some_and(|c| c == Rational::from_integer(1.into())) {
                write!(f, "X{}", i + 1)?;
            } else if a.len() == 1 {
                write!(f, "{a}*X{}", i + 1)?;
            } else {
                write!(f, "({a})*X{}", i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
