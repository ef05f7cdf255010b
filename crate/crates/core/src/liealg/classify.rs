use num_traits::{One, Signed, Zero};

use super::adjoint::{adjoint_transform_matrix, apply_row, killing_form};
use super::tables::{entry, InvariantRow};
use super::{AlgebraElement, LieError};
use crate::symexpr::{substitute, Atom, Expr, Rational, GAMMA};

/// Values of the invariant functions K, M, N, P, Q, R, S, T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// Killing form K(A, A), polynomial in γ.
    pub k: Expr,
    pub m: Rational,
    pub n: Rational,
    pub p: i8,
    pub q: i8,
    pub r: i8,
    pub s: i8,
    pub t: i8,
}

fn sgn(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn invariant_values(a: &AlgebraElement) -> Result<Invariants, LieError> {
    let [a1, a2, a3, a4, a5] = a.rationals().ok_or(LieError::Symbolic)?;
    let z = |x: &Rational| x.is_zero();
    Ok(Invariants {
        k: killing_form(a, a),
        m: a1.clone(),
        n: a3.clone(),
        p: i8::from(!(z(&a1) && z(&a2) && z(&a3))),
        q: i8::from(!(z(&a1) && z(&a3) && z(&a4) && z(&a5))),
        r: if z(&a1) && z(&a3) && z(&a5) { sgn(&a4) } else { 0 },
        s: if z(&a1) { sgn(&a2) } else { 0 },
        t: if z(&a1) && z(&a4) && z(&a3) { sgn(&a5) } else { 0 },
    })
}

/// Result of reducing an element to its optimal-system representative.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub case: u8,
    pub representative: AlgebraElement,
    /// ε₁..ε₅ fed to 𝒜; ε₁ may be a logarithm in case 2.
    pub eps: [Expr; 5],
    /// Overall factor applied to A before the adjoint transformation.
    pub scale: Rational,
    pub gamma: Rational,
}

impl Classification {
    /// Replays (scale·α)·𝒜(ε) with γ fixed and compares with the representative.
    pub fn replay(&self, a: &AlgebraElement) -> [Expr; 5] {
        let m = adjoint_transform_matrix(&self.eps);
        let g = Expr::constant(self.gamma.clone());
        let m = m.map(|row| row.map(|e| substitute(&e, &Atom::param(GAMMA), &g)));
        let scaled = a.scale(&Expr::constant(self.scale.clone()));
        apply_row(&scaled.alpha, &m)
    }

    pub fn verify(&self, a: &AlgebraElement) -> bool {
        self.replay(a) == self.representative.alpha
    }

    /// Whether the representative has the shape listed for its case.
    pub fn is_listed(&self) -> bool {
        let Some(r) = self.representative.rationals() else { return false };
        let one = Rational::one();
        let z = |i: usize| r[i].is_zero();
        match self.case {
            1 => r[0] == one && z(1) && !z(2) && z(3) && z(4),
            2 => z(0) && (z(1) || r[1].abs() == one) && r[2] == one && z(3) && z(4),
            3 => r[0] == one && z(1) && z(2) && z(3) && z(4),
            4 => z(0) && z(2) && !(z(1) && z(3) && z(4)),
            _ => false,
        }
    }
}

pub fn gamma_of(theta: &Rational) -> Result<Rational, LieError> {
    if !(theta.is_positive() && theta < &Rational::one()) {
        return Err(LieError::Theta(theta.to_string()));
    }
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let g = (theta - &two) / (&two * (theta - &one));
    assert!(!g.is_zero(), "gamma vanishes only at theta = 2");
    Ok(g)
}

/// Reduces A to one of X₁+kX₃, μX₂+X₃, X₁, a₂X₂+a₄X₄+a₅X₅.
pub fn classify(a: &AlgebraElement, theta: &Rational) -> Result<Classification, LieError> {
    let alpha = a.rationals().ok_or(LieError::Symbolic)?;
    if alpha.iter().all(Zero::is_zero) {
        return Err(LieError::ZeroElement);
    }
    let g = gamma_of(theta)?;
    let zero = Rational::zero;
    let c = |x: &Rational| Expr::constant(x.clone());
    let (case, scale) = match (alpha[0].is_zero(), alpha[2].is_zero()) {
        (false, false) => (1, alpha[0].recip()),
        (true, false) => (2, alpha[2].recip()),
        (false, true) => (3, alpha[0].recip()),
        (true, true) => (4, Rational::one()),
    };
    let s: Vec<Rational> = alpha.iter().map(|x| x * &scale).collect();
    let mut eps: [Expr; 5] = Default::default();
    let mut rep = [zero(), zero(), zero(), zero(), zero()];
    match case {
        1 => {
            let k = s[2].clone();
            let den = &k * &k + &g * &g;
            eps[1] = c(&s[1]);
            eps[3] = c(&((&g * &s[3] - &k * &s[4]) / &den));
            eps[4] = c(&((&g * &s[4] + &k * &s[3]) / &den));
            rep[0] = Rational::one();
            rep[2] = k;
        }
        2 => {
            eps[3] = c(&-s[4].clone());
            eps[4] = c(&s[3]);
            let b2 = s[1].clone();
            if !b2.is_zero() {
                // e^{ε₁}·b₂ = ±1
                eps[0] = Expr::constant(b2.abs().recip()).ln();
            }
            rep[1] = Rational::from_integer(sgn(&b2).into());
            rep[2] = Rational::one();
        }
        3 => {
            eps[1] = c(&s[1]);
            eps[3] = c(&(&s[3] / &g));
            eps[4] = c(&(&s[4] / &g));
            rep[0] = Rational::one();
        }
        _ => rep = alpha.clone(),
    }
    Ok(Classification { case, representative: AlgebraElement::from_rationals(&rep), eps, scale, gamma: g })
}

/// Evaluates one row of the invariant table with its symbolic coefficients
/// set to `vals` and compares every column with the computed invariants.
/// Returns the names of the mismatching columns.
pub fn invariant_row_mismatches(row: &InvariantRow, vals: &[(&str, Rational)]) -> Result<Vec<&'static str>, LieError> {
    let value = |name: &str| vals.iter().find(|(n, _)| *n == name).map(|(_, v)| v.clone());
    let mut coords = Vec::with_capacity(5);
    for e in row.element {
        let r = match value(e) {
            Some(v) => v,
            None => entry(e).as_constant().ok_or(LieError::Symbolic)?,
        };
        coords.push(r);
    }
    let coords: [Rational; 5] = coords.try_into().expect("five coordinates");
    let got = invariant_values(&AlgebraElement::from_rationals(&coords))?;
    // R, S, T entries name a coefficient whose sign is meant
    let signed = |s: &str| -> Option<i8> {
        match value(s) {
            Some(v) => Some(sgn(&v)),
            None => entry(s).as_int().map(|n| n as i8),
        }
    };
    let rational = |s: &str| entry(s).as_constant();
    let mut bad = Vec::new();
    if !(got.k.clone() - entry(row.k)).is_zero() {
        bad.push("K");
    }
    if rational(row.m) != Some(got.m) {
        bad.push("M");
    }
    if rational(row.n) != Some(got.n) {
        bad.push("N");
    }
    for (name, cell, v) in [("P", row.p, got.p), ("Q", row.q, got.q), ("R", row.r, got.r), ("S", row.s, got.s), ("T", row.t, got.t)] {
        if signed(cell) != Some(v) {
            bad.push(name);
        }
    }
    Ok(bad)
}
