//! Transcriptions of the printed tables, kept verbatim as expression text.
//! Basis elements appear as the symbols `X1`..`X5`.

use crate::symexpr::{parse, Atom, Expr};

/// Commutation table: entry (i, j) is [X_i, X_j].
pub const COMMUTATION: [[&str; 5]; 5] = [
    ["0", "-X2", "0", "-gamma*X4", "-gamma*X5"],
    ["X2", "0", "0", "0", "0"],
    ["0", "0", "0", "X5", "-X4"],
    ["gamma*X4", "0", "-X5", "0", "0"],
    ["gamma*X5", "0", "X4", "0", "0"],
];

/// Adjoint representation table: entry (i, j) is Ad(exp(εX_i))X_j.
pub const ADJOINT: [[&str; 5]; 5] = [
    ["X1", "exp(eps)*X2", "X3", "exp(gamma*eps)*X4", "exp(gamma*eps)*X5"],
    ["X1 - eps*X2", "X2", "X3", "X4", "X5"],
    ["X1", "X2", "X3", "X4*cos(eps) - X5*sin(eps)", "X4*sin(eps) + X5*cos(eps)"],
    ["X1 - gamma*eps*X4", "X2", "X3 + eps*X5", "X4", "X5"],
    ["X1 - gamma*eps*X5", "X2", "X3 - eps*X4", "X4", "X5"],
];

/// Coefficients of Ad(exp(εX_i))X for X = Σ αⱼXⱼ.
pub const INVARIANT_CONSTRUCTION: [[&str; 5]; 5] = [
    ["alpha1", "exp(eps)*alpha2", "alpha3", "exp(gamma*eps)*alpha4", "exp(gamma*eps)*alpha5"],
    ["alpha1", "alpha2 - eps*alpha1", "alpha3", "alpha4", "alpha5"],
    ["alpha1", "alpha2", "alpha3", "alpha4*cos(eps) + alpha5*sin(eps)", "alpha5*cos(eps) - alpha4*sin(eps)"],
    ["alpha1", "alpha2", "alpha3", "alpha4 - gamma*eps*alpha1", "alpha5 + eps*alpha3"],
    ["alpha1", "alpha2", "alpha3", "alpha4 - eps*alpha3", "alpha5 - gamma*eps*alpha1"],
];

/// The displayed matrix of the adjoint endomorphism in the Killing-form proof.
pub const AD_MATRIX: [[&str; 5]; 5] = [
    ["0", "0", "0", "0", "0"],
    ["-alpha2", "alpha1", "0", "0", "0"],
    ["0", "0", "0", "0", "0"],
    ["-gamma*alpha4", "0", "-alpha5", "gamma*alpha1", "alpha3"],
    ["-gamma*alpha5", "0", "alpha4", "-alpha3", "gamma*alpha1"],
];

pub const KILLING_FORM: &str = "(2*gamma^2 + 1)*alpha1^2 - 2*alpha3^2";

/// One row of the invariant-value table. Entries `a2`, `a4`, `a5` in the
/// R, S, T columns stand for the signs of those coefficients.
#[derive(Clone, Copy, Debug)]
pub struct InvariantRow {
    pub label: &'static str,
    pub element: [&'static str; 5],
    /// Coefficients that the row requires to be nonzero.
    pub nonzero: &'static [&'static str],
    pub k: &'static str,
    pub m: &'static str,
    pub n: &'static str,
    pub p: &'static str,
    pub q: &'static str,
    pub r: &'static str,
    pub s: &'static str,
    pub t: &'static str,
}

const fn row(
    label: &'static str,
    element: [&'static str; 5],
    nonzero: &'static [&'static str],
    cols: [&'static str; 8],
) -> InvariantRow {
    let [k, m, n, p, q, r, s, t] = cols;
    InvariantRow { label, element, nonzero, k, m, n, p, q, r, s, t }
}

pub const INVARIANT_VALUES: [InvariantRow; 12] = [
    row("X1 + X3", ["1", "0", "1", "0", "0"], &[], ["2*gamma^2 - 1", "1", "1", "1", "1", "0", "0", "0"]),
    row("X1 - X3", ["1", "0", "-1", "0", "0"], &[], ["2*gamma^2 - 1", "1", "-1", "1", "1", "0", "0", "0"]),
    row("X2 + X3", ["0", "1", "1", "0", "0"], &[], ["-2", "0", "1", "1", "1", "0", "1", "0"]),
    row("X3", ["0", "0", "1", "0", "0"], &[], ["-2", "0", "1", "1", "1", "0", "0", "0"]),
    row("-X2 + X3", ["0", "-1", "1", "0", "0"], &[], ["-2", "0", "1", "1", "1", "0", "-1", "0"]),
    row("X1", ["1", "0", "0", "0", "0"], &[], ["2*gamma^2 + 1", "1", "0", "1", "1", "0", "0", "0"]),
    row("a4*X4 + a5*X5", ["0", "0", "0", "a4", "a5"], &["a4", "a5"], ["0", "0", "0", "0", "1", "0", "0", "0"]),
    row("a2*X2 + a5*X5", ["0", "a2", "0", "0", "a5"], &["a2", "a5"], ["0", "0", "0", "1", "1", "0", "a2", "a5"]),
    row("a2*X2 + a4*X4", ["0", "a2", "0", "a4", "0"], &["a2", "a4"], ["0", "0", "0", "1", "1", "a4", "a2", "0"]),
    row("a5*X5", ["0", "0", "0", "0", "a5"], &["a5"], ["0", "0", "0", "0", "1", "0", "0", "a5"]),
    row("a2*X2", ["0", "a2", "0", "0", "0"], &["a2"], ["0", "0", "0", "1", "0", "0", "a2", "0"]),
    row("a4*X4", ["0", "0", "0", "a4", "0"], &["a4"], ["0", "0", "0", "0", "1", "a4", "0", "0"]),
];

/// Parses an entry and reads off its coefficients on `X1`..`X5`.
pub fn basis_coefficients(entry: &str) -> [Expr; 5] {
    let e = parse(entry).expect("table entries are well formed");
    [1, 2, 3, 4, 5].map(|k| e.coefficient(&Atom::param(&format!("X{k}")), 1))
}

pub fn entry(text: &str) -> Expr {
    parse(text).expect("table entries are well formed")
}
