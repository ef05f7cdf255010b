use std::fmt;
use std::sync::Arc;

use super::expr::Expr;
use super::ExprError;

/// Maximum total order of a jet variable.
pub const MAX_JET_ORDER: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X,
    Y,
    T,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::X, Coord::Y, Coord::T];

    pub fn index(self) -> usize {
        match self {
            Coord::X => 0,
            Coord::Y => 1,
            Coord::T => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
            Coord::T => "t",
        }
    }
}

/// Dependent variables that carry jet coordinates.
///
/// `Phi` and `Psi` are functions of (x, y, t); the multi-index counts
/// derivatives in x, y, t. `F` is the reduced dependent variable of a
/// similarity map, a function of the parameters `X`, `Y` (index slots 0, 1).
/// `G` is the ODE unknown in the similarity variable `lambda` (slot 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dep {
    Phi,
    Psi,
    F,
    G,
}

impl Dep {
    pub fn name(self) -> &'static str {
        match self {
            Dep::Phi => "phi",
            Dep::Psi => "psi",
            Dep::F => "F",
            Dep::G => "G",
        }
    }

    fn slot_letters(self) -> [char; 3] {
        match self {
            Dep::Phi | Dep::Psi => ['x', 'y', 't'],
            Dep::F => ['X', 'Y', '?'],
            Dep::G => ['l', '?', '?'],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVar {
    pub dep: Dep,
    pub idx: [u8; 3],
}

impl JetVar {
    pub fn new(dep: Dep, idx: [u8; 3]) -> Result<Self, ExprError> {
        let j = JetVar { dep, idx };
        if j.order() > MAX_JET_ORDER {
            return Err(ExprError::JetOrder(j.order()));
        }
        let letters = dep.slot_letters();
        for (slot, &n) in idx.iter().enumerate() {
            if n > 0 && letters[slot] == '?' {
                return Err(ExprError::Invalid(format!("{} has no derivative slot {}", dep.name(), slot)));
            }
        }
        Ok(j)
    }

    pub fn base(dep: Dep) -> Self {
        JetVar { dep, idx: [0, 0, 0] }
    }

    pub fn order(&self) -> u8 {
        self.idx.iter().sum()
    }

    /// Index incremented in one slot.
    pub fn bump(&self, slot: usize) -> Result<Self, ExprError> {
        let mut idx = self.idx;
        idx[slot] += 1;
        JetVar::new(self.dep, idx)
    }

    pub fn bump_coord(&self, c: Coord) -> Result<Self, ExprError> {
        self.bump(c.index())
    }

    pub fn name(&self) -> String {
        let mut s = self.dep.name().to_string();
        if self.order() > 0 {
            s.push('_');
            let letters = self.dep.slot_letters();
            for (slot, &n) in self.idx.iter().enumerate() {
                for _ in 0..n {
                    s.push(letters[slot]);
                }
            }
        }
        s
    }

    /// Parses `phi`, `phi_xxt`, `psi_y`, `F_XY`, `G_ll` (also `G'`, `G''`).
    pub fn parse(name: &str) -> Option<Result<Self, ExprError>> {
        let (head, tail) = match name.find(['_', '\'']) {
            Some(i) => (&name[..i], &name[i..]),
            None => (name, ""),
        };
        let dep = match head {
            "phi" => Dep::Phi,
            "psi" => Dep::Psi,
            "F" => Dep::F,
            "G" => Dep::G,
            _ => return None,
        };
        let mut idx = [0u8; 3];
        if let Some(primes) = tail.strip_prefix('\'') {
            if dep != Dep::G || !primes.chars().all(|c| c == '\'') {
                return Some(Err(ExprError::UnknownIdentifier(name.to_string())));
            }
            idx[0] = 1 + primes.len() as u8;
        } else if let Some(letters) = tail.strip_prefix('_') {
            if letters.is_empty() {
                return Some(Err(ExprError::UnknownIdentifier(name.to_string())));
            }
            let slots = dep.slot_letters();
            for ch in letters.chars() {
                match slots.iter().position(|&s| s == ch && s != '?') {
                    Some(p) => idx[p] = idx[p].saturating_add(1),
                    None => return Some(Err(ExprError::UnknownIdentifier(name.to_string()))),
                }
            }
        }
        Some(JetVar::new(dep, idx))
    }
}

/// Factors of a monomial.
///
/// `Base` holds any non-atomic base raised to an exponent: multi-term sums
/// (kept primitive and sign-normalized when the exponent is an integer) and
/// arbitrary expressions under non-integer exponents (the `Pow` kernel).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(Coord),
    Param(Arc<str>),
    Jet(JetVar),
    Base(Arc<Expr>),
    Exp(Arc<Expr>),
    Ln(Arc<Expr>),
    Sin(Arc<Expr>),
    Cos(Arc<Expr>),
}

impl Atom {
    pub fn param(name: &str) -> Atom {
        Atom::Param(Arc::from(name))
    }

    pub fn phi() -> Atom {
        Atom::Jet(JetVar::base(Dep::Phi))
    }

    pub fn jet(dep: Dep, idx: [u8; 3]) -> Atom {
        Atom::Jet(JetVar::new(dep, idx).expect("jet index within order cap"))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Atom::Var(_) | Atom::Param(_) | Atom::Jet(_))
    }

    pub fn inner(&self) -> Option<&Expr> {
        match self {
            Atom::Base(e) | Atom::Exp(e) | Atom::Ln(e) | Atom::Sin(e) | Atom::Cos(e) => Some(e),
            _ => None,
        }
    }

    pub fn param_name(&self) -> Option<&str> {
        match self {
            Atom::Param(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(c) => write!(f, "{}", c.name()),
            Atom::Param(n) => write!(f, "{n}"),
            Atom::Jet(j) => write!(f, "{}", j.name()),
            Atom::Base(e) => write!(f, "({e})"),
            Atom::Exp(e) => write!(f, "exp({e})"),
            Atom::Ln(e) => write!(f, "ln({e})"),
            Atom::Sin(e) => write!(f, "sin({e})"),
            Atom::Cos(e) => write!(f, "cos({e})"),
        }
    }
}

/// Exponent of a factor: the lattice `m + n·θ`, or a general canonical expression.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Lat(i64, i64),
    Sym(Arc<Expr>),
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Lat(1, 0);

    pub fn int(n: i64) -> Exponent {
        Exponent::Lat(n, 0)
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Exponent::Lat(m, 0) => Some(*m),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Lat(0, 0))
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            Exponent::Lat(m, n) => {
                Expr::int(*m) + Expr::int(*n) * Expr::param(super::THETA)
            }
            Exponent::Sym(e) => (**e).clone(),
        }
    }

    /// Canonical exponent from an expression: lattice when possible.
    pub fn from_expr(e: &Expr) -> Exponent {
        let e = super::together::canon_exponent(e);
        match e.as_lattice() {
            Some((m, n)) => Exponent::Lat(m, n),
            None => Exponent::Sym(Arc::new(e)),
        }
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Lat(a, b), Exponent::Lat(c, d)) => Exponent::Lat(a + c, b + d),
            _ => Exponent::from_expr(&(self.to_expr() + other.to_expr())),
        }
    }

    pub fn scale_int(&self, k: i64) -> Exponent {
        match self {
            Exponent::Lat(a, b) => Exponent::Lat(a * k, b * k),
            Exponent::Sym(e) => Exponent::from_expr(&(Expr::int(k) * (**e).clone())),
        }
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        match (self.as_int(), other.as_int()) {
            (Some(k), _) => other.scale_int(k),
            (_, Some(k)) => self.scale_int(k),
            _ => Exponent::from_expr(&(self.to_expr() * other.to_expr())),
        }
    }

    /// True when the exponent is not syntactically an integer.
    pub fn is_fractional(&self) -> bool {
        self.as_int().is_none()
    }
}
