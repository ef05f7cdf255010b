//! Closed-form invariant solutions, their residuals, similarity reductions
//! and the one-parameter group actions on solutions.

mod group;
mod reduce;

pub use group::apply_group;
pub use reduce::{
    map_consistency, ode_consistency, ode_residual, reduced_ode, similarity_map, Consistency, OdeCase, ReducedOde,
    Reduction, SimilarityMap,
};

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::symexpr::{
    differentiate, eval_terms, is_zero, parse, substitute_many, Atom, Constraints, Coord, Expr, ExprError,
    ZeroVerdict,
};

pub(crate) fn lit(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5, FamilyId::S6];

    pub fn parse(s: &str) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.to_string().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A closed-form solution φ(x, y, t) together with the parameter
/// restrictions under which it is checked.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub id: FamilyId,
    pub phi: Expr,
    pub constraints: Constraints,
    /// Opaque parameters standing for sub-expressions that have no real value
    /// for admissible θ, with their literal definitions.
    pub opaque: Vec<(&'static str, Expr)>,
    pub provenance: &'static str,
}

impl SolutionFamily {
    /// φ with opaque parameters replaced by their literal definitions.
    pub fn literal_phi(&self) -> Expr {
        let pairs: Vec<(Atom, Expr)> = self.opaque.iter().map(|(n, e)| (Atom::param(n), e.clone())).collect();
        substitute_many(&self.phi, &pairs)
    }

    pub fn requires_h_zero(&self) -> bool {
        self.constraints.fixed().iter().any(|(n, v)| n == "h" && v.is_zero())
    }
}

/// (θ−1)^(θ/(θ−1)): negative base for every admissible θ.
pub const KAPPA: &str = "kappa";

pub fn family(id: FamilyId) -> SolutionFamily {
    let base = Constraints::new();
    let (phi, constraints, opaque, provenance) = match id {
        FamilyId::S1 => (lit("-(x^2 + y^2)/(16*t)"), base.h_zero(), vec![], "reduction by X1 + kX3 with h = 0, G = -lambda/16"),
        FamilyId::S2 => (
            lit("(16/(h*(theta - 2)^2*(x^2 + y^2)))^(1/(theta - 2))"),
            base,
            vec![],
            "reduction by b2X2 + X3, stationary radial profile",
        ),
        FamilyId::S3 => (
            lit("(alpha5*d1 - alpha4*d2)/(2*alpha2*(d1^2 + d2^2))*(d2*x - d2*alpha4*t/alpha2 - d1*y + d1*alpha5*t/alpha2)"),
            base.h_zero().nonzero("alpha2").nonzero("d2"),
            vec![],
            "reduction by alpha2X2 + alpha4X4 + alpha5X5, travelling plane",
        ),
        FamilyId::S4 => (
            lit("exp(ln(16*c3^2/(h*(theta - 2)^2*((c3*x - c5)^2 + (c3*y + c4)^2)))/(theta - 2))"),
            base.nonzero("c3"),
            vec![],
            "parameter analysis c1 = 0",
        ),
        FamilyId::S5 => {
            let phi = lit("-((u*x + 2*v*(theta - 1))^2 + (u*y + 2*w*(theta - 1))^2)/(16*u^2*t)");
            (substitute_many(&phi, &uvw()), base.h_zero().nonzero("c1"), vec![], "parameter analysis c2 = 0, h = 0")
        }
        FamilyId::S6 => (
            lit("((c1*(theta - 2)*x + 2*c4*(theta - 1))^2 + (c1*(theta - 2)*y + 2*c5*(theta - 1))^2)/(16*c1*(c1*t + c2)*(theta - 2)^2)*kappa"),
            base.h_zero().range("c1", 0.5, 3.0).range("c2", 0.5, 3.0),
            vec![(KAPPA, lit("(theta - 1)^(theta/(theta - 1))"))],
            "parameter analysis c3 = 0",
        ),
    };
    SolutionFamily { id, phi, constraints, opaque, provenance }
}

/// u, v, w of the c₂ = 0 reduction in terms of c₁, c₃, c₄, c₅, θ.
pub(crate) fn uvw() -> Vec<(Atom, Expr)> {
    vec![
        (Atom::param("u"), lit("(theta - 2)^2*c1^2 + 4*c3^2*(theta - 1)^2")),
        (Atom::param("v"), lit("c4*(theta - 2)*c1 - 2*c3*c5*(theta - 1)")),
        (Atom::param("w"), lit("c5*(theta - 2)*c1 + 2*c3*c4*(theta - 1)")),
    ]
}

/// The six terms of Δ evaluated on a jet-free φ, in the order
/// φ_t, −2φ_x², −2φφ_xx, −2φ_y², −2φφ_yy, hφ^θ.
pub fn residual_terms(phi: &Expr) -> [Expr; 6] {
    let d = |e: &Expr, c: Coord| differentiate(e, &Atom::Var(c));
    let (px, py, pt) = (d(phi, Coord::X), d(phi, Coord::Y), d(phi, Coord::T));
    let (pxx, pyy) = (d(&px, Coord::X), d(&py, Coord::Y));
    let m2 = Expr::int(-2);
    [
        pt,
        m2.clone() * px.powi(2),
        m2.clone() * phi.clone() * pxx,
        m2.clone() * py.powi(2),
        m2 * phi.clone() * pyy,
        Expr::param("h") * phi.pow(&Expr::theta()),
    ]
}

/// Δ evaluated on a jet-free φ.
pub fn pde_residual(phi: &Expr) -> Expr {
    Expr::sum(residual_terms(phi))
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub id: FamilyId,
    pub verdict: ZeroVerdict,
    pub residual: Expr,
}

/// Residual and zero verdict under the family's own constraints, with
/// optional exact parameter values.
pub fn verify_family(id: FamilyId, params: &[(&str, Expr)]) -> Result<FamilyReport, ExprError> {
    let fam = family(id);
    let mut c = fam.constraints.clone();
    for (name, value) in params {
        if let Some((_, fixed)) = fam.constraints.fixed().iter().find(|(n, _)| n == name) {
            if fixed != value {
                return Err(ExprError::Constraint(format!("{id} requires {name} = {fixed}")));
            }
        }
        if value.is_zero() && fam.constraints.is_nonzero(name) {
            return Err(ExprError::Constraint(format!("{id} requires {name} != 0")));
        }
        c = c.fix(name, value.clone());
    }
    verify_under(&fam, &c)
}

/// Like [`verify_family`] with a caller-chosen constraint set (e.g. h left
/// symbolic for a family registered with h = 0).
pub fn verify_under(fam: &SolutionFamily, c: &Constraints) -> Result<FamilyReport, ExprError> {
    let residual = c.apply(&pde_residual(&fam.phi));
    let verdict = is_zero(&residual, c)?;
    Ok(FamilyReport { id: fam.id, verdict, residual })
}

/// Outcome of pointwise evaluation of the residual at random admissible points.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCheck {
    /// max |Σ terms| / max |term| over the valid points.
    pub max_relative: f64,
    pub valid: usize,
    /// Points rejected by a domain error (complex branch, singular set).
    pub skipped: usize,
}

impl NumericCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.valid > 0 && self.max_relative < tol
    }
}

/// Evaluates the literal family (opaque parameters expanded) at `points`
/// admissible samples; each residual term is evaluated separately.
pub fn numeric_check(fam: &SolutionFamily, points: usize, seed: u64) -> Result<NumericCheck, ExprError> {
    let c = &fam.constraints;
    let terms: Vec<Expr> = residual_terms(&fam.literal_phi()).iter().map(|t| c.apply(t)).collect();
    let mut leaves = std::collections::BTreeSet::new();
    for t in &terms {
        leaves.extend(t.leaves());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = NumericCheck { max_relative: 0.0, valid: 0, skipped: 0 };
    while out.valid + out.skipped < points {
        let at = c.sample_point(&leaves, &mut rng);
        let mut sum = 0.0;
        let mut big: f64 = 0.0;
        let mut failed = false;
        for t in &terms {
            match eval_terms(t, &at) {
                Ok((v, _)) => {
                    sum += v;
                    big = big.max(v.abs());
                }
                Err(ExprError::Domain(_)) => {
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if failed {
            out.skipped += 1;
            continue;
        }
        out.valid += 1;
        if big > 0.0 {
            out.max_relative = out.max_relative.max(sum.abs() / big);
        }
    }
    Ok(out)
}
