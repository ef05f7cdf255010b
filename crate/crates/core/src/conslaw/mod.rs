//! Adjoint equation, nonlinear self-adjointness, conserved vectors from the
//! formal Lagrangian, and the potential systems built on them.

use std::fmt;

use crate::liealg::VectorField;
use crate::model::{delta, on_shell};
use crate::symexpr::{
    differentiate, is_zero, parse, substitute_many, total_derivative, Atom, Constraints, Coord, Dep, Expr, ExprError,
    JetVar, ZeroVerdict,
};

fn lit(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

/// A multiplier Ψ(x, y, t, φ) for the formal Lagrangian ΨΔ.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    pub psi: Expr,
}

impl Multiplier {
    pub fn new(psi: Expr) -> Self {
        Multiplier { psi }
    }

    /// Ψ = (c₁y + c₂)x + c₃y + c₄.
    pub fn printed_family() -> Self {
        Multiplier::new(lit("(c1*y + c2)*x + c3*y + c4"))
    }

    /// Ψ as an opaque function with its own jets `psi`, `psi_x`, ….
    pub fn opaque() -> Self {
        Multiplier::new(Expr::jet(Dep::Psi, [0, 0, 0]))
    }

    /// Self-adjointness requires a nonzero substitution.
    pub fn is_admissible(&self) -> bool {
        !self.psi.is_zero()
    }
}

pub fn formal_lagrangian(psi: &Multiplier) -> Expr {
    psi.psi.clone() * delta()
}

fn total(e: &Expr, idx: [u8; 3]) -> Result<Expr, ExprError> {
    let mut out = e.clone();
    for (slot, c) in Coord::ALL.iter().enumerate() {
        for _ in 0..idx[slot] {
            out = total_derivative(&out, *c)?;
        }
    }
    Ok(out)
}

/// δL/δφ = Σ_α (−D)^α ∂L/∂φ_α over the φ-jets of L.
pub fn euler_lagrange(l: &Expr) -> Result<Expr, ExprError> {
    let mut jets: Vec<JetVar> = l.jets().into_iter().filter(|j| j.dep == Dep::Phi).collect();
    jets.sort();
    jets.dedup();
    let mut parts = Vec::new();
    for j in jets {
        if j.order() > 2 {
            return Err(ExprError::JetOrder(j.order()));
        }
        let partial = differentiate(l, &Atom::Jet(j));
        let term = total(&partial, j.idx)?;
        parts.push(if j.order() % 2 == 1 { -term } else { term });
    }
    Ok(Expr::sum(parts))
}

/// The adjoint expression hθφ^(θ−1)Ψ − 2φΨ_xx − 2φΨ_yy − Ψ_t as printed.
pub fn printed_adjoint() -> Expr {
    lit("h*theta*phi^(theta - 1)*psi - 2*phi*psi_xx - 2*phi*psi_yy - psi_t")
}

/// Replaces Ψ and its jets by `psi` and its total derivatives.
pub fn specialize(e: &Expr, psi: &Multiplier) -> Result<Expr, ExprError> {
    let mut pairs = Vec::new();
    for j in e.jets() {
        if j.dep == Dep::Psi {
            pairs.push((Atom::Jet(j), total(&psi.psi, j.idx)?));
        }
    }
    Ok(substitute_many(e, &pairs))
}

/// S|_(Ψ=ψ) − δ₁Δ with δ₁ = −∂ψ/∂φ.
pub fn self_adjointness_residual(psi: &Multiplier) -> Result<Expr, ExprError> {
    let s = euler_lagrange(&formal_lagrangian(&Multiplier::opaque()))?;
    let s = specialize(&s, psi)?;
    let delta1 = -differentiate(&psi.psi, &Atom::phi());
    Ok(s - delta1 * delta())
}

/// (η^x, η^y, η^t).
#[derive(Clone, Debug, PartialEq)]
pub struct ConservedVector {
    pub eta: [Expr; 3],
    pub source: String,
}

impl ConservedVector {
    pub fn x(&self) -> &Expr {
        &self.eta[0]
    }
    pub fn y(&self) -> &Expr {
        &self.eta[1]
    }
    pub fn t(&self) -> &Expr {
        &self.eta[2]
    }
}

impl fmt::Display for ConservedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.source)?;
        for (name, e) in ["eta_x", "eta_y", "eta_t"].iter().zip(&self.eta) {
            writeln!(f, "  {name} = {e}")?;
        }
        Ok(())
    }
}

/// The conserved vector of `v` built from the formal Lagrangian ΨΔ.
pub fn conserved_vector(v: &VectorField, psi: &Multiplier) -> Result<ConservedVector, ExprError> {
    let l = formal_lagrangian(psi);
    let jet = |i| Atom::Jet(JetVar::new(Dep::Phi, i).expect("order 2"));
    let [x1, x2, x3, x4] = &v.xi;
    let omega = x4.clone() - x1.clone() * Expr::phi_d(1, 0, 0) - x2.clone() * Expr::phi_d(0, 1, 0)
        - x3.clone() * Expr::phi_d(0, 0, 1);
    let spatial = |xi: &Expr, first: [u8; 3], second: [u8; 3], c: Coord| -> Result<Expr, ExprError> {
        let l2 = differentiate(&l, &jet(second));
        Ok(xi.clone() * l.clone() + omega.clone() * differentiate(&l, &jet(first))
            - omega.clone() * total_derivative(&l2, c)?
            + l2 * total_derivative(&omega, c)?)
    };
    let ex = spatial(x1, [1, 0, 0], [2, 0, 0], Coord::X)?;
    let ey = spatial(x2, [0, 1, 0], [0, 2, 0], Coord::Y)?;
    let et = x3.clone() * l.clone() + omega * differentiate(&l, &jet([0, 0, 1]));
    Ok(ConservedVector { eta: [ex, ey, et], source: "constructed".into() })
}

/// D_xη^x + D_yη^y + D_tη^t with every t-derivative of φ eliminated.
pub fn onshell_divergence(cv: &ConservedVector) -> Result<Expr, ExprError> {
    let div = total_derivative(cv.x(), Coord::X)? + total_derivative(cv.y(), Coord::Y)? + total_derivative(cv.t(), Coord::T)?;
    on_shell(&div)
}

const PSI: &str = "(c1*x*y + c2*x + c3*y + c4)";

/// The printed conserved vectors for X₁..X₅ (γ, τ as parameters).
pub fn printed_eta(i: usize) -> ConservedVector {
    let [ex, ey, et] = match i {
        1 => [
            "2*gamma*x*P*(phi*phi_xx + phi_x^2) + 2*P*(t*phi*phi_xt + gamma*y*phi*phi_xy + t*phi_t*phi_x \
             + gamma*y*phi_y*phi_x + 2*tau*phi*phi_x) + 2*gamma*(c3*y + c4)*phi*phi_x \
             - 2*(c1*y + c2)*(2*t*phi*phi_t + gamma*y*phi*phi_y + 2*phi^2)",
            "2*P*(gamma*(x*phi*phi_xx + y*phi_y^2 + x*phi_y*phi_x + y*phi*phi_xy + phi*phi_x) + t*phi_t*phi_y \
             + tau*phi*phi_y + t*phi*phi_tx + tau*phi*phi_x) - 2*phi*(c1*x + c3)*(gamma*y*phi_y + t*phi_t \
             + gamma*x*phi_x + tau*phi)",
            "-P*(tau*phi + gamma*x*phi_x + gamma*y*phi_y + t*phi_t)",
        ],
        2 => [
            "P*(2*phi_x*phi_t + 2*phi*phi_tx) - 2*(c1*y + c2)*phi",
            "P*(2*phi_y*phi_t + 2*phi*phi_ty) - 2*(c1*x + c3)*phi",
            "-P*phi_t",
        ],
        3 => [
            "P*(-2*x*phi*phi_xy + 2*y*phi*phi_xx + 2*y*phi_x^2 - 2*x*phi_x*phi_y) - 2*phi*(c3*y + c4)*phi_y \
             - 2*y*phi*(c1*y + c2)*phi_x",
            "P*(-2*x*phi*phi_yy + 2*y*phi*phi_xy - 2*x*phi_y^2 + 2*y*phi_y*phi_x) + 2*phi*(c2*x + c4)*phi_x \
             + 2*x*phi*(c1*x + c3)*phi_y",
            "P*(-y*phi_x + x*phi_y)",
        ],
        4 => [
            "P*(2*phi_x^2 + 2*phi*phi_xx) - 2*phi*phi_x*(c1*y + c2)",
            "2*P*(phi_x*phi_y + phi*phi_xy) - 2*phi*phi_x*(c1*x + c3)",
            "-P*phi_x",
        ],
        5 => [
            "2*P*(phi_x*phi_y + phi*phi_xy) - 2*phi*phi_y*(c1*y + c3)",
            "P*(2*phi_y^2 + 2*phi*phi_yy) - 2*phi*phi_y*(c1*x + c3)",
            "-P*phi_y",
        ],
        _ => panic!("generator index {i} outside 1..=5"),
    };
    let build = |s: &str| lit(&s.replace('P', PSI));
    ConservedVector { eta: [build(ex), build(ey), build(et)], source: format!("printed X{i}") }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentVerdict {
    Equal,
    /// The difference vanishes on solutions (a multiple of Δ and its consequences).
    TriviallyEquivalent,
    /// Transcription mismatch; the exact difference is reported.
    Mismatch,
    Unknown,
}

impl fmt::Display for ComponentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentVerdict::Equal => "equal",
            ComponentVerdict::TriviallyEquivalent => "trivially equivalent",
            ComponentVerdict::Mismatch => "transcription mismatch",
            ComponentVerdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ComponentDiff {
    pub raw: Expr,
    pub onshell: Expr,
    pub verdict: ComponentVerdict,
}

/// Componentwise a − b, raw and on-shell, under `c`.
pub fn compare_vectors(a: &ConservedVector, b: &ConservedVector, c: &Constraints) -> Result<[ComponentDiff; 3], ExprError> {
    let one = |k: usize| -> Result<ComponentDiff, ExprError> {
        let raw = c.apply(&(a.eta[k].clone() - b.eta[k].clone()));
        let onshell = c.apply(&on_shell(&raw)?);
        let verdict = match is_zero(&raw, c)? {
            ZeroVerdict::Zero => ComponentVerdict::Equal,
            _ => match is_zero(&onshell, c)? {
                ZeroVerdict::Zero => ComponentVerdict::TriviallyEquivalent,
                ZeroVerdict::NonZero => ComponentVerdict::Mismatch,
                ZeroVerdict::Unknown => ComponentVerdict::Unknown,
            },
        };
        Ok(ComponentDiff { raw, onshell, verdict })
    };
    Ok([one(0)?, one(1)?, one(2)?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gauge {
    pub name: &'static str,
    pub constraint: &'static str,
}

pub const GAUGES: [Gauge; 5] = [
    Gauge { name: "Divergence (Coulomb)", constraint: "J1_x + J2_y + J3_z = 0" },
    Gauge { name: "Spatial", constraint: "J^i = 0, i = 1, 2, 3" },
    Gauge { name: "Poincare", constraint: "x*J1 + y*J2 + z*J3 = 0" },
    Gauge { name: "Lorentz", constraint: "J1_t - J2_x - J3_y = 0" },
    Gauge { name: "Cronstrom", constraint: "t*J1 - x*J2 - y*J3 = 0" },
];

/// Curl-form potential system with right-hand sides taken from a conserved
/// vector: J³_x − J²_y = η^t, J¹_y − J³_t = η^x, J²_t − J¹_x = η^y.
#[derive(Clone, Debug)]
pub struct PotentialSystem {
    pub generator: usize,
    pub equations: [(&'static str, Expr); 3],
    pub gauges: &'static [Gauge],
}

pub fn potential_system(i: usize) -> PotentialSystem {
    let [ex, ey, et] = printed_eta(i).eta;
    PotentialSystem {
        generator: i,
        equations: [("J3_x - J2_y", et), ("J1_y - J3_t", ex), ("J2_t - J1_x", ey)],
        gauges: &GAUGES,
    }
}

impl fmt::Display for PotentialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Y{}:", self.generator)?;
        for (lhs, rhs) in &self.equations {
            writeln!(f, "  {lhs} = {rhs}")?;
        }
        write!(f, "  gauges: ")?;
        let names: Vec<&str> = self.gauges.iter().map(|g| g.name).collect();
        writeln!(f, "{}", names.join(", "))
    }
}
