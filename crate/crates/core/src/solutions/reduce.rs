//! Similarity maps, reduced PDEs in F(X, Y), and reduced ODEs in G(λ).

use std::fmt;

use super::{lit, uvw};
use crate::symexpr::together::exact_div;
use crate::symexpr::{
    derive, differentiate, is_zero, substitute_many, Atom, Constraints, Coord, Dep, Expr, ExprError, JetVar,
    ZeroVerdict,
};

/// The seven similarity reductions, named by the generating subalgebra or
/// by the vanishing parameter of the general symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reduction {
    /// X₁ + kX₃
    DilationRotation,
    /// b₂X₂ + X₃
    RotationTime,
    /// X₁
    Dilation,
    /// α₂X₂ + α₄X₄ + α₅X₅
    Travelling,
    C1Zero,
    C2Zero,
    C3Zero,
}

impl Reduction {
    pub const ALL: [Reduction; 7] = [
        Reduction::DilationRotation,
        Reduction::RotationTime,
        Reduction::Dilation,
        Reduction::Travelling,
        Reduction::C1Zero,
        Reduction::C2Zero,
        Reduction::C3Zero,
    ];
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reduction::DilationRotation => "X1+kX3",
            Reduction::RotationTime => "b2X2+X3",
            Reduction::Dilation => "X1",
            Reduction::Travelling => "a2X2+a4X4+a5X5",
            Reduction::C1Zero => "c1=0",
            Reduction::C2Zero => "c2=0",
            Reduction::C3Zero => "c3=0",
        };
        f.write_str(s)
    }
}

/// φ = prefactor · F(X, Y) with X, Y in (x, y, t); `reduced` is the printed
/// PDE for F, written with parameters `X`, `Y` and jets `F_X`, `F_XX`, ….
#[derive(Clone, Debug)]
pub struct SimilarityMap {
    pub case: Reduction,
    pub x_expr: Expr,
    pub y_expr: Expr,
    pub prefactor: Expr,
    pub reduced: Expr,
    pub constraints: Constraints,
    /// Opaque parameters and their literal meaning.
    pub opaque: Vec<(&'static str, Expr)>,
}

/// (θ−1)^((2−θ)/(2θ−2)), which appears in the c₃ = 0 map.
pub const OMEGA: &str = "omega";

pub fn similarity_map(case: Reduction) -> SimilarityMap {
    let rot_scale = "t^(-(theta - 2)/(2*(theta - 1)))";
    let (xs, ys, pre, red, constraints, opaque): (String, String, &str, &str, Constraints, Vec<(&'static str, Expr)>) =
        match case {
            Reduction::DilationRotation => (
                format!("{rot_scale}*(x*sin(k*ln(t)) + y*cos(k*ln(t)))"),
                format!("{rot_scale}*(x*cos(k*ln(t)) - y*sin(k*ln(t)))"),
                "t^(-1/(theta - 1))",
                "2*h*(theta - 1)*F^theta - 4*(theta - 1)*(F_X^2 + F_Y^2) + 2*k*(theta - 1)*(Y*F_X - X*F_Y) \
                 - (theta - 2)*(X*F_X + Y*F_Y) - 4*((theta - 1)*(F_XX + F_YY) + 1/2)*F",
                Constraints::new().nonzero("k"),
                vec![],
            ),
            Reduction::RotationTime => (
                "y*cos(t/b2) + x*sin(t/b2)".into(),
                "x*cos(t/b2) - y*sin(t/b2)".into(),
                "1",
                "2*(F_X^2 + F_Y^2) + 2*F*(F_XX + F_YY) - (Y*F_X - X*F_Y)/b2 - h*F^theta",
                Constraints::new().nonzero("b2"),
                vec![],
            ),
            Reduction::Dilation => (
                format!("x*{rot_scale}"),
                format!("y*{rot_scale}"),
                "t^(-1/(theta - 1))",
                "-2*h*(theta - 1)*F^theta + 4*(theta - 1)*(F_XX + F_YY)*F + 2*F + 4*(theta - 1)*(F_X^2 + F_Y^2) \
                 + (theta - 2)*(X*F_X + Y*F_Y)",
                Constraints::new(),
                vec![],
            ),
            Reduction::Travelling => (
                "x - alpha4*t/alpha2".into(),
                "y - alpha5*t/alpha2".into(),
                "1",
                "2*alpha2*F*(F_XX + F_YY) + 2*alpha2*(F_X^2 + F_Y^2 - h*F^theta/2) + alpha4*F_X + alpha5*F_Y",
                Constraints::new().nonzero("alpha2"),
                vec![],
            ),
            Reduction::C1Zero => (
                "((c3*x - c5)*sin(c3*t/c2) + (c3*y + c4)*cos(c3*t/c2))/c3".into(),
                "((c3*x - c5)*cos(c3*t/c2) - (c3*y + c4)*sin(c3*t/c2))/c3".into(),
                "1",
                "h*F^theta - 2*(F_X^2 + F_Y^2) + c3/c2*(Y*F_X - X*F_Y) - 2*(F_XX + F_YY)*F",
                Constraints::new().nonzero("c2").nonzero("c3"),
                vec![],
            ),
            Reduction::C2Zero => (
                "t^((2 - theta)/(2*(theta - 1)))*((u*x + 2*v*(theta - 1))*cos(k*ln(t)) - (u*y + 2*w*(theta - 1))*sin(k*ln(t)))/u"
                    .into(),
                "t^((2 - theta)/(2*(theta - 1)))*((u*y + 2*w*(theta - 1))*cos(k*ln(t)) + (u*x + 2*v*(theta - 1))*sin(k*ln(t)))/u"
                    .into(),
                "t^(-1/(theta - 1))",
                "h*F^theta - 2*(F_X^2 + F_Y^2) + (X*F_X + Y*F_Y)/(2*(theta - 1)) - 2*(F_XX + F_YY - 1/(theta - 1))*F \
                 - (k*Y + X/2)*F_X + (k*X - Y/2)*F_Y",
                Constraints::new().nonzero("c1"),
                vec![],
            ),
            Reduction::C3Zero => (
                "(c1*(theta - 2)*x + 2*c4*(theta - 1))*(c1*t + c2)^((2 - theta)/(2*theta - 2))*omega/(c1*(theta - 2))".into(),
                "(c1*(theta - 2)*y + 2*c5*(theta - 1))*(c1*t + c2)^((2 - theta)/(2*theta - 2))*omega/(c1*(theta - 2))".into(),
                "(theta - 1)*(c1*t + c2)^(-1/(theta - 1))",
                "h*F^theta - 2*(F_X^2 + F_Y^2) - c1*(theta - 2)/2*(X*F_X + Y*F_Y) - 2*(F_XX + F_YY)*F - c1*F",
                // the prefactor carries θ − 1 < 0, so the source term has no real
                // branch; the comparison is made at h = 0
                Constraints::new().h_zero().range("c1", 0.5, 3.0).range("c2", 0.5, 3.0),
                vec![(OMEGA, lit("(theta - 1)^((2 - theta)/(2*theta - 2))"))],
            ),
        };
    let mut defs = uvw();
    if case == Reduction::C2Zero {
        defs.push((Atom::param("k"), lit("c3/c1")));
    }
    let expand = |s: &str| substitute_many(&lit(s), &defs);
    SimilarityMap {
        case,
        x_expr: expand(&xs),
        y_expr: expand(&ys),
        prefactor: expand(pre),
        reduced: expand(red),
        constraints,
        opaque,
    }
}

/// Result of comparing a transformed equation with a printed one up to an
/// overall multiplier.
#[derive(Clone, Debug)]
pub struct Consistency {
    pub verdict: ZeroVerdict,
    /// transformed = multiplier · printed (when the verdict is Zero).
    pub multiplier: Expr,
    pub difference: Expr,
}

fn f_jet(idx: [u8; 3]) -> Result<Expr, ExprError> {
    Ok(Expr::atom(Atom::Jet(JetVar::new(Dep::F, idx)?)))
}

/// D_c of an expression in (x, y, t) and F-jets, with F = F(X, Y).
fn chain(e: &Expr, c: Coord, xd: &Expr, yd: &Expr) -> Result<Expr, ExprError> {
    derive(e, &|a: &Atom| match a {
        Atom::Var(v) if *v == c => Ok(Some(Expr::one())),
        Atom::Jet(j) if j.dep == Dep::F => {
            Ok(Some(Expr::atom(Atom::Jet(j.bump(0)?)) * xd.clone() + Expr::atom(Atom::Jet(j.bump(1)?)) * yd.clone()))
        }
        _ => Ok(None),
    })
}

/// Checks `transformed − m·printed` for the multiplier `m` fixed by the
/// coefficient of `pivot_a · pivot_b`.
fn proportional(
    transformed: &Expr,
    printed: &Expr,
    pivot: (&Atom, &Atom),
    c: &Constraints,
) -> Result<Consistency, ExprError> {
    let coef = |e: &Expr| c.apply(e).coefficient(pivot.0, 1).coefficient(pivot.1, 1);
    let (ct, cp) = (coef(transformed), coef(printed));
    if cp.is_zero() {
        return Err(ExprError::Invalid("printed equation lacks the pivot term".into()));
    }
    let multiplier = exact_div(&ct, &cp).unwrap_or_else(|| ct / cp);
    let difference = c.apply(&(transformed.clone() - multiplier.clone() * printed.clone()));
    let verdict = is_zero(&difference, c)?;
    Ok(Consistency { verdict, multiplier, difference })
}

impl SimilarityMap {
    /// Δ with φ = prefactor·F(X, Y) substituted, in (x, y, t) and F-jets.
    pub fn transformed_pde(&self) -> Result<Expr, ExprError> {
        let d = |e: &Expr, c: Coord| differentiate(e, &Atom::Var(c));
        let partials: Vec<(Expr, Expr)> =
            Coord::ALL.iter().map(|&c| (d(&self.x_expr, c), d(&self.y_expr, c))).collect();
        let phi = self.prefactor.clone() * f_jet([0, 0, 0])?;
        let dc = |e: &Expr, c: Coord| chain(e, c, &partials[c.index()].0, &partials[c.index()].1);
        let (px, py, pt) = (dc(&phi, Coord::X)?, dc(&phi, Coord::Y)?, dc(&phi, Coord::T)?);
        let (pxx, pyy) = (dc(&px, Coord::X)?, dc(&py, Coord::Y)?);
        let two = Expr::int(2);
        let source = Expr::param("h") * self.prefactor.pow(&Expr::theta()) * f_jet([0, 0, 0])?.pow(&Expr::theta());
        Ok(pt - two.clone() * (px.powi(2) + py.powi(2)) - two * phi * (pxx + pyy) + source)
    }

    /// The printed reduced PDE with X, Y replaced by their (x, y, t) forms.
    pub fn reduced_in_xyt(&self) -> Expr {
        substitute_many(&self.reduced, &[(Atom::param("X"), self.x_expr.clone()), (Atom::param("Y"), self.y_expr.clone())])
    }
}

/// Whether substituting the map into the equation reproduces the printed
/// reduced PDE up to a multiplier.
pub fn map_consistency(map: &SimilarityMap) -> Result<Consistency, ExprError> {
    let fxx = Atom::Jet(JetVar::new(Dep::F, [2, 0, 0])?);
    let f = Atom::Jet(JetVar::base(Dep::F));
    proportional(&map.transformed_pde()?, &map.reduced_in_xyt(), (&fxx, &f), &map.constraints)
}

/// The displayed reduced ODEs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OdeCase {
    DilationRotation,
    /// The same reduction with h = 0, as displayed separately.
    DilationRotationSourceFree,
    RotationTime,
    Dilation,
    Travelling,
    C1Zero,
    C2Zero,
    C3Zero,
}

impl OdeCase {
    pub const ALL: [OdeCase; 8] = [
        OdeCase::DilationRotation,
        OdeCase::DilationRotationSourceFree,
        OdeCase::RotationTime,
        OdeCase::Dilation,
        OdeCase::Travelling,
        OdeCase::C1Zero,
        OdeCase::C2Zero,
        OdeCase::C3Zero,
    ];

    pub fn reduction(self) -> Reduction {
        match self {
            OdeCase::DilationRotation | OdeCase::DilationRotationSourceFree => Reduction::DilationRotation,
            OdeCase::RotationTime => Reduction::RotationTime,
            OdeCase::Dilation => Reduction::Dilation,
            OdeCase::Travelling => Reduction::Travelling,
            OdeCase::C1Zero => Reduction::C1Zero,
            OdeCase::C2Zero => Reduction::C2Zero,
            OdeCase::C3Zero => Reduction::C3Zero,
        }
    }

    /// The printed particular solution G(λ) and the constraints under which
    /// it is claimed, if one is displayed for this reduction.
    pub fn displayed_solution(self) -> Option<(Expr, Constraints)> {
        let h0 = Constraints::new().h_zero();
        match self {
            OdeCase::DilationRotation => None,
            OdeCase::DilationRotationSourceFree | OdeCase::Dilation | OdeCase::C2Zero => Some((lit("-lambda/16"), h0)),
            OdeCase::RotationTime => Some((lit("(16/(h*lambda*(theta - 2)^2))^(1/(theta - 2))"), Constraints::new())),
            OdeCase::Travelling => Some((
                lit("(alpha5*d1 - alpha4*d2)/(2*alpha2*(d1^2 + d2^2))*d2*lambda"),
                h0.nonzero("alpha2").nonzero("d2"),
            )),
            OdeCase::C1Zero => Some((lit("exp(ln(16/(h*(theta - 2)^2*lambda))/(theta - 2))"), Constraints::new())),
            OdeCase::C3Zero => Some((lit("c1*(theta - 1)*lambda/16"), h0)),
        }
    }
}

/// ODE residual in λ and the jets G = `G`, G′ = `G_l`, G″ = `G_ll`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedOde {
    pub case: OdeCase,
    pub residual: Expr,
}

pub fn reduced_ode(case: OdeCase) -> ReducedOde {
    let s = match case {
        OdeCase::DilationRotation | OdeCase::C2Zero => {
            "-h*(theta - 1)*G^theta + 8*lambda*(theta - 1)*G_l^2 + 8*(theta - 1)*G*G_l + lambda*(theta - 2)*G_l \
             + 8*lambda*(theta - 1)*G*G_ll + G"
        }
        OdeCase::DilationRotationSourceFree => {
            "8*lambda*(theta - 1)*G_l^2 + 8*(theta - 1)*G*G_l + lambda*(theta - 2)*G_l + 8*lambda*(theta - 1)*G*G_ll + G"
        }
        OdeCase::RotationTime => "-h*G^theta + 8*(lambda*G_l^2 + G*(G_l + lambda*G_ll))",
        OdeCase::Dilation => {
            "-h*(theta - 1)*G^theta + 8*lambda*(theta - 1)*G_l^2 + (8*(theta - 1)*G + lambda*(theta - 2))*G_l \
             + G*(1 + 8*lambda*(theta - 1)*G_ll)"
        }
        OdeCase::Travelling => {
            "-alpha2*h*G^theta + 2*alpha2*(1 + (d1/d2)^2)*G_l^2 + (alpha4 - d1/d2*alpha5)*G_l \
             + 2*alpha2*(1 + (d1/d2)^2)*G*G_ll"
        }
        OdeCase::C1Zero => "8*lambda*G_l^2 + 8*G*G_l + 8*lambda*G*G_ll - h*G^theta",
        OdeCase::C3Zero => "-h*G^theta + 8*lambda*G_l^2 + 8*G*G_l - c1*lambda*(theta - 2)*G_l - c1*G + 8*lambda*G*G_ll",
    };
    ReducedOde { case, residual: lit(s) }
}

fn g_jet(n: u8) -> Atom {
    Atom::jet(Dep::G, [n, 0, 0])
}

/// Substitutes G, G′, G″ computed from a jet-free G(λ).
pub fn ode_residual(ode: &ReducedOde, g: &Expr) -> Expr {
    let lambda = Atom::param("lambda");
    let g1 = differentiate(g, &lambda);
    let g2 = differentiate(&g1, &lambda);
    substitute_many(&ode.residual, &[(g_jet(0), g.clone()), (g_jet(1), g1), (g_jet(2), g2)])
}

/// Whether F(X, Y) = G(λ) in the printed reduced PDE gives the printed ODE
/// up to a multiplier (λ = X² + Y², or X − (d₁/d₂)Y for the travelling case).
pub fn ode_consistency(case: OdeCase) -> Result<Consistency, ExprError> {
    let map = similarity_map(case.reduction());
    let g = |n| Expr::atom(g_jet(n));
    let (x, y) = (Expr::param("X"), Expr::param("Y"));
    let two = Expr::int(2);
    let (lambda, jets) = if case == OdeCase::Travelling {
        let r = lit("d1/d2");
        (
            x - r.clone() * y,
            [g(0), g(1), -(r.clone() * g(1)), g(2), r.powi(2) * g(2)],
        )
    } else {
        let four = Expr::int(4);
        (
            x.powi(2) + y.powi(2),
            [
                g(0),
                two.clone() * x.clone() * g(1),
                two.clone() * y.clone() * g(1),
                two.clone() * g(1) + four.clone() * x.powi(2) * g(2),
                two * g(1) + four * y.powi(2) * g(2),
            ],
        )
    };
    let targets = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [2, 0, 0], [0, 2, 0]];
    let mut pairs = Vec::new();
    for (idx, val) in targets.into_iter().zip(jets) {
        pairs.push((Atom::Jet(JetVar::new(Dep::F, idx)?), val));
    }
    let mut c = map.constraints.clone().range("X", -3.0, 3.0).range("Y", -3.0, 3.0);
    if case == OdeCase::DilationRotationSourceFree {
        c = c.h_zero();
    }
    if case == OdeCase::Travelling {
        c = c.nonzero("d2");
    }
    let transformed = substitute_many(&map.reduced, &pairs);
    let printed = substitute_many(&reduced_ode(case).residual, &[(Atom::param("lambda"), lambda)]);
    proportional(&transformed, &printed, (&g_jet(2), &g_jet(0)), &c)
}
