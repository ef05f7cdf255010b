use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plsym::conslaw::{
    compare_vectors, conserved_vector, euler_lagrange, formal_lagrangian, onshell_divergence, printed_adjoint,
    printed_eta, self_adjointness_residual, ComponentVerdict, Multiplier,
};
use plsym::liealg::tables::{entry, AD_MATRIX, INVARIANT_CONSTRUCTION, KILLING_FORM};
use plsym::liealg::{
    ad_matrix, adjoint_action, adjoint_transform_matrix, classify, invariance_residual, killing_form,
    printed_adjoint_matrix, standard_generators, AlgebraElement,
};
use plsym::solutions::{
    apply_group, family, map_consistency, numeric_check, ode_consistency, ode_residual, pde_residual, reduced_ode,
    similarity_map, verify_family, verify_under, FamilyId, OdeCase, Reduction,
};
use plsym::symexpr::{is_zero, Constraints, Expr, Rational, ZeroVerdict};

use crate::report::{Report, Verdict};
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Symmetries,
    Solutions,
    Adjoint,
    Conservation,
    All,
}

/// Known gaps in the source material. A failing check with one of these
/// names is reported as a documented discrepancy instead of a failure.
pub const EXPECTED: &[&str] = &[
    "S6 residual",
    "S6 numeric spot check",
    "S3 residual (h symbolic)",
    "reduction C2Zero map",
    "reduction C3Zero map",
    "ODE C2Zero from reduced PDE",
    "ODE C3Zero from reduced PDE",
    "self-adjointness (h symbolic)",
    "X1 divergence (h symbolic)",
    "X2 divergence (h symbolic)",
    "X3 divergence (h symbolic)",
    "X4 divergence (h symbolic)",
    "X5 divergence (h symbolic)",
    "X1 eta_x vs printed",
    "X1 eta_y vs printed",
    "X2 eta_x vs printed",
    "X2 eta_y vs printed",
    "X5 eta_x vs printed",
];

#[derive(Clone, Debug)]
pub struct Settings {
    pub h: Option<Rational>,
    pub theta: Option<Rational>,
    pub seed: u64,
    pub round_trips: usize,
}

impl Settings {
    fn constraints(&self) -> Constraints {
        let mut c = Constraints::new().with_seed(self.seed);
        if let Some(h) = &self.h {
            c = c.fix("h", Expr::constant(h.clone()));
        }
        if let Some(t) = &self.theta {
            c = c.fix("theta", Expr::constant(t.clone()));
        }
        c
    }

    fn h_label(&self) -> String {
        match &self.h {
            Some(h) => format!("h = {h}"),
            None => "h symbolic".into(),
        }
    }
}

fn zero(e: &Expr, c: &Constraints) -> Result<ZeroVerdict, Failure> {
    Ok(is_zero(e, c)?)
}

fn relation(c: &plsym::solutions::Consistency) -> String {
    match c.verdict {
        ZeroVerdict::Zero => format!("proportional, multiplier {}", c.multiplier),
        v => format!("not proportional ({v}); the difference from the best multiple has {} terms", c.difference.len()),
    }
}

fn count(report: &mut Report, name: &str, ok: usize, total: usize, what: &str, source_ref: &str) {
    let v = if ok == total { Verdict::Pass } else { Verdict::Fail };
    report.push(name, v, format!("{ok}/{total} {what}"), source_ref);
}

pub fn symmetries(s: &Settings) -> Result<Report, Failure> {
    let mut r = Report::new("symmetries");
    let c = s.constraints();
    for (i, v) in standard_generators().iter().enumerate() {
        let verdict = zero(&invariance_residual(v)?, &c)?;
        r.push(format!("X{} on-shell invariance", i + 1), verdict.into(), format!("residual {verdict}"), "symmetry generators");
    }
    Ok(r)
}

pub fn adjoint(s: &Settings) -> Result<Report, Failure> {
    let mut r = Report::new("adjoint");
    crate::tables::commutation(&mut r)?;
    crate::tables::adjoint(&mut r)?;
    crate::tables::invariants(&mut r)?;
    let c = Constraints::new().with_seed(s.seed);
    let eps = Expr::param("eps");
    let mut ok = 0;
    for i in 1..=5 {
        let got = adjoint_action(i, &eps, &AlgebraElement::symbolic())?;
        for k in 0..5 {
            ok += usize::from(zero(&(got.alpha[k].clone() - entry(INVARIANT_CONSTRUCTION[i - 1][k])), &c)?.is_zero());
        }
    }
    count(&mut r, "invariant construction table", ok, 25, "entries", "Table for Construction of Invariant Functions");

    let m = ad_matrix(&AlgebraElement::symbolic());
    let ok = (0..25).filter(|&n| m[n / 5][n % 5] == entry(AD_MATRIX[n / 5][n % 5])).count();
    count(&mut r, "ad matrix", ok, 25, "entries", "Killing form theorem");
    let sym = AlgebraElement::symbolic();
    let k = zero(&(killing_form(&sym, &sym) - entry(KILLING_FORM)), &c)?;
    r.push("Killing form", k.into(), format!("K - ({KILLING_FORM}) is {k}"), "Killing form theorem");

    let e = [1, 2, 3, 4, 5].map(|i| Expr::param(&format!("eps{i}")));
    let (a, b) = (adjoint_transform_matrix(&e), printed_adjoint_matrix(&e));
    let mut ok = 0;
    for i in 0..5 {
        for j in 0..5 {
            ok += usize::from(zero(&(a[i][j].clone() - b[i][j].clone()), &c)?.is_zero());
        }
    }
    count(&mut r, "adjoint transformation matrix", ok, 25, "entries", "general adjoint transformation matrix");

    let theta = s.theta.clone().unwrap_or_else(|| Rational::new(1.into(), 2.into()));
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut ok = 0;
    let mut first_bad = String::new();
    let mut done = 0;
    while done < s.round_trips {
        let alpha: [Rational; 5] = std::array::from_fn(|_| {
            let n: i64 = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-9..=9) };
            Rational::new(n.into(), rng.gen_range(1i64..=5).into())
        });
        let a = AlgebraElement::from_rationals(&alpha);
        if a.is_zero() {
            continue;
        }
        done += 1;
        let cl = classify(&a, &theta)?;
        if cl.is_listed() && cl.verify(&a) {
            ok += 1;
        } else if first_bad.is_empty() {
            first_bad = format!("; first failure at {alpha:?}");
        }
    }
    r.push(
        "optimal system round trip",
        if ok == s.round_trips { Verdict::Pass } else { Verdict::Fail },
        format!("{ok}/{} random elements at theta = {theta}{first_bad}", s.round_trips),
        "optimal system theorem",
    );
    Ok(r)
}

pub fn solutions(s: &Settings) -> Result<Report, Failure> {
    let mut r = Report::new("solutions");
    let reference = "invariant solutions";
    for id in FamilyId::ALL {
        let rep = verify_family(id, &[])?;
        let detail = match rep.verdict {
            ZeroVerdict::Zero => "residual is Zero".to_string(),
            v => format!("residual {v}: {}", rep.residual),
        };
        r.push(format!("{id} residual"), rep.verdict.into(), detail, reference);
    }
    let s3 = family(FamilyId::S3);
    let free = Constraints::new().nonzero("alpha2").nonzero("d2").with_seed(s.seed);
    let rep = verify_under(&s3, &free)?;
    let v = zero(&(rep.residual.clone() - Expr::param("h") * s3.phi.pow(&Expr::theta())), &free)?;
    let detail = format!("residual is the source term h*phi^theta: {v}");
    r.push("S3 residual (h symbolic)", if v.is_zero() { Verdict::Fail } else { Verdict::Unknown }, detail, reference);

    for id in FamilyId::ALL {
        let n = numeric_check(&family(id), 100, s.seed)?;
        let verdict = if n.passes(1e-9) { Verdict::Pass } else { Verdict::Fail };
        let detail = format!("max relative residual {:.3e} over {} points, {} skipped", n.max_relative, n.valid, n.skipped);
        r.push(format!("{id} numeric spot check"), verdict, detail, reference);
    }

    for case in Reduction::ALL {
        let m = similarity_map(case);
        let c = map_consistency(&m)?;
        r.push(format!("reduction {case:?} map"), c.verdict.into(), relation(&c), "similarity reductions");
    }
    for case in OdeCase::ALL {
        let c = ode_consistency(case)?;
        r.push(format!("ODE {case:?} from reduced PDE"), c.verdict.into(), relation(&c), "similarity reductions");
        if let Some((g, gc)) = case.displayed_solution() {
            let v = zero(&ode_residual(&reduced_ode(case), &g), &gc)?;
            r.push(format!("ODE {case:?} displayed G"), v.into(), format!("G = {g}"), "similarity reductions");
        }
    }
    let eps = Expr::rational(3, 10);
    let s2 = family(FamilyId::S2);
    for i in 1..=5 {
        let moved = apply_group(i, &eps, &s2.phi);
        let v = zero(&pde_residual(&moved), &s2.constraints.clone().with_seed(s.seed))?;
        r.push(format!("group action {i} on S2"), v.into(), "eps = 3/10", "transformed solutions");
    }
    Ok(r)
}

pub fn conservation(s: &Settings) -> Result<Report, Failure> {
    let mut r = Report::new(format!("conservation ({})", s.h_label()));
    let c = s.constraints();
    let hl = s.h_label();
    let adj = euler_lagrange(&formal_lagrangian(&Multiplier::opaque()))?;
    let v = zero(&(adj - printed_adjoint()), &c)?;
    r.push("adjoint equation", v.into(), "Euler-Lagrange of the formal Lagrangian vs displayed S", "adjoint equation");

    let psi = Multiplier::printed_family();
    let res = self_adjointness_residual(&psi)?;
    let v = zero(&res, &c)?;
    let detail = if v.is_zero() {
        "residual is Zero".to_string()
    } else {
        let expected = Expr::param("h") * Expr::theta() * Expr::phi().pow(&(Expr::theta() - Expr::one())) * psi.psi.clone();
        let gap = zero(&(res.clone() - expected), &c)?;
        format!("residual = h*theta*phi^(theta - 1)*Psi ({gap})")
    };
    r.push(format!("self-adjointness ({hl})"), v.into(), detail, "nonlinear self-adjointness");

    for (i, g) in standard_generators().iter().enumerate() {
        let cv = conserved_vector(g, &psi)?;
        let div = onshell_divergence(&cv)?;
        let v = zero(&div, &c)?;
        let detail = if v.is_zero() { "on-shell divergence is Zero".into() } else { format!("on-shell divergence = {}", c.apply(&div)) };
        r.push(format!("X{} divergence ({hl})", i + 1), v.into(), detail, "conservation laws");
        let diffs = compare_vectors(&cv, &printed_eta(i + 1), &c)?;
        for (name, d) in ["eta_x", "eta_y", "eta_t"].iter().zip(diffs) {
            let verdict = match d.verdict {
                ComponentVerdict::Equal | ComponentVerdict::TriviallyEquivalent => Verdict::Pass,
                ComponentVerdict::Mismatch => Verdict::Fail,
                ComponentVerdict::Unknown => Verdict::Unknown,
            };
            let detail = match d.verdict {
                ComponentVerdict::Mismatch => format!("{}: constructed - printed = {} on solutions", d.verdict, d.onshell),
                other => other.to_string(),
            };
            r.push(format!("X{} {name} vs printed", i + 1), verdict, detail, "conservation laws");
        }
    }
    Ok(r)
}

pub fn run(scope: Scope, s: &Settings, expected: &[String]) -> Result<Vec<Report>, Failure> {
    let mut out = match scope {
        Scope::Symmetries => vec![symmetries(s)?],
        Scope::Solutions => vec![solutions(s)?],
        Scope::Adjoint => vec![adjoint(s)?],
        Scope::Conservation => vec![conservation(s)?],
        Scope::All => vec![symmetries(s)?, adjoint(s)?, solutions(s)?, conservation(s)?],
    };
    for r in &mut out {
        r.apply_expectations(expected);
    }
    Ok(out)
}
