use plsym::solutions::*;
use plsym::symexpr::*;

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn verdict(e: &Expr, c: &Constraints) -> ZeroVerdict {
    is_zero(e, c).unwrap()
}

#[test]
fn trivial_residual() {
    assert!(Constraints::new().h_zero().apply(&pde_residual(&Expr::zero())).is_zero());
}

#[test]
fn families_verify() {
    for id in [FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5] {
        let r = verify_family(id, &[]).unwrap();
        assert_eq!(r.verdict, ZeroVerdict::Zero, "{id}: {}", r.residual);
    }
    assert!(family(FamilyId::S2).constraints.fixed().is_empty());
    assert!(family(FamilyId::S1).requires_h_zero());
    assert!(verify_family(FamilyId::S1, &[("h", Expr::one())]).is_err());
    assert!(verify_family(FamilyId::S3, &[("alpha2", Expr::zero())]).is_err());
    let r = verify_family(FamilyId::S4, &[("c3", Expr::int(1)), ("c4", Expr::int(1)), ("c5", Expr::int(1))]).unwrap();
    assert_eq!(r.verdict, ZeroVerdict::Zero);
}

#[test]
fn families_are_jet_free() {
    for id in FamilyId::ALL {
        assert!(family(id).phi.jets().is_empty());
    }
}

#[test]
fn plane_residual_is_the_source() {
    let s3 = family(FamilyId::S3);
    let c = Constraints::new().nonzero("alpha2").nonzero("d2");
    let diff = pde_residual(&s3.phi) - Expr::param("h") * s3.phi.pow(&Expr::theta());
    assert_eq!(verdict(&diff, &c), ZeroVerdict::Zero);
    assert_eq!(verify_under(&s3, &c).unwrap().verdict, ZeroVerdict::NonZero);
}

#[test]
fn s6_as_printed() {
    let s6 = family(FamilyId::S6);
    assert_eq!(verify_family(FamilyId::S6, &[]).unwrap().verdict, ZeroVerdict::NonZero);
    // φ = κ c₁ρ²/(16(c₁t + c₂)) gives −κ(1 + κ)c₁²ρ²/(16(c₁t + c₂)²)
    let rho2 = p("((c1*(theta - 2)*x + 2*c4*(theta - 1))^2 + (c1*(theta - 2)*y + 2*c5*(theta - 1))^2)/(c1^2*(theta - 2)^2)");
    let predicted = p("-kappa*(1 + kappa)*c1^2/(16*(c1*t + c2)^2)") * rho2;
    let res = s6.constraints.apply(&pde_residual(&s6.phi));
    assert_eq!(verdict(&(res - predicted), &s6.constraints), ZeroVerdict::Zero);
    let fixed = s6.constraints.clone().fix(KAPPA, Expr::int(-1));
    assert_eq!(verify_under(&s6, &fixed).unwrap().verdict, ZeroVerdict::Zero);
    let n = numeric_check(&s6, 100, 1).unwrap();
    assert_eq!((n.valid, n.skipped), (0, 100));
    assert!(!n.passes(1e-9));
}

#[test]
fn numeric_spot_checks() {
    for id in [FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5] {
        let n = numeric_check(&family(id), 100, 42).unwrap();
        assert!(n.passes(1e-9), "{id}: {n:?}");
        assert_eq!(n.valid, 100);
    }
}

#[test]
fn printed_odes() {
    let ode = reduced_ode(OdeCase::RotationTime);
    assert_eq!(ode.residual, p("-h*G^theta + 8*lambda*G_l^2 + 8*G*G_l + 8*lambda*G*G_ll"));
    assert_eq!(reduced_ode(OdeCase::Dilation).residual, reduced_ode(OdeCase::DilationRotation).residual);
    let free = reduced_ode(OdeCase::DilationRotationSourceFree).residual;
    assert_eq!(free, p("8*lambda*(theta-1)*G_l^2 + 8*(theta-1)*G*G_l + lambda*(theta-2)*G_l + 8*lambda*(theta-1)*G*G_ll + G"));
    for case in OdeCase::ALL {
        let jets = reduced_ode(case).residual.jets();
        assert!(jets.iter().all(|j| j.dep == Dep::G && j.order() <= 2), "{case:?}");
    }
}

#[test]
fn displayed_g_solves_ode() {
    for case in OdeCase::ALL {
        if let Some((g, c)) = case.displayed_solution() {
            let r = ode_residual(&reduced_ode(case), &g);
            assert_eq!(verdict(&r, &c), ZeroVerdict::Zero, "{case:?}");
        }
    }
    // with h symbolic the linear profiles leave exactly the source term
    let (g, _) = OdeCase::C3Zero.displayed_solution().unwrap();
    let r = ode_residual(&reduced_ode(OdeCase::C3Zero), &g) + Expr::param("h") * g.pow(&Expr::theta());
    assert_eq!(verdict(&r, &Constraints::new().range("c1", -3.0, -0.1)), ZeroVerdict::Zero);
    let (g, _) = OdeCase::Travelling.displayed_solution().unwrap();
    let r = ode_residual(&reduced_ode(OdeCase::Travelling), &g) + p("alpha2*h") * g.pow(&Expr::theta());
    assert_eq!(verdict(&r, &Constraints::new().nonzero("alpha2").nonzero("d2")), ZeroVerdict::Zero);
}

#[test]
fn similarity_maps() {
    let m = similarity_map(Reduction::Travelling);
    assert_eq!(m.x_expr, p("x - alpha4*t/alpha2"));
    assert_eq!(m.y_expr, p("y - alpha5*t/alpha2"));
    assert_eq!(m.prefactor, Expr::one());
    let m = similarity_map(Reduction::RotationTime);
    let t0 = |e: &Expr| substitute(e, &Atom::Var(Coord::T), &Expr::zero());
    assert_eq!((t0(&m.x_expr), t0(&m.y_expr)), (Expr::y(), Expr::x()));
}

#[test]
fn maps_reproduce_reduced_pdes() {
    use Reduction::*;
    for case in [DilationRotation, RotationTime, Dilation, Travelling, C1Zero] {
        let c = map_consistency(&similarity_map(case)).unwrap();
        assert_eq!(c.verdict, ZeroVerdict::Zero, "{case}");
    }
    let c = map_consistency(&similarity_map(Travelling)).unwrap();
    assert_eq!(c.multiplier, p("-1/alpha2"));
}

#[test]
fn c2_zero_reduced_pde_has_wrong_f_term() {
    let mut m = similarity_map(Reduction::C2Zero);
    assert_eq!(map_consistency(&m).unwrap().verdict, ZeroVerdict::NonZero);
    // replacing +2F/(θ−1) by −F/(θ−1) makes the printed form consistent
    m.reduced = m.reduced.clone() - p("3*F/(theta - 1)");
    assert_eq!(map_consistency(&m).unwrap().verdict, ZeroVerdict::Zero);
}

#[test]
fn c3_zero_chain() {
    let mut m = similarity_map(Reduction::C3Zero);
    assert_eq!(map_consistency(&m).unwrap().verdict, ZeroVerdict::NonZero);
    // the printed reduced PDE needs ω² = 1/(θ−1)², not (θ−1)^((2−θ)/(θ−1))
    let omega = p("1/(1 - theta)");
    let sub = |e: &Expr| substitute(e, &Atom::param("omega"), &omega);
    m.x_expr = sub(&m.x_expr);
    m.y_expr = sub(&m.y_expr);
    assert_eq!(map_consistency(&m).unwrap().verdict, ZeroVerdict::Zero);
}

#[test]
fn odes_follow_from_reduced_pdes() {
    use OdeCase::*;
    for case in [DilationRotation, DilationRotationSourceFree, RotationTime, Dilation, Travelling, C1Zero] {
        assert_eq!(ode_consistency(case).unwrap().verdict, ZeroVerdict::Zero, "{case:?}");
    }
    // inherits the F-term error of its reduced PDE
    assert_eq!(ode_consistency(C2Zero).unwrap().verdict, ZeroVerdict::NonZero);
    // both c₁ terms carry the wrong sign
    assert_eq!(ode_consistency(C3Zero).unwrap().verdict, ZeroVerdict::NonZero);
}

#[test]
fn group_action_examples() {
    let s1 = family(FamilyId::S1).phi;
    let eps = Expr::param("eps");
    assert_eq!(apply_group(4, &eps, &s1), p("-((x - eps)^2 + y^2)/(16*t)"));
    assert_eq!(apply_group(2, &eps, &s1), p("-(x^2 + y^2)/(16*(t - eps))"));
    assert_eq!(apply_group(5, &Expr::zero(), &s1), s1);
    let s2 = family(FamilyId::S2).phi;
    let moved = apply_group(1, &Expr::rational(3, 10), &s2);
    assert_eq!(verdict(&pde_residual(&moved), &Constraints::new()), ZeroVerdict::Zero);
}

#[test]
fn group_actions_preserve_solutions() {
    let eps = Expr::rational(3, 10);
    for id in FamilyId::ALL {
        let fam = family(id);
        let base = verify_family(id, &[]).unwrap().verdict;
        for i in 1..=5 {
            let moved = SolutionFamily { phi: apply_group(i, &eps, &fam.phi), ..fam.clone() };
            let r = verify_under(&moved, &fam.constraints).unwrap();
            assert_eq!(r.verdict, base, "{id} under G{i}");
        }
    }
}

#[test]
fn dilation_sign() {
    // the printed e^(+ε/(θ−1)) prefactor does not give a solution
    let s2 = family(FamilyId::S2).phi;
    let eps = Expr::rational(1, 2);
    let printed = (eps.clone() * tau_expr()).exp() * apply_group(1, &eps, &s2) * (eps * tau_expr()).exp();
    assert_eq!(verdict(&pde_residual(&printed), &Constraints::new()), ZeroVerdict::NonZero);
}
