use plsym::numgrid::*;
use plsym::solutions::{family, FamilyId};
use proptest::prelude::*;

fn s2() -> Exact {
    Exact::new(family(FamilyId::S2).phi, &[("h", 2.0), ("theta", 0.5)])
}

fn s3() -> Exact {
    let p = [("h", 0.0), ("theta", 0.5), ("alpha2", 1.0), ("alpha4", 0.3), ("alpha5", -0.7), ("d1", 1.0), ("d2", 2.0)];
    Exact::new(family(FamilyId::S3).phi, &p)
}

fn config(dt: f64, steps: usize, h: f64, boundary: Boundary) -> SimConfig {
    SimConfig { dt, steps, h, theta: 0.5, boundary, clamp_negative: false }
}

#[test]
fn grid_validation() {
    assert_eq!(Grid2D::new(7, 8, 0.1, 0.1, 0.0, 0.0), Err(NumError::BadGrid));
    assert_eq!(Grid2D::new(8, 8, 0.0, 0.1, 0.0, 0.0), Err(NumError::BadGrid));
    let g = Grid2D::square(9, -1.0, 1.0).unwrap().with_hole(0.3);
    assert!(g.is_fixed(4, 4) && g.is_fixed(0, 3) && !g.is_fixed(2, 2));
    assert!((g.x(8) - 1.0).abs() < 1e-15);
}

#[test]
fn residual_of_s1() {
    let s1 = Exact::new(family(FamilyId::S1).phi, &[("h", 0.0), ("theta", 0.5)]);
    let g = Grid2D::square(64, 1.0, 5.0).unwrap();
    assert!(residual_numeric(&s1, &g, 2.0).unwrap() < 1e-4);
}

#[test]
fn residual_is_second_order() {
    let r = |n| residual_numeric(&s2(), &Grid2D::square(n, 1.0, 3.0).unwrap(), 1.0).unwrap();
    let (a, b, c) = (r(17), r(33), r(65));
    for ratio in [a / b, b / c] {
        assert!((3.4..=4.6).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn s2_is_stationary() {
    let g = Grid2D::square(64, -3.0, 3.0).unwrap().with_hole(1.0);
    let f = sample(&s2(), &g, 1.0).unwrap();
    let cfg = config(0.9 * stable_dt(&f, &g), 100, 2.0, Boundary::ExactDirichlet(s2()));
    assert!(stationary_drift(&s2(), &g, &cfg, 1.0).unwrap() < 1e-3);
}

#[test]
fn plane_is_reproduced_exactly() {
    // φ² is quadratic and φ_t constant, so both discretisations are exact
    let g = Grid2D::square(32, 0.0, 1.0).unwrap();
    let f = sample(&s3(), &g, 1.0).unwrap();
    let dt = 0.5 * stable_dt(&f, &g);
    let one = step(&f, &config(dt, 1, 0.0, Boundary::ExactDirichlet(s3())), &g).unwrap();
    let want = sample(&s3(), &g, 1.0 + dt).unwrap();
    let err = one.values.iter().zip(&want.values).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(err < 1e-13);
    let rep = evolve_and_compare(&s3(), &g, &config(dt, 0, 0.0, Boundary::ZeroFlux), 1.0, 1.0 + 50.0 * dt).unwrap();
    assert_eq!(rep.steps, 50);
    assert!(rep.linf_error < 1e-12);
}

#[test]
fn zero_interval_has_no_error() {
    let g = Grid2D::square(16, 1.0, 2.0).unwrap();
    let rep = evolve_and_compare(&s2(), &g, &config(1e-4, 0, 2.0, Boundary::ZeroFlux), 1.0, 1.0).unwrap();
    assert_eq!((rep.steps, rep.linf_error), (0, 0.0));
}

#[test]
fn guards() {
    let g = Grid2D::square(16, 1.0, 2.0).unwrap();
    let f = sample(&s2(), &g, 1.0).unwrap();
    let too_big = config(2.0 * stable_dt(&f, &g), 1, 2.0, Boundary::ZeroFlux);
    assert!(matches!(step(&f, &too_big, &g), Err(NumError::Stability { .. })));
    let mut neg = f.clone();
    neg.values[40] = -0.01;
    let cfg = config(0.5 * stable_dt(&f, &g), 1, 2.0, Boundary::ZeroFlux);
    assert!(matches!(step(&neg, &cfg, &g), Err(NumError::Negative { .. })));
    assert!(step(&neg, &SimConfig { clamp_negative: true, ..cfg.clone() }, &g).is_ok());
    let mut bad = f.clone();
    bad.values[40] = f64::NAN;
    assert!(step(&bad, &cfg, &g).is_err());
}

#[test]
fn singular_solution_is_rejected_at_the_origin() {
    let g = Grid2D::square(9, -1.0, 1.0).unwrap();
    assert!(sample(&s2(), &g, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_flux_conserves_mass(vals in prop::collection::vec(0.1..2.0f64, 100), steps in 1usize..20) {
        let g = Grid2D::square(10, 0.0, 1.0).unwrap();
        let mut f = Field { values: vals, time: 0.0 };
        let dt = 0.5 * stable_dt(&f, &g);
        let m0 = f.mass(&g);
        for _ in 0..steps {
            let cfg = config(dt.min(0.5 * stable_dt(&f, &g)), 1, 0.0, Boundary::ZeroFlux);
            f = step(&f, &cfg, &g).unwrap();
        }
        prop_assert!((f.mass(&g) - m0).abs() <= 1e-12);
    }

    #[test]
    fn source_only_decays(v in 0.1..2.0f64, h in 0.1..4.0f64) {
        let g = Grid2D::square(8, 0.0, 1.0).unwrap();
        let f = Field { values: vec![v; 64], time: 0.0 };
        let cfg = config(0.5 * stable_dt(&f, &g), 1, h, Boundary::ZeroFlux);
        let next = step(&f, &cfg, &g).unwrap();
        let want = v - cfg.dt * h * v.sqrt();
        prop_assert!(next.values.iter().all(|x| (x - want).abs() < 1e-14));
    }
}

#[test]
fn buried_nodes_skip_the_singularity() {
    // odd node count puts a node on the origin, deep inside the hole
    let g = Grid2D::square(33, -3.0, 3.0).unwrap().with_hole(1.0);
    assert!(g.is_buried(16, 16) && !g.is_buried(0, 0));
    let f = sample(&s2(), &g, 1.0).unwrap();
    assert_eq!(f.at(&g, 16, 16), 0.0);
    let cfg = config(0.5 * stable_dt(&f, &g), 5, 2.0, Boundary::ExactDirichlet(s2()));
    assert!(stationary_drift(&s2(), &g, &cfg, 1.0).unwrap() < 1e-3);
    let off = Grid2D::square(33, -2.0, 4.0).unwrap().with_hole_at(1.0, -1.0, 1.0);
    assert!(off.is_fixed(16, 8) && !off.is_fixed(2, 2));
}
