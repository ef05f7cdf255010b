mod common;

use plsym::symexpr::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn normalization_is_idempotent(e in common::expr()) {
        let n = e.normalize();
        prop_assert_eq!(&n, &e);
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn print_parse_roundtrip(e in common::expr()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert!(back == e, "{} ## {}", text, back);
    }

    #[test]
    fn derivative_matches_finite_difference(e in common::expr(), at in common::point_strategy()) {
        match common::derivative_agrees(&e, &at) {
            Ok(ok) => prop_assert!(ok, "{}", e),
            Err(_) => {}
        }
    }

    #[test]
    fn phi_powers_stay_on_lattice(ms in proptest::collection::vec((-3i64..=3, -3i64..=3, any::<bool>()), 1..6)) {
        let mut acc = Expr::one();
        for (m, n, mul) in ms {
            let f = Expr::phi().pow(&(Expr::int(m) + Expr::int(n) * Expr::theta()));
            acc = if mul { acc * f } else { acc / f };
        }
        for (mono, _) in acc.terms() {
            for (a, k) in mono {
                prop_assert_eq!(a, &Atom::phi());
                prop_assert!(matches!(k, Exponent::Lat(..)));
            }
        }
    }

    #[test]
    fn total_derivatives_commute(e in common::jet_expr()) {
        let xy = total_derivative(&total_derivative(&e, Coord::X).unwrap(), Coord::Y).unwrap();
        let yx = total_derivative(&total_derivative(&e, Coord::Y).unwrap(), Coord::X).unwrap();
        prop_assert_eq!(xy, yx);
    }
}
