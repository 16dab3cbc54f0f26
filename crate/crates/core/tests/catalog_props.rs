use lieext::catalog::{make_catalog, structure_equal, CatalogId, Family};
use lieext::ratlin::{frac, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s1_is_lie_and_solvable(n in 3usize..=13, beta in rational()) {
        let l = make_catalog(&CatalogId::s1(n, beta)).unwrap();
        prop_assert!(l.jacobi_violations().is_empty());
        prop_assert!(l.is_solvable());
        prop_assert_eq!(l.nilradical().unwrap().dim(), n);
    }

    #[test]
    fn s4_is_lie(n in 4usize..=13, seed in proptest::collection::vec(rational(), 11)) {
        let alphas: Vec<Scalar> = seed.into_iter().take(n - 3).collect();
        let l = make_catalog(&CatalogId::s4(n, alphas)).unwrap();
        prop_assert!(l.jacobi_violations().is_empty());
        prop_assert_eq!(l.nilradical().unwrap().dim(), n);
    }

    #[test]
    fn tau1_is_lie(half in 3usize..=6, alpha in rational()) {
        let l = make_catalog(&CatalogId::tau1(2 * half, alpha)).unwrap();
        prop_assert!(l.jacobi_violations().is_empty());
    }

    #[test]
    fn tau3_is_lie(half in 3usize..=6, seed in proptest::collection::vec(rational(), 6)) {
        let want = Family::Tau3.param_names(2 * half).len();
        let l = make_catalog(&CatalogId::tau3(2 * half, seed.into_iter().take(want).collect())).unwrap();
        prop_assert!(l.jacobi_violations().is_empty());
    }
}

#[test]
fn nilpotent_families_are_filiform() {
    for n in 4..=13 {
        assert!(make_catalog(&CatalogId::nn1(n)).unwrap().is_filiform());
        if n % 2 == 0 && n >= 6 {
            assert!(make_catalog(&CatalogId::q(n)).unwrap().is_filiform());
        }
        for k in 2..=(n - 1) / 2 {
            if n >= 5 {
                let l = make_catalog(&CatalogId::lk(n, k)).unwrap();
                assert!(l.is_filiform(), "lk:{n}:k={k}");
            }
        }
    }
}

#[test]
fn l_k_grades_to_the_standard_filiform() {
    // The pairing bracket jumps degree, so the associated graded algebra is n_{n,1}.
    for n in 5..=11 {
        for k in 2..=(n - 1) / 2 {
            let (g, _) = make_catalog(&CatalogId::lk(n, k)).unwrap().graded().unwrap();
            assert!(structure_equal(&g, &make_catalog(&CatalogId::nn1(n)).unwrap()).unwrap());
        }
    }
}

#[test]
fn ids_round_trip_through_strings() {
    for s in ["nn1:5", "s1:6:beta=3/2", "s4:7:a3=1,a4=0,a5=2,a6=0", "lk:7:k=2", "tau22:8"] {
        let id: CatalogId = s.parse().unwrap();
        assert_eq!(id.to_string(), s);
    }
    assert!("lk:7:k=4".parse::<CatalogId>().and_then(|id| make_catalog(&id)).is_err());
}
