use std::sync::Arc;

use num_bigint::BigInt;
use novikov_core::complex::*;
use novikov_core::flow::{compute_return_endomorphism, find_critical_points, lift_critical_points, Field, Scenario, Tracer};
use novikov_core::laurent::*;
use novikov_core::semilinear::*;
use novikov_core::twisted::*;
use proptest::prelude::*;

fn monodromy(i: usize) -> Vec<Vec<i64>> {
    [vec![], vec![vec![1]], vec![vec![-1]], vec![vec![0, 1], vec![1, 0]], vec![vec![1, 1], vec![0, 1]]][i].clone()
}

fn alg(m: usize) -> impl Strategy<Value = GroupAlgebraElt> {
    prop::collection::vec((prop::collection::vec(-1i64..=1, m), -2i64..=2), 0..3)
        .prop_map(move |t| GroupAlgebraElt::from_terms(m, t.into_iter().map(|(h, c)| (h, BigInt::from(c)))))
}

fn endo() -> impl Strategy<Value = (SemilinearEndo, Vec<GroupAlgebraElt>, Vec<GroupAlgebraElt>)> {
    (0usize..5, 1usize..=3).prop_flat_map(|(gi, n)| {
        let g = Arc::new(TwistedGroup::new(monodromy(gi)).unwrap());
        let m = g.m();
        (
            prop::collection::vec(prop::collection::vec(alg(m), n), n),
            prop::collection::vec(alg(m), n),
            prop::collection::vec(alg(m), n),
        )
            .prop_map(move |(a, l, x)| (SemilinearEndo::new(g.clone(), a).unwrap(), l, x))
    })
}

/// One generator per index 0, 1, 2 and random return data.
fn cyclic() -> impl Strategy<Value = CyclicMorseData> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r0, r1)| {
        (
            prop::collection::vec(prop::collection::vec(-2i64..=2, r0), r0),
            prop::collection::vec(prop::collection::vec(-2i64..=2, r1), r1),
            prop::collection::vec(-2i64..=2, r0 * 2 + r1 * 2),
            -2i64..=2,
        )
            .prop_map(move |(h0, h1, v, dir)| {
                let rows = |a: &[Vec<i64>]| IntMatrix::from_rows(a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
                let pts = [("m", 0), ("s", 1), ("M", 2)].map(|(n, i)| CritPoint { name: n.into(), index: i });
                let mut d = CyclicMorseData { points: pts.to_vec(), ..Default::default() };
                d.h.insert(0, rows(&h0));
                d.h.insert(1, rows(&h1));
                d.x_class.insert("s".into(), IntVector::from_i64(&v[..r0]));
                d.lambda.insert("m".into(), IntCovector::from_i64(&v[r0..2 * r0]));
                d.x_class.insert("M".into(), IntVector::from_i64(&v[2 * r0..2 * r0 + r1]));
                d.lambda.insert("s".into(), IntCovector::from_i64(&v[2 * r0 + r1..]));
                d.direct.insert(("s".into(), "m".into()), BigInt::from(dir));
                d
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_expands_to_series(d in cyclic(), n in 0i64..=50) {
        for (x, y) in d.adjacent_pairs() {
            let r = incidence_rational(&d, &x, &y).unwrap();
            prop_assert_eq!(expand_rational(&r, n), incidence_series(&d, &x, &y, n).unwrap());
            prop_assert!(r.den().constant_term() == BigInt::from(1));
        }
    }

    #[test]
    fn trivial_group_collapses_to_cyclic(d in cyclic()) {
        let e = novikov_core::io::Problem::over_trivial_group(&d);
        for (x, y) in d.adjacent_pairs() {
            let (_, s) = equivariant_incidence(&e, &x, &y, 20).unwrap();
            prop_assert_eq!(s.to_laurent().unwrap(), incidence_series(&d, &x, &y, 20).unwrap());
        }
    }

    #[test]
    fn semilinearity((xi, _, x) in endo(), lam in alg(0)) {
        let m = xi.group.m();
        let lam = if m == 0 { lam } else { GroupAlgebraElt::monomial(vec![1; m], BigInt::from(2)).add(&GroupAlgebraElt::one(m)) };
        let xl: Vec<GroupAlgebraElt> = x.iter().map(|c| c.mul(&lam)).collect();
        let moved = conj_by_theta(&xi.group, &lam, ConjDir::Fwd);
        let want: Vec<GroupAlgebraElt> = xi.apply(&x).unwrap().iter().map(|c| c.mul(&moved)).collect();
        prop_assert_eq!(xi.apply(&xl).unwrap(), want);
    }

    #[test]
    fn power_route_matches_iteration((xi, _, x) in endo(), n in 0usize..=12) {
        prop_assert_eq!(xi.apply_power(&x, n as i64).unwrap(), xi.apply_iterated(&x, n).unwrap());
    }

    #[test]
    fn summed_series_two_routes((xi, lam, x) in endo()) {
        let (_, closed) = summed_series(&xi, &lam, &x, 20).unwrap();
        prop_assert_eq!(closed, summed_series_direct(&xi, &lam, &x, 20).unwrap());
    }

    #[test]
    fn base_change_involution_and_reindexing(
        (xi, lam, x) in endo(),
        (h1, j1, h2, j2) in (prop::collection::vec(-2i64..=2, 2), -2i64..=2, prop::collection::vec(-2i64..=2, 2), -2i64..=2),
    ) {
        let g = xi.group.clone();
        let m = g.m();
        let (_, e) = summed_series(&xi, &lam, &x, 10).unwrap();
        let g1 = GroupElt { h: h1[..m].to_vec(), j: j1 };
        let g2 = GroupElt { h: h2[..m].to_vec(), j: j2 };
        let once = base_change(&e, &g1, &g2);
        prop_assert_eq!(&once, &shifted_lift_incidence(&e, &g1, &g2));
        prop_assert_eq!(base_change(&once, &g.inv(&g1), &g.inv(&g2)), e);
    }
}

#[test]
fn m0_summed_series_matches_cramer() {
    let g = Arc::new(TwistedGroup::trivial());
    let int = |c: i64| GroupAlgebraElt::integer(0, BigInt::from(c));
    let a = [[1i64, 2], [-1, 3]];
    let xi = SemilinearEndo::new(g, a.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()).unwrap();
    let (_, e) = summed_series(&xi, &[int(1), int(-1)], &[int(2), int(1)], 30).unwrap();
    let q = cramer_series(&IntMatrix::from_i64(&[&a[0], &a[1]]), &IntVector::from_i64(&[2, 1]), &IntCovector::from_i64(&[1, -1])).unwrap();
    assert_eq!(e.to_laurent().unwrap(), q.expand(30));
}

#[test]
fn identity_and_theta_base_change() {
    let g = Arc::new(TwistedGroup::new(vec![vec![-1]]).unwrap());
    let one = GroupAlgebraElt::monomial(vec![1], BigInt::from(1));
    let e = NovikovElt::new(g.clone(), 0, vec![one.clone(), GroupAlgebraElt::one(1)], 6);
    assert_eq!(base_change(&e, &g.identity(), &g.identity()), e);
    let shifted = base_change(&e, &g.identity(), &g.theta());
    assert_eq!(shifted.start(), -1);
    assert_eq!(shifted.trunc(), 5);
    assert_eq!(shifted.coeff(-1).unwrap(), GroupAlgebraElt::monomial(vec![-1], BigInt::from(1)));
}

#[test]
fn torus_flow_complex_is_consistent_and_acyclic() {
    let sc = Scenario::torus_four_point();
    let map = sc.map();
    let points = lift_critical_points(&find_critical_points(&map, &sc.tolerances).unwrap(), sc.cut);
    let field = Field::gradient_of(&map);
    let tracer = Tracer::new(&field, &points, &sc.tolerances);
    let r = compute_return_endomorphism(&tracer, sc.cut, sc.delta.unwrap(), sc.fiber.unwrap()).unwrap();
    let d = r.to_cyclic(&points);
    assert!(assemble_novikov_complex(&d, 30).unwrap().check_d2().is_ok());
    let eq = novikov_core::io::Problem::over_trivial_group(&d);
    assert!(assemble_equivariant_complex(&eq, 30).unwrap().check_d2().is_ok());
    let cert = acyclicity_certificate(&d).unwrap();
    assert!(cert.acyclic);
    for x in ["c1_0", "c1_1"] {
        assert_eq!(incidence_rational(&d, x, "c0_0").unwrap(), RationalFn::from_i64(1, &[1, -1], &[1]).unwrap());
    }
}
