use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use novikov_core::laurent::LaurentSeries;
use novikov_core::twisted::*;
use proptest::prelude::*;

// Oracle: finite elements of ZG as maps (h, j) -> c, multiplied term by term
// through the group law with plain matrix powers.
type Zg = BTreeMap<(Vec<i64>, i64), i64>;

fn mat_pow_apply(phi: &[Vec<i64>], k: i64, h: &[i64]) -> Vec<i64> {
    let inv = invert(phi);
    let mat = if k >= 0 { phi.to_vec() } else { inv };
    let mut v = h.to_vec();
    for _ in 0..k.abs() {
        v = mat.iter().map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
    }
    v
}

fn invert(phi: &[Vec<i64>]) -> Vec<Vec<i64>> {
    match phi.len() {
        0 => vec![],
        1 => vec![vec![phi[0][0]]],
        2 => {
            let d = phi[0][0] * phi[1][1] - phi[0][1] * phi[1][0];
            vec![vec![phi[1][1] * d, -phi[0][1] * d], vec![-phi[1][0] * d, phi[0][0] * d]]
        }
        _ => unreachable!(),
    }
}

fn zg_mul(phi: &[Vec<i64>], a: &Zg, b: &Zg) -> Zg {
    let mut out = Zg::new();
    for ((h1, j1), c1) in a {
        for ((h2, j2), c2) in b {
            let moved = mat_pow_apply(phi, *j1, h2);
            let h: Vec<i64> = h1.iter().zip(&moved).map(|(x, y)| x + y).collect();
            *out.entry((h, j1 + j2)).or_default() += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn to_zg(x: &NovikovElt) -> Zg {
    let mut out = Zg::new();
    for (i, lev) in x.levels().iter().enumerate() {
        for (h, c) in lev.terms() {
            out.insert((h.clone(), x.start() + i as i64), i64::try_from(c).unwrap());
        }
    }
    out
}

fn restrict(z: &Zg, max_power: i64) -> Zg {
    z.iter().filter(|((_, j), _)| *j <= max_power).map(|(k, v)| (k.clone(), *v)).collect()
}

fn monodromies() -> Vec<Vec<Vec<i64>>> {
    vec![
        vec![],
        vec![vec![1]],
        vec![vec![-1]],
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, -1], vec![1, 0]],
        vec![vec![1, 1], vec![0, 1]],
        vec![vec![2, 1], vec![1, 1]],
    ]
}

fn alg(m: usize) -> impl Strategy<Value = GroupAlgebraElt> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, m), -3i64..=3), 0..4)
        .prop_map(move |t| GroupAlgebraElt::from_terms(m, t.into_iter().map(|(h, c)| (h, BigInt::from(c)))))
}

fn nov(group: Arc<TwistedGroup>) -> impl Strategy<Value = NovikovElt> {
    let m = group.m();
    (-2i64..2, prop::collection::vec(alg(m), 0..5), 2i64..6)
        .prop_map(move |(s, lv, t)| NovikovElt::new(group.clone(), s, lv, t))
}

fn group_and_pair() -> impl Strategy<Value = (Arc<TwistedGroup>, NovikovElt, NovikovElt)> {
    (0..monodromies().len()).prop_flat_map(|i| {
        let g = Arc::new(TwistedGroup::new(monodromies()[i].clone()).unwrap());
        (Just(g.clone()), nov(g.clone()), nov(g))
    })
}

fn h(m: usize, e: &[i64], c: i64) -> GroupAlgebraElt {
    assert_eq!(e.len(), m);
    GroupAlgebraElt::monomial(e.to_vec(), BigInt::from(c))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn semidirect_hand_expansion() {
    let g = Arc::new(TwistedGroup::new(vec![vec![-1]]).unwrap());
    let h1 = NovikovElt::level_term(g.clone(), h(1, &[1], 1), 0, 10);
    let th = NovikovElt::level_term(g.clone(), h(1, &[0], 1), 1, 10);
    assert_eq!(h1.mul(&th).unwrap(), NovikovElt::level_term(g.clone(), h(1, &[1], 1), 1, 10));
    assert_eq!(th.mul(&h1).unwrap(), NovikovElt::level_term(g.clone(), h(1, &[-1], 1), 1, 10));
}

#[test]
fn telescoping() {
    let g = Arc::new(TwistedGroup::identity_monodromy(1));
    let one = h(1, &[0], 1);
    let a = NovikovElt::new(g.clone(), 0, vec![one.clone(), one.neg()], 20);
    let geo = NovikovElt::new(g.clone(), 0, vec![one; 21], 20);
    assert_eq!(a.mul(&geo).unwrap(), NovikovElt::one(g, 20));
}

#[test]
fn level_truncation_examples() {
    let g = Arc::new(TwistedGroup::trivial());
    let one = GroupAlgebraElt::one(0);
    let lam = NovikovElt::new(g.clone(), 0, vec![one.clone(); 3], 10);
    let cut = lam.truncate_at_level(-1).unwrap();
    assert_eq!(cut.levels, vec![one.clone(), one.clone()]);
    let cube = NovikovElt::level_term(g.clone(), one.clone(), 3, 10);
    assert!(cube.truncate_at_level(0).unwrap().is_zero());
    let pow2: Vec<_> = (0..8).map(|k| GroupAlgebraElt::integer(0, BigInt::from(1i64 << k))).collect();
    let lam = NovikovElt::new(g.clone(), 0, pow2.clone(), 7);
    assert_eq!(lam.truncate_at_level(-2).unwrap().levels, pow2[..3].to_vec());
    assert!(lam.truncate_at_level(-8).is_err());
}

#[test]
fn growth_examples() {
    let g = Arc::new(TwistedGroup::trivial());
    let ones = NovikovElt::new(g.clone(), 0, vec![GroupAlgebraElt::one(0); 41], 40);
    assert!(check_exponential_growth(&ones, &q(4, 1), &q(7, 10)));
    assert!(check_exponential_growth(&NovikovElt::zero(g.clone(), 40), &q(1, 1), &q(1, 1)));
    let mut f = BigInt::from(1);
    let fact: Vec<_> = (0..30)
        .map(|k| {
            if k > 0 {
                f *= k;
            }
            GroupAlgebraElt::integer(0, f.clone())
        })
        .collect();
    let lam = NovikovElt::new(g, 0, fact, 29);
    assert!(!check_exponential_growth(&lam, &q(2, 1), &q(1, 1)));
}

#[test]
fn type_l_power_iteration_oracle() {
    let g = Arc::new(TwistedGroup::identity_monodromy(1));
    let one = h(1, &[0], 1);
    let t = TypeLElement::new(g.clone(), g.identity(), vec![one.clone()], vec![vec![h(1, &[1], 1)]], vec![one], g.identity()).unwrap();
    let e = expand_type_l(&t, 12);
    for k in 0..=12 {
        assert_eq!(e.coeff(k).unwrap(), h(1, &[k], 1));
    }
}

#[test]
fn fibonacci_certificate() {
    let g = Arc::new(TwistedGroup::trivial());
    let one = GroupAlgebraElt::one(0);
    let zero = GroupAlgebraElt::zero(0);
    let t = TypeLElement::new(
        g.clone(),
        g.identity(),
        vec![one.clone(), zero.clone()],
        vec![vec![one.clone(), one.clone()], vec![one.clone(), zero.clone()]],
        vec![one, zero],
        g.identity(),
    )
    .unwrap();
    let c = growth_constants_for_type_l(&t);
    assert_eq!(c.n, BigInt::from(3));
    let e = expand_type_l(&t, 40);
    assert_eq!(e.to_laurent().unwrap(), LaurentSeries::new(0, fib(41), 40));
    assert!(check_exponential_growth(&e, &BigRational::from(c.a), &c.b));
}

fn fib(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(1), BigInt::from(1)];
    while v.len() < n {
        let k = v.len();
        let next = &v[k - 1] + &v[k - 2];
        v.push(next);
    }
    v.truncate(n);
    v
}

fn type_l() -> impl Strategy<Value = TypeLElement> {
    (0usize..5, 1usize..=3).prop_flat_map(|(gi, n)| {
        let phi = [vec![], vec![vec![1]], vec![vec![-1]], vec![vec![0, 1], vec![1, 0]], vec![vec![0, -1], vec![1, 0]]][gi].clone();
        let g = Arc::new(TwistedGroup::new(phi).unwrap());
        let m = g.m();
        let elt = move || (prop::collection::vec(-2i64..=2, m), -1i64..=1);
        (
            Just(g),
            prop::collection::vec(alg(m), n),
            prop::collection::vec(prop::collection::vec(alg(m), n), n),
            prop::collection::vec(alg(m), n),
            elt(),
            elt(),
        )
            .prop_map(|(g, y, a, x, (h1, j1), (h2, j2))| {
                TypeLElement::new(g, GroupElt { h: h1, j: j1 }, y, a, x, GroupElt { h: h2, j: j2 }).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn product_matches_group_law_oracle((g, a, b) in group_and_pair()) {
        let p = a.mul(&b).unwrap();
        let phi = g.phi().to_vec();
        let want = restrict(&zg_mul(&phi, &to_zg(&a), &to_zg(&b)), p.trunc());
        prop_assert_eq!(to_zg(&p), want);
    }

    #[test]
    fn associativity((g, a, b) in group_and_pair(), c in prop::collection::vec(alg(0), 0..3)) {
        let m = g.m();
        let c = NovikovElt::new(g.clone(), 1, c.into_iter().map(|x| GroupAlgebraElt::integer(m, x.augmentation())).collect(), 5);
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().is_zero());
    }

    #[test]
    fn submultiplicative((g, a, b) in group_and_pair()) {
        let m = g.m();
        let x = a.coeff(a.start()).unwrap_or_else(|| GroupAlgebraElt::zero(m));
        let y = b.coeff(b.start()).unwrap_or_else(|| GroupAlgebraElt::zero(m));
        prop_assert!(x.mul(&y).l1_norm() <= x.l1_norm() * y.l1_norm());
    }

    #[test]
    fn conjugation_is_automorphism(gi in 0usize..8, x in alg(2), y in alg(2)) {
        let phis = monodromies();
        let phi = if phis[gi].len() == 2 { phis[gi].clone() } else { vec![vec![1, 0], vec![0, 1]] };
        let g = TwistedGroup::new(phi).unwrap();
        let f = |z: &GroupAlgebraElt| conj_by_theta(&g, z, ConjDir::Fwd);
        prop_assert_eq!(f(&x.mul(&y)), f(&x).mul(&f(&y)));
        prop_assert_eq!(f(&x.add(&y)), f(&x).add(&f(&y)));
        prop_assert_eq!(conj_by_theta(&g, &f(&x), ConjDir::Inv), x);
    }

    #[test]
    fn trivial_group_is_laurent(a in (-2i64..2, prop::collection::vec(-9i64..=9, 0..6), 0i64..8),
                                b in (-2i64..2, prop::collection::vec(-9i64..=9, 0..6), 0i64..8)) {
        let sa = LaurentSeries::from_i64(a.0, &a.1, a.2);
        let sb = LaurentSeries::from_i64(b.0, &b.1, b.2);
        let (na, nb) = (NovikovElt::from_laurent(&sa), NovikovElt::from_laurent(&sb));
        prop_assert_eq!(na.add(&nb).unwrap().to_laurent().unwrap(), sa.add(&sb));
        prop_assert_eq!(na.sub(&nb).unwrap().to_laurent().unwrap(), sa.sub(&sb));
        prop_assert_eq!(na.mul(&nb).unwrap().to_laurent().unwrap(), sa.mul(&sb));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn type_l_certificate_holds_to_level_40(t in type_l()) {
        let c = growth_constants_for_type_l(&t);
        let e = expand_type_l(&t, 40 + 2);
        prop_assert!(e.trunc() >= 40);
        prop_assert!(check_exponential_growth(&e, &BigRational::from(c.a), &c.b));
    }
}
