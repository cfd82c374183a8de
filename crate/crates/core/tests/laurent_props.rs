use num_bigint::BigInt;
use novikov_core::laurent::*;
use proptest::prelude::*;

// Oracle: det(1 - At) by the Leibniz expansion over i128 polynomials.
fn leibniz_det_one_minus_at(a: &[Vec<i64>]) -> Vec<i128> {
    let n = a.len();
    let entry = |i: usize, j: usize| -> Vec<i128> {
        let d = if i == j { 1 } else { 0 };
        vec![d, -(a[i][j] as i128)]
    };
    let mut total = vec![0i128; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let sign = perm_sign(p);
        let mut prod = vec![1i128];
        for (i, &j) in p.iter().enumerate() {
            prod = poly_mul(&prod, &entry(i, j));
        }
        for (k, c) in prod.iter().enumerate() {
            total[k] += sign * c;
        }
    });
    while total.len() > 1 && *total.last().unwrap() == 0 {
        total.pop();
    }
    total
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn perm_sign(p: &[usize]) -> i128 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

// Oracle: λ(A^k p) by plain i128 iteration.
fn direct_pairings(a: &[Vec<i64>], p: &[i64], lam: &[i64], order: usize) -> Vec<BigInt> {
    let n = a.len();
    let mut v: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
    let mut out = Vec::new();
    for _ in 0..=order {
        out.push(lam.iter().zip(&v).map(|(l, x)| BigInt::from(*l) * x).sum());
        v = (0..n).map(|i| (0..n).map(|j| BigInt::from(a[i][j]) * &v[j]).sum()).collect();
    }
    out
}

fn to_matrix(a: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn instance() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), n),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(-3i64..=3, n),
        )
    })
}

fn series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..3, prop::collection::vec(-20i64..=20, 0..8), 0i64..10)
        .prop_map(|(e, c, t)| LaurentSeries::from_i64(e, &c, t))
}

fn rational() -> impl Strategy<Value = RationalFn> {
    (
        0u32..3,
        prop::collection::vec(-5i64..=5, 0..4),
        prop::collection::vec(-3i64..=3, 0..4),
    )
        .prop_map(|(m, p, q)| {
            let mut den = vec![1];
            den.extend(q);
            RationalFn::from_i64(m, &p, &den).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cramer_matches_iteration_and_leibniz((a, p, lam) in instance()) {
        let m = to_matrix(&a);
        let (pv, lv) = (IntVector::from_i64(&p), IntCovector::from_i64(&lam));
        let f = cramer_fraction(&m, &pv, &lv).unwrap();
        let det: Vec<BigInt> = leibniz_det_one_minus_at(&a).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(f.det.clone(), Poly::new(det));
        let want = LaurentSeries::new(0, direct_pairings(&a, &p, &lam, 50), 50);
        prop_assert_eq!(f.expand(50), want.clone());
        let r = f.reduced();
        prop_assert_eq!(r.expand(50), want);
        prop_assert!(r.den().constant_term() == BigInt::from(1));
        prop_assert!(f.det.div_poly_exact(r.den()).is_some());
    }

    #[test]
    fn ring_axioms_on_truncations(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.add(&b).add(&c).agrees_with(&a.add(&b.add(&c))));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn add_trunc_is_min(a in series(), b in series()) {
        prop_assert_eq!(a.add(&b).trunc(), a.trunc().min(b.trunc()));
    }

    #[test]
    fn rational_round_trip(r in rational()) {
        let start = if r.shift_m() > 0 { -(r.shift_m() as i64) } else { r.num().t_adic_valuation().unwrap_or(0) as i64 };
        let dq = r.den().degree().unwrap_or(0) as i64;
        let dp = r.num().degree().map_or(0, |d| d as i64 - start.max(0) + 1);
        let n = start + 2 * dq.max(dp) + 2;
        prop_assert_eq!(reconstruct_rational(&r.expand(n)).unwrap(), r);
    }

    #[test]
    fn reconstruction_never_unverified(c in prop::collection::vec(-9i64..=9, 3..12)) {
        let s = LaurentSeries::from_i64(0, &c, c.len() as i64 - 1);
        if let Ok(r) = reconstruct_rational(&s) {
            prop_assert!(r.expand(s.trunc()).agrees_with(&s));
        }
    }
}
