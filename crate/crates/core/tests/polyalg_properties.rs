use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use selberg_core::polyalg::{
    chebyshev_t, count_real_roots, factor_mod_p, is_power_of_two, isolate_real_roots, minpoly_cos,
    minpoly_two_cos, primes_up_to, IntPolynomial, PolyModP,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn to_f64(x: &BigRational) -> f64 {
    x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chebyshev_matches_cosine(n in 1u32..=50, num in -1000i64..=1000) {
        let x = q(num, 1000);
        let t = chebyshev_t(n).unwrap();
        let got = to_f64(&t.eval(&x));
        let want = (n as f64 * to_f64(&x).acos()).cos();
        prop_assert!((got - want).abs() < 1e-9, "n = {}, x = {}", n, x);
    }
}

#[test]
fn minimal_polynomials_up_to_100() {
    for p in primes_up_to(100).into_iter().filter(|&p| p > 2) {
        let f = minpoly_two_cos(p).unwrap();
        assert_eq!(f.degree().unwrap() as u64, (p - 1) / 2);
        assert!(f.is_monic());
        assert!(f.rational_root().is_none_or(|r| r.is_none()) || p == 3);
        // irreducible modulo some small prime, or linear
        let irreducible_somewhere = f.degree() == Some(1)
            || primes_up_to(2000).into_iter().any(|l| {
                l != p && factor_mod_p(&f, l).is_ok_and(|fac| fac.factors.len() == 1 && fac.factors[0].1 == 1)
            });
        let g = minpoly_cos(p).unwrap();
        assert!(is_power_of_two(g.leading().unwrap()), "p = {p}");
        assert_eq!(g.content(), BigInt::from(1));
        // 2cos(2π/p) is a root numerically
        let r = 2.0 * (2.0 * std::f64::consts::PI / p as f64).cos();
        assert!(f.eval_f64(r).abs() < 1e-6 * (1u64 << ((p - 1) / 2).min(40)) as f64);
        // Galois group is cyclic; some prime is inert exactly when it generates (Z/p)*/{±1}
        assert!(irreducible_somewhere, "p = {p}");
    }
}

fn exhaustive_roots(f: &IntPolynomial, p: u64) -> usize {
    let fp = PolyModP::from_int(f, p);
    (0..p)
        .filter(|&x| {
            let v = fp.coeffs().iter().rev().fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p as u128);
            v == 0
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn factorization_multiplies_back(
        coeffs in proptest::collection::vec(-100i64..100, 2..=9),
        pi in 0usize..25,
    ) {
        let p = primes_up_to(97)[pi];
        let f = IntPolynomial::from_i64s(&coeffs);
        let fp = PolyModP::from_int(&f, p);
        prop_assume!(!fp.is_zero());
        let fac = factor_mod_p(&f, p).unwrap();
        prop_assert_eq!(fac.product(), fp);
        // distinct linear factors = distinct roots
        let linear = fac.factors.iter().filter(|(g, _)| g.degree() == Some(1)).count();
        prop_assert_eq!(linear, exhaustive_roots(&f, p));
        for (g, _) in &fac.factors {
            prop_assert_eq!(g.leading(), 1);
        }
    }

    #[test]
    fn isolation_agrees_with_sturm(coeffs in proptest::collection::vec(-30i64..30, 2..=8)) {
        let f = IntPolynomial::from_i64s(&coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let sf = f.primitive_part();
        prop_assume!(sf.is_squarefree());
        let prec = q(1, 1 << 12);
        let ivs = isolate_real_roots(&sf, &prec).unwrap();
        prop_assert_eq!(ivs.len(), count_real_roots(&sf));
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for iv in &ivs {
            prop_assert!(iv.width() <= prec);
            if !iv.is_exact() {
                prop_assert!(sf.sign_at(&iv.lo) * sf.sign_at(&iv.hi) < 0);
            }
        }
    }
}

#[test]
fn isolation_examples() {
    let ivs = isolate_real_roots(&minpoly_two_cos(7).unwrap(), &q(1, 1_000_000)).unwrap();
    assert_eq!(ivs.len(), 3);
    let mut want: Vec<f64> = (1..=3).map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 7.0).cos()).collect();
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (iv, w) in ivs.iter().zip(want) {
        assert!(to_f64(&iv.lo) <= w + 1e-12 && w - 1e-12 <= to_f64(&iv.hi));
    }
    assert!(isolate_real_roots(&IntPolynomial::from_i64s(&[1, 0, 1]), &q(1, 8)).unwrap().is_empty());
}
