use num_bigint::BigInt;
use selberg_core::numfield::{count_prime_ideals, make_field, two_cos_field, NumberField};
use selberg_core::polyalg::{primes_up_to, IntPolynomial};
use selberg_core::selberg::{find_congruence_level, grh_report_for_field, grh_threshold, kionke_criterion};
use selberg_core::Config;

/// Order of q in (Z/p)* modulo ±1.
fn order_mod_pm1(q: u64, p: u64) -> u64 {
    let mut x = q % p;
    let mut f = 1;
    while x != 1 && x != p - 1 {
        x = x * (q % p) % p;
        f += 1;
    }
    f
}

/// Splitting in Q(2cos 2π/p) from the cyclotomic description.
fn two_cos_oracle(p: u64) -> u64 {
    let m = (p - 1) / 2;
    let mut best = u64::MAX;
    for q in primes_up_to(200) {
        let (e, f) = if q == p { (m, 1) } else { (1, order_mod_pm1(q, p)) };
        if e + 2 <= q {
            let norm = q.pow(f as u32);
            best = best.min(norm);
        }
    }
    best
}

/// Q(√2): 2 ramifies, odd q splits iff q ≡ ±1 (mod 8), else inert.
fn sqrt_two_oracle() -> u64 {
    let mut best = u64::MAX;
    for q in primes_up_to(200) {
        let (e, f) = if q == 2 { (2, 1) } else if q % 8 == 1 || q % 8 == 7 { (1, 1) } else { (1, 2) };
        if e + 2 <= q {
            best = best.min(q.pow(f));
        }
    }
    best
}

fn test_fields() -> Vec<NumberField> {
    let mut v = vec![
        make_field(&IntPolynomial::from_i64s(&[0, 1])).unwrap(),
        make_field(&IntPolynomial::from_i64s(&[-2, 0, 1])).unwrap(),
    ];
    for p in [5, 7, 11, 13] {
        v.push(two_cos_field(p).unwrap());
    }
    v
}

#[test]
fn levels_match_splitting_oracles() {
    let q = make_field(&IntPolynomial::from_i64s(&[0, 1])).unwrap();
    let l = find_congruence_level(&q, 3, 1_000_000, 1).unwrap();
    assert_eq!((l.q, l.index_bound.clone()), (3, BigInt::from(27)));
    assert!(!kionke_criterion(2, 1).unwrap());

    let s2 = make_field(&IntPolynomial::from_i64s(&[-2, 0, 1])).unwrap();
    let l = find_congruence_level(&s2, 3, 1_000_000, 1).unwrap();
    assert_eq!(l.norm, BigInt::from(sqrt_two_oracle()));

    for p in [5u64, 7, 11, 13] {
        let k = two_cos_field(p).unwrap();
        let l = find_congruence_level(&k, 3, 1_000_000, 1).unwrap();
        assert_eq!(l.norm, BigInt::from(two_cos_oracle(p)), "p = {p}");
        assert_eq!(l.q, p);
        assert_eq!((l.e as u64, l.f), ((p - 1) / 2, 1));
    }
}

#[test]
fn level_invariants() {
    for k in test_fields() {
        for dim_g in [1u32, 3, 8] {
            let l = find_congruence_level(&k, dim_g, 1_000_000, 2).unwrap();
            assert_eq!(l.norm, BigInt::from(l.q).pow(l.f as u32));
            assert!(l.torsion_free_certificate);
            assert!(kionke_criterion(l.q, l.e).unwrap());
            assert!((l.e as u64) + 2 <= l.q);
            assert_eq!(l.index_bound, l.norm.pow(dim_g));
        }
    }
}

#[test]
fn found_norm_below_threshold() {
    let cfg = Config::default();
    for k in test_fields() {
        let (report, level) = grh_report_for_field(&k, 3, &cfg, 1).unwrap();
        assert!(level.norm <= report.threshold_x);
        assert_eq!(report.smallest_actual_prime_norm, Some(level.norm.clone()));
        let d = k.degree() as u64;
        let x: u64 = report.threshold_x.clone().try_into().unwrap();
        // monotone count, so a smaller x suffices
        let c = count_prime_ideals(&k, x.min(10_000)).unwrap();
        assert!(c.count > d * d);
        assert!(report.li_at_threshold > report.err_at_threshold + (d * d) as f64);
    }
}

#[test]
fn rational_unconditional_not_better() {
    let q = make_field(&IntPolynomial::from_i64s(&[0, 1])).unwrap();
    for dim in 1..=10u32 {
        let l = find_congruence_level(&q, dim, 1000, 1).unwrap();
        assert!(selberg_core::selberg::unconditional_index_bound(1, dim).unwrap() >= l.index_bound);
    }
}

#[test]
fn threshold_overflow_is_reported() {
    let r = grh_threshold(1, 1e30, &Config::default());
    assert_eq!(r, Err(selberg_core::Error::Overflow));
}
