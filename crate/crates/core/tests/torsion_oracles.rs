use num_bigint::BigInt;
use num_integer::Integer;
use selberg_core::polyalg::cyclotomic;
use selberg_core::torsion::{max_torsion_order, order_bounds, totient, totient_sqrt_sweep};

/// Largest lcm over sets of distinct m ≤ 200 with Σ φ(m) ≤ budget.
fn naive_max_order(budget: u64) -> u64 {
    let cands: Vec<(u64, u64)> = (1..=200u64)
        .map(|m| (m, totient(m).unwrap()))
        .filter(|&(_, p)| p <= budget)
        .collect();
    fn go(cands: &[(u64, u64)], i: usize, left: u64, l: u64, best: &mut u64) {
        *best = (*best).max(l);
        for j in i..cands.len() {
            let (m, p) = cands[j];
            if p <= left {
                go(cands, j + 1, left - p, l.lcm(&m), best);
            }
        }
    }
    let mut best = 1;
    go(&cands, 0, budget, 1, &mut best);
    best
}

type Mat = Vec<Vec<i128>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = vec![vec![0i128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn mat_pow(a: &Mat, e: u64) -> Mat {
    let n = a.len();
    let mut acc: Mat = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for _ in 0..e {
        acc = mat_mul(&acc, a);
    }
    acc
}

fn is_identity(a: &Mat) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as i128))
}

/// Block-diagonal companion matrices of Φ_m for each witness, padded with 1s.
fn witness_matrix(witness: &[u64], n: usize) -> Mat {
    let mut g = vec![vec![0i128; n]; n];
    let mut off = 0;
    for &m in witness {
        let phi = cyclotomic(m).unwrap();
        let c: Vec<i128> = phi.coeffs().iter().map(|x| x.to_string().parse().unwrap()).collect();
        let d = c.len() - 1;
        for i in 1..d {
            g[off + i][off + i - 1] = 1;
        }
        for i in 0..d {
            g[off + i][off + d - 1] = -c[i];
        }
        off += d;
    }
    for i in off..n {
        g[i][i] = 1;
    }
    g
}

#[test]
fn rational_orders_against_oracles() {
    let want = [2u64, 6, 6, 12, 12, 30];
    for n in 1..=6u32 {
        let prof = max_torsion_order(n, 1).unwrap();
        assert_eq!(prof.exact_max_order, BigInt::from(want[n as usize - 1]));
        assert_eq!(naive_max_order(n as u64), want[n as usize - 1], "n = {n}");
        let l = prof.witness_orders.iter().fold(1u64, |a, &m| a.lcm(&m));
        assert_eq!(BigInt::from(l), prof.exact_max_order);
        if n <= 4 {
            let g = witness_matrix(&prof.witness_orders, n as usize);
            assert!(is_identity(&mat_pow(&g, l)));
            for (q, _) in selberg_core::polyalg::primes::factor_u64(l) {
                assert!(!is_identity(&mat_pow(&g, l / q)), "n = {n}, q = {q}");
            }
        }
    }
}

#[test]
fn grid_against_naive_and_bounds() {
    for n in 1..=12u32 {
        for d in 1..=12u32 {
            if n * d > 12 {
                continue;
            }
            let prof = max_torsion_order(n, d).unwrap();
            assert_eq!(prof.exact_max_order, BigInt::from(naive_max_order((n * d) as u64)), "({n}, {d})");
            assert!(prof.witness_totient_sum <= (n * d) as u64);
            let sum: u64 = prof.witness_orders.iter().map(|&m| totient(m).unwrap()).sum();
            assert_eq!(sum, prof.witness_totient_sum);
            let mut sorted = prof.witness_orders.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), prof.witness_orders.len());
            let (stated, proof) = order_bounds(n, d).unwrap();
            assert!(prof.exact_max_order <= stated);
            assert!(prof.exact_max_order <= proof);
            assert!(prof.stated_holds && prof.proof_holds);
        }
    }
}

#[test]
fn monotone_in_n_and_d() {
    let mut last = BigInt::from(0);
    for n in 1..=32 {
        let o = max_torsion_order(n, 1).unwrap().exact_max_order;
        assert!(o >= last);
        last = o;
    }
    for n in 1..=4 {
        let mut last = BigInt::from(0);
        for d in 1..=16 {
            let o = max_torsion_order(n, d).unwrap().exact_max_order;
            assert!(o >= last);
            last = o;
        }
    }
}

#[test]
fn totient_sqrt_holds_to_a_million() {
    assert_eq!(totient_sqrt_sweep(1_000_000), None);
}
