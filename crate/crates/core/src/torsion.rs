//! Orders of torsion elements in `GL_n(k)` and finite subgroup bounds.
//!
//! An element of finite order `ℓ` in `GL_n(k)`, `[k:Q] = d`, has
//! eigenvalues that are roots of unity of orders `m_i` with
//! `ℓ = lcm(m_i)` and `Σ φ(m_i) ≤ n·d` over distinct `m_i`. The search
//! here maximises `lcm` under that degree budget; for `d = 1` the budget is
//! exact, for `d > 1` it bounds every field of degree `d`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::polyalg::primes::factor_u64;
use crate::polyalg::primes_up_to;
use crate::serde_util::bigint_string;

/// Largest `n·d` accepted by [`max_torsion_order`].
pub const MAX_BUDGET: u64 = 64;

pub fn totient(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("totient of 0".into()));
    }
    Ok(factor_u64(m)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1)))
}

/// `φ(0..=n)` by sieve; entry 0 is 0.
pub fn totient_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProfile {
    pub n: u32,
    pub d: u32,
    #[serde(with = "bigint_string")]
    pub exact_max_order: BigInt,
    /// Distinct orders `m_i`, ascending, with `lcm = exact_max_order`.
    pub witness_orders: Vec<u64>,
    pub witness_totient_sum: u64,
    /// `2(nd)^{2n}`.
    #[serde(with = "bigint_string")]
    pub stated_bound: BigInt,
    /// `4(nd)^{2n}`.
    #[serde(with = "bigint_string")]
    pub proof_bound: BigInt,
    pub stated_holds: bool,
    pub proof_holds: bool,
}

/// `(2(nd)^{2n}, 4(nd)^{2n})`.
pub fn order_bounds(n: u32, d: u32) -> Result<(BigInt, BigInt)> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be >= 1".into()));
    }
    let base = BigInt::from(n as u64 * d as u64).pow(2 * n);
    Ok((&base * 2, &base * 4))
}

#[derive(Clone, Debug)]
struct Best {
    order: u128,
    cost: u64,
    parts: Vec<u64>,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        (self.order, std::cmp::Reverse(self.cost), std::cmp::Reverse(&self.parts))
            > (other.order, std::cmp::Reverse(other.cost), std::cmp::Reverse(&other.parts))
    }
}

/// Completes a choice of odd prime powers with the best power of 2.
///
/// A factor `2` is free when an odd part exists (`φ(2m) = φ(m)` for odd
/// `m`), costs 1 on its own, and `2^k` costs `2^{k−1}` for `k ≥ 2`.
fn close_with_two(odd: &[u64], odd_order: u128, odd_cost: u64, budget: u64, best: &mut Best) {
    let mut try_part = |order: u128, cost: u64, parts: Vec<u64>| {
        let mut parts = parts;
        parts.sort_unstable();
        let cand = Best { order, cost, parts };
        if cand.better_than(best) {
            *best = cand;
        }
    };
    try_part(odd_order, odd_cost, odd.to_vec());
    if odd.is_empty() {
        if budget >= 1 {
            try_part(2, 1, vec![2]);
        }
    } else {
        // merge 2 into the smallest odd part
        let mut parts = odd.to_vec();
        let i = (0..parts.len()).min_by_key(|&i| parts[i]).unwrap();
        parts[i] *= 2;
        try_part(odd_order * 2, odd_cost, parts);
    }
    let mut k = 2;
    while (1u64 << (k - 1)) + odd_cost <= budget {
        let mut parts = odd.to_vec();
        parts.push(1u64 << k);
        try_part(odd_order << k, odd_cost + (1u64 << (k - 1)), parts);
        k += 1;
    }
}

fn dfs(
    primes: &[u64],
    idx: usize,
    budget: u64,
    chosen: &mut Vec<u64>,
    order: u128,
    cost: u64,
    best: &mut Best,
) {
    close_with_two(chosen, order, cost, budget, best);
    for (j, &p) in primes.iter().enumerate().skip(idx) {
        if cost + p - 1 > budget {
            break;
        }
        let mut pk = p;
        let mut phi = p - 1;
        while cost + phi <= budget {
            chosen.push(pk);
            dfs(primes, j + 1, budget, chosen, order * pk as u128, cost + phi, best);
            chosen.pop();
            pk *= p;
            phi *= p;
        }
    }
}

/// Maximal `lcm(m_i)` over distinct `m_i` with `Σ φ(m_i) ≤ n·d`.
///
/// Ties in the order are broken by smaller `Σ φ`, then by the
/// lexicographically smaller witness.
pub fn max_torsion_order(n: u32, d: u32) -> Result<TorsionProfile> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be >= 1".into()));
    }
    let budget = n as u64 * d as u64;
    if budget > MAX_BUDGET {
        return Err(Error::CapExceeded(format!("n*d = {budget} exceeds {MAX_BUDGET}")));
    }
    let odd_primes: Vec<u64> = primes_up_to(budget + 1).into_iter().filter(|&p| p > 2).collect();
    let mut best = Best { order: 1, cost: 0, parts: vec![] };
    dfs(&odd_primes, 0, budget, &mut Vec::new(), 1, 0, &mut best);
    let witness_totient_sum = best.parts.iter().map(|&m| totient(m).unwrap()).sum();
    let (stated, proof) = order_bounds(n, d)?;
    let exact = BigInt::from(best.order);
    Ok(TorsionProfile {
        n,
        d,
        stated_holds: exact <= stated,
        proof_holds: exact <= proof,
        exact_max_order: exact,
        witness_orders: best.parts,
        witness_totient_sum,
        stated_bound: stated,
        proof_bound: proof,
    })
}

/// `φ(ℓ) ≥ √(ℓ/2)`, decided exactly as `2φ(ℓ)² ≥ ℓ`.
pub fn totient_sqrt_inequality(l: u64) -> Result<bool> {
    let phi = totient(l)? as u128;
    Ok(2 * phi * phi >= l as u128)
}

/// Smallest `ℓ ≤ limit` violating [`totient_sqrt_inequality`], if any.
pub fn totient_sqrt_sweep(limit: u64) -> Option<u64> {
    let phi = totient_table(limit as usize);
    (1..=limit).find(|&l| {
        let p = phi[l as usize] as u128;
        2 * p * p < l as u128
    })
}

fn check_volume(v: f64) -> Result<()> {
    if v.is_finite() && v > std::f64::consts::E {
        Ok(())
    } else {
        Err(Error::Domain(format!("v must exceed e, got {v}")))
    }
}

/// `c1·(log v)^{c2}`.
pub fn torsion_order_volume_bound(v: f64, c1: f64, c2: f64) -> Result<f64> {
    check_volume(v)?;
    Ok(c1 * v.ln().powf(c2))
}

/// `jordan_index · (c1·(log v)^{c2})^n`.
pub fn finite_subgroup_bound(v: f64, n: u32, jordan_index: f64, c1: f64, c2: f64) -> Result<f64> {
    if jordan_index < 1.0 {
        return Err(Error::InvalidInput("jordan index must be >= 1".into()));
    }
    let out = jordan_index * torsion_order_volume_bound(v, c1, c2)?.powi(n as i32);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow)
    }
}

/// Constants `(c1, c2)` of the bound `ℓ ≤ c1 (log v)^{c2}` for lattices in
/// a group embedded in `GL_s`.
///
/// From `ℓ ≤ 2(s·d)^{2s}` and `d ≤ prasad_c2 · log v`:
/// `c1 = 2(s·prasad_c2)^{2s}`, `c2 = 2s`.
pub fn order_volume_constants(s: u32, config: &Config) -> (f64, f64) {
    let s_f = s as f64;
    (2.0 * (s_f * config.prasad_c2).powf(2.0 * s_f), 2.0 * s_f)
}
