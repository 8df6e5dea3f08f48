use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{dedekind_index_divisible, NumberField};
use crate::error::Result;
use crate::polyalg::modp::factor_mod_p;
use crate::polyalg::primes_up_to;

/// Factorization type of a rational prime: one `(e, f)` pair per prime
/// ideal above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeSplit {
    pub prime: u64,
    pub factors: Vec<(usize, usize)>,
    /// True when the prime may divide `[O_K : Z[θ]]`; the factors then
    /// describe `Z[θ]` and not necessarily `O_K`.
    pub index_divisible: bool,
}

impl PrimeSplit {
    pub fn sum_ef(&self) -> usize {
        self.factors.iter().map(|(e, f)| e * f).sum()
    }
}

pub fn dedekind_split(k: &NumberField, p: u64) -> Result<PrimeSplit> {
    NumberField::check_prime(p)?;
    let f = k.defining_poly();
    let fac = factor_mod_p(f, p)?;
    let mut factors: Vec<(usize, usize)> = fac
        .factors
        .iter()
        .map(|(t, e)| (*e, t.degree().unwrap_or(0)))
        .collect();
    factors.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let p2 = BigInt::from(p) * BigInt::from(p);
    let index_divisible =
        k.disc_poly().mod_floor(&p2).is_zero() && dedekind_index_divisible(f, p)?;
    Ok(PrimeSplit { prime: p, factors, index_divisible })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdealCount {
    pub x: u64,
    /// Prime ideals of norm at most `x` over reliably split primes.
    pub count: u64,
    /// Rational primes `≤ x` skipped because they may divide the index.
    pub skipped_primes: Vec<u64>,
}

/// Number of prime ideals of norm at most `x`.
pub fn count_prime_ideals(k: &NumberField, x: u64) -> Result<PrimeIdealCount> {
    let mut out = PrimeIdealCount { x, count: 0, skipped_primes: Vec::new() };
    if x < 2 {
        return Ok(out);
    }
    for p in primes_up_to(x) {
        if k.degree() == 1 {
            out.count += 1;
            continue;
        }
        let s = dedekind_split(k, p)?;
        if s.index_divisible {
            out.skipped_primes.push(p);
            continue;
        }
        for &(_, f) in &s.factors {
            if norm_at_most(p, f, x) {
                out.count += 1;
            }
        }
    }
    Ok(out)
}

fn norm_at_most(p: u64, f: usize, x: u64) -> bool {
    let mut n: u128 = 1;
    for _ in 0..f {
        n *= p as u128;
        if n > x as u128 {
            return false;
        }
    }
    true
}
