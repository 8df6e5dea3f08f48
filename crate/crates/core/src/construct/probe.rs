//! Exhaustive search for primitive zeros of `x² + y² − c·z²` modulo `2^k`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::FieldElement;

pub const MAX_PROBE_K: u32 = 20;
const MAX_CANDIDATES_LOG2: u32 = 30;
const MAX_SAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub k: u32,
    /// The form is multiplied by `2^scale` to clear the denominator of `c`.
    pub scale: u32,
    /// Number of `(x, y, z)` triples examined.
    pub candidates: u64,
    pub primitive_solutions: u64,
    /// Up to 16 solutions, each coordinate as power-basis coefficients
    /// modulo `2^k`.
    pub samples: Vec<[Vec<u64>; 3]>,
    /// Set when primitive solutions survive at `k > scale + 2`, beyond
    /// what the scaling alone can produce.
    pub potential_counterexample: bool,
}

struct Ring {
    k: u32,
    mask: u64,
    d: usize,
    /// Monic defining polynomial, lowest degree first, reduced mod `2^k`.
    f: Vec<u64>,
}

fn reduce_int(x: &BigInt, k: u32) -> u64 {
    x.mod_floor(&(BigInt::one() << k)).to_u64().unwrap()
}

impl Ring {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.d;
        let mut out = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = out[i + j].wrapping_add(x.wrapping_mul(y)) & self.mask;
            }
        }
        for i in (d..out.len()).rev() {
            let t = out[i];
            if t == 0 {
                continue;
            }
            out[i] = 0;
            for j in 0..d {
                out[i - d + j] = out[i - d + j].wrapping_sub(t.wrapping_mul(self.f[j])) & self.mask;
            }
        }
        out.truncate(d);
        out
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x.wrapping_add(*y) & self.mask).collect()
    }

    fn element(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.d];
        for c in v.iter_mut() {
            *c = idx & self.mask;
            idx >>= self.k;
        }
        v
    }

    fn key(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0u64, |acc, &c| (acc << self.k) | c)
    }
}

fn is_primitive(v: &[u64]) -> bool {
    v.iter().any(|c| c & 1 == 1)
}

/// Searches `O/2^k`, with `O = Z[θ]`, for triples not all divisible by 2
/// satisfying `2^s(x² + y²) ≡ c'·z²`, where `c = c'/2^s`.
pub fn mod2k_isotropy_probe(c: &FieldElement, k: u32) -> Result<ProbeReport> {
    if c.is_zero() {
        return Err(Error::ZeroElement);
    }
    if k == 0 || k > MAX_PROBE_K {
        return Err(Error::CapExceeded(format!("probe k must be in 1..={MAX_PROBE_K}, got {k}")));
    }
    let field = c.field();
    let d = field.degree();
    let log2_n = k as u128 * d as u128;
    if 3 * log2_n > MAX_CANDIDATES_LOG2 as u128 {
        return Err(Error::SearchSpace(1u128.checked_shl((3 * log2_n) as u32).unwrap_or(u128::MAX)));
    }

    let den = c.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = den.trailing_zeros().unwrap_or(0) as u32;
    if den != BigInt::one() << scale {
        return Err(Error::InvalidInput("c must have a power-of-two denominator".into()));
    }
    let f = field.defining_poly().coeffs().iter().map(|x| reduce_int(x, k)).collect();
    let ring = Ring { k, mask: (1u64 << k) - 1, d, f };
    let c_scaled: Vec<u64> = c
        .coeffs()
        .iter()
        .map(|q| reduce_int(&(q.numer() * (&den / q.denom())), k))
        .collect();
    let two_s: Vec<u64> = {
        let mut v = vec![0u64; d];
        v[0] = if scale >= k { 0 } else { 1u64 << scale };
        v
    };

    let n = 1u64 << log2_n;
    // value of 2^s(x² + y²) → list of (x, y)
    let mut table: HashMap<u64, Vec<(u32, u32)>> = HashMap::new();
    let squares: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let e = ring.element(i);
            ring.mul(&e, &e)
        })
        .collect();
    for x in 0..n {
        for y in 0..n {
            let s = ring.add(&squares[x as usize], &squares[y as usize]);
            let v = ring.mul(&two_s, &s);
            table.entry(ring.key(&v)).or_default().push((x as u32, y as u32));
        }
    }
    let mut count = 0u64;
    let mut samples = Vec::new();
    for z in 0..n {
        let ze = ring.element(z);
        let rhs = ring.mul(&c_scaled, &squares[z as usize]);
        let Some(pairs) = table.get(&ring.key(&rhs)) else {
            continue;
        };
        let z_prim = is_primitive(&ze);
        for &(x, y) in pairs {
            let (xe, ye) = (ring.element(x as u64), ring.element(y as u64));
            if z_prim || is_primitive(&xe) || is_primitive(&ye) {
                count += 1;
                if samples.len() < MAX_SAMPLES {
                    samples.push([xe, ye, ze.clone()]);
                }
            }
        }
    }
    Ok(ProbeReport {
        k,
        scale,
        candidates: n * n * n,
        primitive_solutions: count,
        samples,
        potential_counterexample: count > 0 && k > scale + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{make_field, two_cos_field};
    use crate::polyalg::IntPolynomial;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn rational_field() -> Arc<crate::numfield::NumberField> {
        Arc::new(make_field(&IntPolynomial::from_i64s(&[0, 1])).unwrap())
    }

    /// Direct enumeration over Z/8.
    fn brute(c: i64) -> u64 {
        let mut n = 0;
        for x in 0..8i64 {
            for y in 0..8 {
                for z in 0..8 {
                    if (x | y | z) & 1 == 1 && (x * x + y * y - c * z * z).rem_euclid(8) == 0 {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn rational_examples() {
        let q = rational_field();
        for c in [1i64, 3, 7, 2, 5] {
            let r = mod2k_isotropy_probe(&FieldElement::from_integers(&q, &[c]), 3).unwrap();
            assert_eq!(r.primitive_solutions, brute(c), "c = {c}");
            assert_eq!(r.candidates, 512);
        }
        assert_eq!(brute(3), 0);
        assert_eq!(brute(7), 0);
        let r = mod2k_isotropy_probe(&FieldElement::from_integers(&q, &[1]), 3).unwrap();
        assert!(r.samples.contains(&[vec![1], vec![0], vec![1]]));
    }

    #[test]
    fn guards() {
        let q = rational_field();
        assert!(mod2k_isotropy_probe(&FieldElement::zero(&q), 3).is_err());
        assert!(mod2k_isotropy_probe(&FieldElement::from_integers(&q, &[3]), 21).is_err());
        let k = Arc::new(two_cos_field(7).unwrap());
        let c = FieldElement::from_integers(&k, &[1, 1]);
        assert!(matches!(mod2k_isotropy_probe(&c, 4), Err(Error::SearchSpace(_))));
        let half = FieldElement::from_rational(&q, BigRational::new(1.into(), 3.into()));
        assert!(mod2k_isotropy_probe(&half, 3).is_err());
    }

    #[test]
    fn scaled_form() {
        let q = rational_field();
        // c = 3/2: 2(x² + y²) ≡ 3z² (mod 8)
        let c = FieldElement::from_rational(&q, BigRational::new(3.into(), 2.into()));
        let r = mod2k_isotropy_probe(&c, 3).unwrap();
        assert_eq!(r.scale, 1);
        let mut want = 0;
        for x in 0..8i64 {
            for y in 0..8 {
                for z in 0..8 {
                    if (x | y | z) & 1 == 1 && (2 * (x * x + y * y) - 3 * z * z).rem_euclid(8) == 0 {
                        want += 1;
                    }
                }
            }
        }
        assert_eq!(r.primitive_solutions, want);
    }
}
