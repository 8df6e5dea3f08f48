//! Chebyshev polynomials, cyclotomic polynomials and the minimal
//! polynomials of `cos(2π/p)` and `2cos(2π/p)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use super::primes::is_prime;
use crate::error::{Error, Result};

/// `T_n` with `T_n(cos θ) = cos(nθ)`, via `T_{k+1} = 2x·T_k − T_{k−1}`.
pub fn chebyshev_t(n: u32) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Domain("chebyshev_t needs n >= 1".into()));
    }
    let two_x = IntPolynomial::from_i64s(&[0, 2]);
    let mut prev = IntPolynomial::one();
    let mut cur = IntPolynomial::x();
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Monic `D_k(y)` with `D_k(z + 1/z) = z^k + z^{-k}`.
fn lucas_sum(k: usize) -> IntPolynomial {
    let y = IntPolynomial::x();
    let mut prev = IntPolynomial::constant(BigInt::from(2));
    let mut cur = y.clone();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&y * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The n-th cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic needs n >= 1".into()));
    }
    // Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d
    let mut f = IntPolynomial::monomial(BigInt::one(), n as usize);
    f = &f - &IntPolynomial::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = f.div_rem_monic(&cyclotomic(d)?);
            debug_assert!(r.is_zero());
            f = q;
        }
    }
    Ok(f)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(format!("{p} (odd prime required)")));
    }
    Ok(())
}

/// Monic minimal polynomial of `2cos(2π/p)` over Q, of degree `(p−1)/2`.
///
/// Obtained from `Φ_p(z) = z^m · Ψ(z + 1/z)` with `m = (p−1)/2`: the
/// palindromic sum `Σ_{|k|≤m} z^k` equals `1 + Σ_{k=1}^m D_k(z + 1/z)`.
pub fn minpoly_two_cos(p: u64) -> Result<IntPolynomial> {
    check_odd_prime(p)?;
    let m = ((p - 1) / 2) as usize;
    let mut psi = IntPolynomial::one();
    for k in 1..=m {
        psi = &psi + &lucas_sum(k);
    }
    Ok(psi)
}

/// Minimal polynomial of `cos(2π/p)` with coprime integer coefficients and
/// positive leading coefficient, which is a power of two.
pub fn minpoly_cos(p: u64) -> Result<IntPolynomial> {
    let f = minpoly_two_cos(p)?.scale_variable(&BigInt::from(2)).primitive_part();
    let lead = f.leading().expect("nonzero").clone();
    if !is_power_of_two(&lead) {
        return Err(Error::InvalidInput(format!(
            "leading coefficient {lead} is not a power of two"
        )));
    }
    Ok(f)
}

pub fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev_t(1).unwrap(), p(&[0, 1]));
        assert_eq!(chebyshev_t(2).unwrap(), p(&[-1, 0, 2]));
        assert!(chebyshev_t(0).is_err());
    }

    /// Independent expansion of T_5 from cos(5θ) = Re (cos θ + i sin θ)^5
    /// with sin²θ = 1 − cos²θ.
    #[test]
    fn chebyshev_t5_matches_binomial_expansion() {
        let c = IntPolynomial::x();
        let s2 = p(&[1, 0, -1]);
        // Re(c + i s)^5 = c^5 − 10 c^3 s^2 + 5 c s^4
        let expected = &(&c.pow(5) - &(&c.pow(3) * &s2).scale(&BigInt::from(10)))
            + &(&c * &s2.pow(2)).scale(&BigInt::from(5));
        assert_eq!(expected, p(&[0, 5, 0, -20, 0, 16]));
        assert_eq!(chebyshev_t(5).unwrap(), expected);
    }

    #[test]
    fn minpoly_two_cos_examples() {
        assert_eq!(minpoly_two_cos(3).unwrap(), p(&[1, 1]));
        assert_eq!(minpoly_two_cos(5).unwrap(), p(&[-1, 1, 1]));
        assert_eq!(minpoly_two_cos(7).unwrap(), p(&[-1, -2, 1, 1]));
        assert!(minpoly_two_cos(9).is_err());
        assert!(minpoly_two_cos(2).is_err());
    }

    #[test]
    fn minpoly_cos_examples() {
        assert_eq!(minpoly_cos(3).unwrap(), p(&[1, 2]));
        assert_eq!(minpoly_cos(5).unwrap(), p(&[-1, 2, 4]));
        assert_eq!(minpoly_cos(7).unwrap(), p(&[-1, -4, 4, 8]));
    }

    /// The numeric roots of the returned polynomials are the expected
    /// cosines.
    #[test]
    fn minpoly_numeric_roots() {
        for (q, two) in [(5u64, 0.618_033_988_749_894_9), (7, 1.246_979_603_717_467)] {
            let f = minpoly_two_cos(q).unwrap();
            let r = 2.0 * (2.0 * std::f64::consts::PI / q as f64).cos();
            assert!((r - two).abs() < 1e-10);
            assert!(f.eval_f64(r).abs() < 1e-10);
            let g = minpoly_cos(q).unwrap();
            assert!(g.eval_f64(r / 2.0).abs() < 1e-10);
        }
    }

    /// z^m · Ψ(z + 1/z) = Φ_p(z), computed as Σ ψ_j (z²+1)^j z^(m−j).
    #[test]
    fn cyclotomic_rewrite_identity() {
        for q in [3u64, 5, 7, 11, 13, 17] {
            let psi = minpoly_two_cos(q).unwrap();
            let m = ((q - 1) / 2) as usize;
            let z2p1 = p(&[1, 0, 1]);
            let mut acc = IntPolynomial::zero();
            for (j, c) in psi.coeffs().iter().enumerate() {
                let term = &z2p1.pow(j as u32) * &IntPolynomial::monomial(c.clone(), m - j);
                acc = &acc + &term;
            }
            assert_eq!(acc, cyclotomic(q).unwrap(), "p = {q}");
        }
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
    }
}
