use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn sylvester(f: &IntPolynomial, g: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // coefficients highest degree first
    let fc: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
    let gc: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + m + 1].clone_from_slice(&fc);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + n + 1].clone_from_slice(&gc);
        rows.push(row);
    }
    rows
}

/// Resultant `Res(f, g)` as the Sylvester determinant.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Ok(f.coeff(0).pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeff(0).pow(m as u32));
    }
    Ok(bareiss_determinant(sylvester(f, g)))
}

/// `disc(f) = (−1)^(d(d−1)/2) · Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative())?;
    let q = r / f.leading().unwrap();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::chebyshev::minpoly_two_cos;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(discriminant(&ip(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        assert_eq!(discriminant(&ip(&[-1, 1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&ip(&[-1, -2, 1, 1])).unwrap(), BigInt::from(49));
        assert_eq!(discriminant(&ip(&[0, 1])).unwrap(), BigInt::one());
        assert_eq!(discriminant(&ip(&[3])), Err(Error::ConstantPolynomial));
    }

    /// disc = lc^(2d−2) Π_{i<j} (r_i − r_j)² from numeric roots of a cubic
    /// with three real roots.
    #[test]
    fn cubic_root_product_oracle() {
        let roots: Vec<f64> = (1..=3)
            .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 7.0).cos())
            .collect();
        let mut prod = 1.0;
        for i in 0..3 {
            for j in i + 1..3 {
                prod *= (roots[i] - roots[j]).powi(2);
            }
        }
        assert_eq!(prod.round() as i64, 49);
        assert!((prod - 49.0).abs() < 1e-9);
        assert_eq!(discriminant(&minpoly_two_cos(7).unwrap()).unwrap(), BigInt::from(49));
    }

    #[test]
    fn non_monic_leading_coefficient() {
        // disc(ax² + bx + c) = b² − 4ac
        assert_eq!(discriminant(&ip(&[-1, 2, 4])).unwrap(), BigInt::from(20));
    }

    proptest! {
        #[test]
        fn quadratic_discriminant(b in -1000i64..1000, c in -1000i64..1000) {
            let d = discriminant(&ip(&[c, b, 1])).unwrap();
            prop_assert_eq!(d, BigInt::from(b * b - 4 * c));
        }
    }
}
