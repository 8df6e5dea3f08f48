//! p-adic Newton polygons.
//!
//! Orientation: a segment reported with valuation `s` and length `ℓ`
//! means exactly `ℓ` roots (with multiplicity, in an algebraic closure of
//! `Q_p`) have p-adic valuation `s`, normalised so that `v_p(p) = 1`.
//! Segments are listed by strictly increasing valuation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::poly::IntPolynomial;
use super::primes::is_prime;
use crate::error::{Error, Result};
use crate::serde_util::{bigint_string, rational_string};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// Valuation of the roots this segment accounts for.
    #[serde(with = "rational_string")]
    pub valuation: BigRational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    #[serde(with = "bigint_string")]
    pub prime: BigInt,
    /// Hull vertices `(index, v_p(a_index))`, increasing index.
    pub vertices: Vec<(usize, i64)>,
    pub slopes: Vec<Segment>,
    /// Roots equal to zero (from vanishing low coefficients).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.slopes.iter().map(|s| s.length).sum()
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, p: &BigInt) -> i64 {
    assert!(!x.is_zero());
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

pub fn valuation_rat(x: &BigRational, p: &BigInt) -> i64 {
    valuation(x.numer(), p) - valuation(x.denom(), p)
}

pub fn newton_polygon(f: &IntPolynomial, p: u64) -> Result<NewtonPolygon> {
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    newton_polygon_rat(&coeffs, p)
}

/// Newton polygon of a polynomial with rational coefficients.
pub fn newton_polygon_rat(coeffs: &[BigRational], p: u64) -> Result<NewtonPolygon> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let bp = BigInt::from(p);
    let points: Vec<(usize, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, valuation_rat(c, &bp)))
        .collect();
    let zero_roots = points[0].0;

    // lower convex hull, monotone chain
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross = (x2 as i128 - x1 as i128) * (pt.1 as i128 - y1 as i128)
                - (y2 as i128 - y1 as i128) * (pt.0 as i128 - x1 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut slopes: Vec<Segment> = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let len = x2 - x1;
            let hull_slope = BigRational::new(BigInt::from(y2 - y1), BigInt::from(len as i64));
            Segment { valuation: -hull_slope, length: len }
        })
        .collect();
    // hull slopes increase left to right, so root valuations decrease
    slopes.reverse();
    debug_assert!(slopes.windows(2).all(|w| w[0].valuation < w[1].valuation));
    Ok(NewtonPolygon { prime: bp, vertices: hull, slopes, zero_roots })
}

/// True when the polygon has a single segment whose valuation is an odd
/// integer.
pub fn single_odd_integer_slope(poly: &NewtonPolygon) -> bool {
    match poly.slopes.as_slice() {
        [s] => s.valuation.is_integer() && s.valuation.numer().is_odd(),
        _ => false,
    }
}
