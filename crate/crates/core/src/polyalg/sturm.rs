//! Real root isolation by Sturm sequences over the rationals.
//!
//! Bisection always uses dyadic midpoints and every sign is exact. An
//! isolating interval is either a point `[r, r]` (an exact rational root) or
//! an open interval `(lo, hi)` with `f(lo)·f(hi) < 0` that contains exactly
//! one root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{rational_to_f64, sign_of, IntPolynomial};
use crate::error::{Error, Result};
use crate::serde_util::rational_string;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "rational_string")]
    pub lo: BigRational,
    #[serde(with = "rational_string")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

/// Sturm sequence `f, f', −rem(f, f'), …` kept primitive with signs
/// preserved (pseudo-remainders are sign-corrected).
pub fn sturm_sequence(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() {
            seq.pop();
            break;
        }
        if b.degree() == Some(0) {
            break;
        }
        let mut r = a.pseudo_rem(b);
        // prem multiplies by lc(b)^k; undo the sign of that factor
        let k = a.degree().unwrap() - b.degree().unwrap() + 1;
        if b.leading().unwrap().is_negative() && k % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let g = r.content();
        let r = -&r.div_scalar_exact(&g).unwrap();
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    variations(seq.iter().map(|g| g.sign_at(x)))
}

/// Sign variations at `+∞` (`positive = true`) or `−∞`.
fn variations_at_infinity(seq: &[IntPolynomial], positive: bool) -> usize {
    variations(seq.iter().map(|g| {
        let s = sign_of(g.leading().unwrap());
        let odd = g.degree().unwrap() % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots, from the Sturm sequence at ±∞.
pub fn count_real_roots(f: &IntPolynomial) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Integer `B` with every real root strictly inside `(−B, B)` (Cauchy).
fn root_bound(f: &IntPolynomial) -> BigInt {
    let lead = f.leading().unwrap().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    max / lead + BigInt::from(2)
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Isolates every real root of a squarefree `f` in disjoint intervals of
/// width at most `precision`, sorted ascending.
pub fn isolate_real_roots(f: &IntPolynomial, precision: &BigRational) -> Result<Vec<RootInterval>> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !precision.is_positive() {
        return Err(Error::Domain("precision must be positive".into()));
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let seq = sturm_sequence(f);
    let b = BigRational::from_integer(root_bound(f));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // Endpoints on the stack are never roots of f.
    while let Some((lo, hi)) = stack.pop() {
        let n = variations_at(&seq, &lo) - variations_at(&seq, &hi);
        if n == 0 {
            continue;
        }
        let width = &hi - &lo;
        if n == 1 && &width <= precision {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / two();
        if f.sign_at(&mid) == 0 {
            if n == 1 {
                out.push(RootInterval { lo: mid.clone(), hi: mid });
                continue;
            }
            // split beside the root instead, at another dyadic point
            let mut off = &width / BigRational::from_integer(BigInt::from(4));
            let split = loop {
                let cand = &mid + &off;
                if f.sign_at(&cand) != 0 {
                    break cand;
                }
                off /= two();
            };
            stack.push((split.clone(), hi));
            stack.push((lo, split));
            continue;
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// A real algebraic number: a root of a squarefree integer polynomial
/// together with an isolating interval that can be refined on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    poly: IntPolynomial,
    interval: RootInterval,
}

impl RealRoot {
    /// Caller guarantees `interval` isolates a root of the squarefree `poly`
    /// in the sense of [`isolate_real_roots`].
    pub fn new(poly: IntPolynomial, interval: RootInterval) -> Self {
        RealRoot { poly, interval }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    /// One bisection step.
    pub fn refine(&mut self) {
        if self.interval.is_exact() {
            return;
        }
        let mid = self.interval.midpoint();
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            self.interval = RootInterval { lo: mid.clone(), hi: mid };
            return;
        }
        let slo = self.poly.sign_at(&self.interval.lo);
        if slo == sm {
            self.interval.lo = mid;
        } else {
            self.interval.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while &self.interval.width() > width {
            self.refine();
        }
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.interval.midpoint())
    }

    /// Exact comparison of the root with a rational.
    pub fn cmp_rational(&mut self, q: &BigRational) -> Ordering {
        loop {
            if self.interval.is_exact() {
                return self.interval.lo.cmp(q);
            }
            if q <= &self.interval.lo {
                return Ordering::Greater;
            }
            if q >= &self.interval.hi {
                return Ordering::Less;
            }
            if self.poly.sign_at(q) == 0 {
                return Ordering::Equal;
            }
            self.refine();
        }
    }

    /// Certified sign of `g(root)` by rational interval evaluation, refining
    /// the root until the enclosure excludes zero. Returns 0 only when
    /// `g(root) = 0` is certified (`g` shares the root).
    pub fn sign_of_poly_rat(&mut self, g: &[BigRational]) -> i8 {
        if g.iter().all(Zero::is_zero) {
            return 0;
        }
        // g(root) = 0 iff root is a common root of g and the minimal poly
        let (gi, _) = clear_denominators(g);
        let common = gi.gcd(&self.poly);
        if common.degree().unwrap_or(0) > 0 && common_has_root(&common, self) {
            return 0;
        }
        loop {
            let (lo, hi) = interval_eval(g, &self.interval.lo, &self.interval.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            self.refine();
        }
    }
}

fn common_has_root(common: &IntPolynomial, root: &mut RealRoot) -> bool {
    if root.interval.is_exact() {
        return common.sign_at(&root.interval.lo) == 0;
    }
    // common divides the squarefree minimal polynomial, so the root belongs
    // to it iff common changes sign across the isolating interval
    let a = common.sign_at(&root.interval.lo);
    let b = common.sign_at(&root.interval.hi);
    a != b
}

/// Multiplies through by the lcm of the denominators.
pub fn clear_denominators(g: &[BigRational]) -> (IntPolynomial, BigInt) {
    use num_integer::Integer;
    let l = g.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = g
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    (IntPolynomial::new(coeffs), l)
}

/// Enclosure of `{g(t) : lo ≤ t ≤ hi}` by Horner's rule in interval
/// arithmetic.
fn interval_eval(g: &[BigRational], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut acc_lo = BigRational::zero();
    let mut acc_hi = BigRational::zero();
    for c in g.iter().rev() {
        let prods = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        acc_lo = mn + c;
        acc_hi = mx + c;
    }
    (acc_lo, acc_hi)
}
