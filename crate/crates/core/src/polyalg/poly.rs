use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`; `None` if some
    /// coefficient is not divisible.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// `f(k·x)`.
    pub fn scale_variable(&self, k: &BigInt) -> Self {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= k;
        }
        Self::new(out)
    }

    /// `f(x + a)` by repeated synthetic division.
    pub fn shift(&self, a: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `f(x)` at a rational point, without building the rational
    /// value: evaluates the homogenised numerator `Σ a_i n^i d^(deg-i)`.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Horner on the homogenised form, carrying powers of d.
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of(&acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| {
            acc * x + bigint_to_f64(c)
        })
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shifted = Self::monomial(lr, dr - db);
            r = &r.scale(&lb) - &(&shifted * b);
        }
        r
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, b: &Self) -> (Self, Self) {
        assert!(b.is_monic(), "div_rem_monic needs a monic divisor");
        let db = b.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let t = r[i].clone();
            if t.is_zero() {
                continue;
            }
            q[i - db] = t.clone();
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i - db + j] -= &t * bc;
            }
        }
        r.truncate(db);
        (Self::new(q), Self::new(r))
    }

    /// Primitive gcd over Q, normalised with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree().unwrap_or(0) == 0
    }

    /// Rational roots of an integer polynomial whose constant term can be
    /// factored by trial division. Returns `None` when the search is not
    /// conclusive.
    pub fn rational_root(&self) -> Option<Option<BigRational>> {
        let deg = self.degree()?;
        if deg == 0 {
            return Some(None);
        }
        if self.coeffs[0].is_zero() {
            return Some(Some(BigRational::zero()));
        }
        let a0 = self.coeffs[0].abs();
        let an = self.leading().unwrap().abs();
        let limit = BigInt::from(1_000_000_000_000u64);
        if a0 > limit || an > limit {
            return None;
        }
        let num_divs = divisors(&a0);
        let den_divs = divisors(&an);
        for p in &num_divs {
            for q in &den_divs {
                for s in [1, -1] {
                    let r = BigRational::new(p * BigInt::from(s), q.clone());
                    if self.sign_at(&r) == 0 {
                        return Some(Some(r));
                    }
                }
            }
        }
        Some(None)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n: u64 = n.try_into().expect("bounded by caller");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let (nb, db) = (n.bits() as i64, d.bits() as i64);
    // Shift both into f64 range before dividing.
    let shift = (nb.max(db) - 1000).max(0);
    let n = bigint_to_f64(&(n >> shift as usize));
    let d = bigint_to_f64(&(d >> shift as usize));
    n / d
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: array of decimal coefficient strings, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Parses the one-line text format: comma-separated decimal coefficients,
/// lowest degree first; `#` starts a comment.
pub fn parse_poly_text(text: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut seen_line = false;
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if seen_line {
            return Err(Error::InvalidInput(
                "polynomial file must contain a single coefficient line".into(),
            ));
        }
        seen_line = true;
        for tok in line.split(',') {
            let tok = tok.trim();
            let c = tok
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {tok:?}")))?;
            coeffs.push(c);
        }
    }
    if !seen_line {
        return Err(Error::InvalidInput("no coefficient line found".into()));
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 1, 1]).to_string(), "x^2 + x - 1");
        assert_eq!(p(&[0, 5, 0, -20, 0, 16]).to_string(), "16x^5 - 20x^3 + 5x");
    }

    #[test]
    fn shift_and_scale_variable() {
        // (x+1)^2 - 2 = x^2 + 2x - 1
        assert_eq!(p(&[-2, 0, 1]).shift(&BigInt::from(1)), p(&[-1, 2, 1]));
        assert_eq!(p(&[-1, 1, 1]).scale_variable(&BigInt::from(2)), p(&[-1, 2, 4]));
    }

    #[test]
    fn gcd_detects_repeated_factor() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 0, 1]);
        assert!(!f.is_squarefree());
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
    }

    #[test]
    fn monic_division() {
        let f = p(&[1, 0, 0, 1]);
        let (q, r) = f.div_rem_monic(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(p(&[-2, 0, 1]).rational_root(), Some(None));
        assert_eq!(
            p(&[-1, 2]).rational_root(),
            Some(Some(BigRational::new(1.into(), 2.into())))
        );
    }

    #[test]
    fn poly_text_format() {
        let f = parse_poly_text("# sqrt 2\n-2, 0, 1\n").unwrap();
        assert_eq!(f, p(&[-2, 0, 1]));
        assert!(parse_poly_text("1,x").is_err());
        assert!(parse_poly_text("# nothing").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let f = p(&[-1, 1, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["-1","1","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), f);
    }

    #[test]
    fn sign_at_rational() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&BigRational::new(3.into(), 2.into())), 1);
        assert_eq!(f.sign_at(&BigRational::new(7.into(), 5.into())), -1);
        assert_eq!(f.sign_at(&BigRational::new((-3).into(), 2.into())), 1);
    }
}
