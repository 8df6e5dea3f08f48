use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NumberField;
use crate::error::{Error, Result};

/// Element of a number field in the power basis `1, θ, …, θ^{d−1}`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field)
            || self.field.defining_poly() == other.field.defining_poly())
            && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    /// Element with the given power-basis coefficients; longer inputs are
    /// reduced modulo the defining polynomial.
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = reduce(field, coeffs);
        FieldElement { field: Arc::clone(field), coeffs }
    }

    pub fn from_integers(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::new(
            field,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        Self::new(field, vec![q])
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    /// The generator `θ`, a root of the defining polynomial.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
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

    /// Matrix of multiplication by `self`; column `j` holds `self · θ^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = self.field.degree();
        let theta = Self::generator(&self.field);
        let mut col = self.clone();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            for i in 0..d {
                m[i][j] = col.coeffs[i].clone();
            }
            col = &col * &theta;
        }
        m
    }

    /// Characteristic polynomial of multiplication by `self`, monic of
    /// degree `d`, coefficients lowest degree first.
    pub fn charpoly(&self) -> Vec<BigRational> {
        hessenberg_charpoly(self.multiplication_matrix())
    }

    pub fn norm(&self) -> BigRational {
        let cp = self.charpoly();
        let c0 = cp[0].clone();
        if self.field.degree() % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    pub fn trace(&self) -> BigRational {
        let d = self.field.degree();
        -self.charpoly()[d - 1].clone()
    }

    /// Exact sign of `σ(self)` at each real embedding `σ`, ascending by the
    /// embedding value of `θ`.
    pub fn sign_at_embeddings(&self) -> Result<Vec<i8>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.field.real_embeddings().len();
        if n == 0 {
            return Err(Error::Domain("field has no real embeddings".into()));
        }
        Ok((0..n)
            .map(|i| self.field.real_root(i).sign_of_poly_rat(&self.coeffs))
            .collect())
    }

    /// Floating-point value at real embedding `i`.
    pub fn approx_at(&self, i: usize) -> f64 {
        let mut root = self.field.real_root(i);
        root.refine_to(&BigRational::new(BigInt::one(), BigInt::from(1u64 << 50)));
        let t = root.approx();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + crate::polyalg::poly::rational_to_f64(c))
    }

    fn check_same_field(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field)
                || self.field.defining_poly() == other.field.defining_poly(),
            "elements of different fields"
        );
    }
}

fn reduce(field: &NumberField, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let f = field.defining_poly().coeffs();
    let d = field.degree();
    for i in (d..c.len()).rev() {
        let t = std::mem::take(&mut c[i]);
        if t.is_zero() {
            continue;
        }
        // θ^i = θ^{i−d} · (−Σ_{j<d} f_j θ^j)
        for (j, fj) in f.iter().take(d).enumerate() {
            if !fj.is_zero() {
                c[i - d + j] -= &t * BigRational::from_integer(fj.clone());
            }
        }
    }
    c.resize(d, BigRational::zero());
    c
}

/// Characteristic polynomial by reduction to upper Hessenberg form followed
/// by the standard row recurrence.
pub(crate) fn hessenberg_charpoly(mut h: Vec<Vec<BigRational>>) -> Vec<BigRational> {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &h[m][m - 1];
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] += t;
            }
        }
    }
    // p[k] is the charpoly of the leading k×k block
    let mut p: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for m in 1..=n {
        let prev = &p[m - 1];
        let mut next = vec![BigRational::zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &h[m - 1][m - 1];
        }
        let mut t = BigRational::one();
        for i in 1..m {
            t *= &h[m - i][m - i - 1];
            if t.is_zero() {
                break;
            }
            let coef = &t * &h[m - i - 1][m - 1];
            for (k, c) in p[m - i - 1].iter().enumerate() {
                next[k] -= &coef * c;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.check_same_field(rhs);
        let d = self.coeffs.len();
        let mut out = vec![BigRational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        FieldElement { field: Arc::clone(&self.field), coeffs: reduce(&self.field, out) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})·θ"),
                _ => format!("({c})·θ^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{make_field, two_cos_field};
    use crate::polyalg::IntPolynomial;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sqrt2() -> Arc<NumberField> {
        Arc::new(make_field(&IntPolynomial::from_i64s(&[-2, 0, 1])).unwrap())
    }

    #[test]
    fn charpoly_examples() {
        let k = sqrt2();
        let theta = FieldElement::generator(&k);
        assert_eq!(theta.charpoly(), vec![q(-2), q(0), q(1)]);
        let t1 = &theta + &FieldElement::one(&k);
        assert_eq!(t1.charpoly(), vec![q(-1), q(-2), q(1)]);
        assert_eq!(t1.norm(), q(-1));

        let k3 = Arc::new(two_cos_field(7).unwrap());
        let one = FieldElement::one(&k3);
        // (x − 1)³
        assert_eq!(one.charpoly(), vec![q(-1), q(3), q(-3), q(1)]);
        let theta3 = FieldElement::generator(&k3);
        assert_eq!(theta3.charpoly(), vec![q(-1), q(-2), q(1), q(1)]);
    }

    #[test]
    fn signs() {
        let k = sqrt2();
        let theta = FieldElement::generator(&k);
        assert_eq!(theta.sign_at_embeddings().unwrap(), vec![-1, 1]);
        let t = &(&theta * &theta) - &FieldElement::from_integers(&k, &[3]);
        assert_eq!(t.sign_at_embeddings().unwrap(), vec![-1, -1]);
        assert_eq!(FieldElement::zero(&k).sign_at_embeddings(), Err(Error::ZeroElement));
    }

    /// 2θ + 1 at θ = 2cos(2πk/7): numeric oracle gives the signs.
    #[test]
    fn signs_in_cubic_field() {
        let k = Arc::new(two_cos_field(7).unwrap());
        let a = FieldElement::from_integers(&k, &[1, 2]);
        let mut want: Vec<f64> = (1..=3)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 7.0).cos())
            .collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let want: Vec<i8> = want.iter().map(|t| if 2.0 * t + 1.0 > 0.0 { 1 } else { -1 }).collect();
        assert_eq!(want, vec![-1, 1, 1]);
        assert_eq!(a.sign_at_embeddings().unwrap(), want);
    }

    #[test]
    fn powers_reduce() {
        let k = sqrt2();
        let theta = FieldElement::generator(&k);
        assert_eq!(theta.pow(2), FieldElement::from_integers(&k, &[2]));
        assert_eq!(theta.pow(5), FieldElement::from_integers(&k, &[0, 4]));
    }

    fn element_strategy(d: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((-20i64..20, 1i64..6), d)
    }

    fn to_elem(k: &Arc<NumberField>, c: &[(i64, i64)]) -> FieldElement {
        FieldElement::new(k, c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn norm_is_multiplicative(a in element_strategy(3), b in element_strategy(3)) {
            let k = Arc::new(two_cos_field(7).unwrap());
            let (x, y) = (to_elem(&k, &a), to_elem(&k, &b));
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn norm_is_multiplicative_quadratic(a in element_strategy(2), b in element_strategy(2)) {
            let k = sqrt2();
            let (x, y) = (to_elem(&k, &a), to_elem(&k, &b));
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn signs_match_floats(a in element_strategy(3)) {
            let k = Arc::new(two_cos_field(7).unwrap());
            let x = to_elem(&k, &a);
            prop_assume!(!x.is_zero());
            let signs = x.sign_at_embeddings().unwrap();
            prop_assert_eq!(signs.len(), 3);
            for (i, s) in signs.iter().enumerate() {
                let v = x.approx_at(i);
                if v.abs() > 1e-9 {
                    prop_assert_eq!(*s, if v > 0.0 { 1 } else { -1 });
                }
            }
        }
    }
}
