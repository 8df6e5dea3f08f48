//! Polynomials over the prime field `Z/p` and their factorisation.
//!
//! Factorisation runs squarefree decomposition, then distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting driven by a
//! fixed-seed generator, so results are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::IntPolynomial;
use super::primes::{is_prime, pow_mod};
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5e1b_e7c0_ffee_2024;

/// Polynomial over `Z/p`, coefficients in `[0, p)`, lowest degree first,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PolyModP {
    pub p: u64,
    coeffs: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    /// Reduction of an integer polynomial.
    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let bp = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap())
            .collect();
        Self::new(p, coeffs)
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = inv(self.leading(), self.p);
        self.scale(li)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mulm(c, k, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let li = inv(d.leading(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = mulm(r[i], li, p);
            if t == 0 {
                continue;
            }
            q[i - dd] = t;
            for (j, &c) in d.coeffs.iter().enumerate() {
                let sub = mulm(t, c, p);
                r[i - dd + j] = (r[i - dd + j] + p - sub) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Inverse Frobenius on a polynomial whose derivative vanishes:
    /// `Σ a_{ip} x^{ip} ↦ Σ a_{ip} x^i` (coefficients are fixed by `a ↦ a^p`).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int(), self.p)
    }
}

/// Factorisation `f ≡ unit · Π g_i^{e_i} (mod p)` into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPFactorization {
    pub p: u64,
    pub unit: u64,
    /// `(factor, multiplicity)`, sorted by degree then coefficients.
    pub factors: Vec<(PolyModP, usize)>,
}

impl ModPFactorization {
    /// Multiplies the factorisation back out.
    pub fn product(&self) -> PolyModP {
        let mut acc = PolyModP::new(self.p, vec![self.unit]);
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Factors `f` modulo the prime `p`.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<ModPFactorization> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let fp = PolyModP::from_int(f, p);
    if fp.is_zero() {
        return Err(Error::VanishesModP(p));
    }
    let unit = fp.leading();
    let monic = fp.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ p);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.cmp(&b.coeffs))
            .then(ea.cmp(eb))
    });
    Ok(ModPFactorization { p, unit, factors })
}

/// Squarefree parts with their multiplicities (Yun, adapted to
/// characteristic p).
fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() && c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_decomposition(&c.monic().pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree; returns `(product, degree)`.
fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyModP::x(p);
    let mut h = x.rem(&rest);
    let mut i = 0;
    while let Some(dr) = rest.degree() {
        if dr < 2 * (i + 1) {
            break;
        }
        i += 1;
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
    }
    if let Some(dr) = rest.degree() {
        if dr > 0 {
            out.push((rest.monic(), dr));
        }
    }
    out
}

fn random_poly(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> PolyModP {
    PolyModP::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect())
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of degree `d`.
fn equal_degree(f: &PolyModP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = random_poly(p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + … + a^(2^(d−1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d − 1)/2) = (a^(1 + p + … + p^(d−1)))^((p−1)/2)
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p, f);
                norm = norm.mul(&frob).rem(f);
            }
            norm.pow_mod((p - 1) / 2, f).sub(&PolyModP::one(p))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}
