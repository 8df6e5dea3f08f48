//! Number fields `Q[x]/(f)` for monic irreducible `f ∈ Z[x]`.

mod element;
mod split;

pub use element::FieldElement;
pub use split::{count_prime_ideals, dedekind_split, PrimeIdealCount, PrimeSplit};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::modp::{factor_mod_p, PolyModP};
use crate::polyalg::primes::factor_bigint;
use crate::polyalg::{discriminant, isolate_real_roots, minpoly_two_cos, IntPolynomial, RealRoot, RootInterval};
use crate::serde_util::bigint_string;

/// Trial-division bound used when factoring polynomial discriminants.
const DISC_TRIAL_BOUND: u64 = 1_000_000;

/// Where a defining polynomial came from. Irreducibility is proven for the
/// library-generated kinds and only assumed for supplied ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Supplied,
    /// Minimal polynomial of `2cos(2π/p)`.
    TwoCos { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberField {
    #[serde(rename = "poly")]
    defining_poly: IntPolynomial,
    degree: usize,
    #[serde(with = "bigint_string")]
    disc_poly: BigInt,
    /// Equal to `disc_poly`; only known to be the field discriminant when
    /// `monogenic` is true.
    #[serde(with = "bigint_string")]
    field_disc: BigInt,
    #[serde(rename = "monogenic")]
    monogenic_certified: bool,
    /// Isolating intervals of the real roots of the defining polynomial,
    /// ascending.
    real_embeddings: Vec<RootInterval>,
    provenance: Provenance,
}

fn embedding_precision() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1u64 << 20))
}

/// Builds the field defined by a monic integer polynomial.
///
/// Irreducibility is not proven; inputs with a rational root are rejected.
pub fn make_field(f: &IntPolynomial) -> Result<NumberField> {
    build(f, Provenance::Supplied)
}

/// `Q(2cos(2π/p)) = Q(cos(2π/p))`, generated by `θ = 2cos(2π/p)`.
pub fn two_cos_field(p: u64) -> Result<NumberField> {
    build(&minpoly_two_cos(p)?, Provenance::TwoCos { p })
}

fn build(f: &IntPolynomial, provenance: Provenance) -> Result<NumberField> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if degree >= 2 {
        if let Some(Some(r)) = f.rational_root() {
            return Err(Error::Reducible(r.to_string()));
        }
        if !f.is_squarefree() {
            return Err(Error::Reducible("repeated factor".into()));
        }
    }
    let disc_poly = discriminant(f)?;
    let real_embeddings = isolate_real_roots(f, &embedding_precision())?;
    let monogenic_certified = certify_monogenic(f, &disc_poly)?;
    Ok(NumberField {
        defining_poly: f.clone(),
        degree,
        field_disc: disc_poly.clone(),
        disc_poly,
        monogenic_certified,
        real_embeddings,
        provenance,
    })
}

/// `Z[θ]` is the maximal order iff no prime `q` with `q² | disc` divides
/// the index, which the Dedekind criterion decides prime by prime.
fn certify_monogenic(f: &IntPolynomial, disc: &BigInt) -> Result<bool> {
    let (factors, cofactor) = factor_bigint(disc, DISC_TRIAL_BOUND);
    if !cofactor.is_one() {
        return Ok(false);
    }
    for (q, e) in factors {
        if e < 2 {
            continue;
        }
        let q: u64 = q.try_into().map_err(|_| Error::CapExceeded("discriminant prime".into()))?;
        if dedekind_index_divisible(f, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dedekind criterion: true when `q` may divide `[O_K : Z[θ]]`.
///
/// With `f ≡ Π t_i^{e_i} (mod q)`, `g = Π t_i`, `h = f/g (mod q)` and
/// `F = (f − g·h)/q`, the prime `q` does not divide the index iff
/// `gcd(F̄, ḡ, h̄) = 1`.
pub fn dedekind_index_divisible(f: &IntPolynomial, q: u64) -> Result<bool> {
    let fac = factor_mod_p(f, q)?;
    if fac.factors.iter().all(|(_, e)| *e == 1) {
        return Ok(false);
    }
    let mut g = IntPolynomial::one();
    let mut h_bar = PolyModP::one(q);
    for (t, e) in &fac.factors {
        g = &g * &t.to_int();
        for _ in 1..*e {
            h_bar = h_bar.mul(t);
        }
    }
    let h = h_bar.scale(fac.unit).to_int();
    let diff = f - &(&g * &h);
    let big_f = diff
        .div_scalar_exact(&BigInt::from(q))
        .expect("g·h ≡ f (mod q)");
    let g_bar = PolyModP::from_int(&g, q);
    let common = g_bar.gcd(&h_bar);
    let common = common.gcd(&PolyModP::from_int(&big_f, q));
    Ok(common.degree().unwrap_or(0) > 0)
}

impl NumberField {
    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.defining_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc_poly(&self) -> &BigInt {
        &self.disc_poly
    }

    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    /// `log |D_K|`, using `field_disc`.
    pub fn log_abs_disc(&self) -> f64 {
        let d = self.field_disc.abs();
        let bits = d.bits();
        if bits < 1000 {
            crate::polyalg::poly::bigint_to_f64(&d).ln()
        } else {
            let shift = bits - 900;
            crate::polyalg::poly::bigint_to_f64(&(d >> shift as usize)).ln()
                + shift as f64 * std::f64::consts::LN_2
        }
    }

    pub fn monogenic_certified(&self) -> bool {
        self.monogenic_certified
    }

    pub fn real_embeddings(&self) -> &[RootInterval] {
        &self.real_embeddings
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Real embedding `i` (ascending order) as a refinable root.
    pub fn real_root(&self, i: usize) -> RealRoot {
        RealRoot::new(self.defining_poly.clone(), self.real_embeddings[i].clone())
    }

    pub(crate) fn check_prime(p: u64) -> Result<()> {
        if crate::polyalg::is_prime(p) {
            Ok(())
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    /// Re-creates a field from its serialized defining polynomial,
    /// recomputing every derived quantity.
    pub fn rebuild(&self) -> Result<NumberField> {
        build(&self.defining_poly, self.provenance.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sqrt_two_field() {
        let k = make_field(&ip(&[-2, 0, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.disc_poly(), &BigInt::from(8));
        assert_eq!(k.real_embeddings().len(), 2);
        assert!(k.monogenic_certified());
    }

    #[test]
    fn cubic_two_cos_field() {
        let k = two_cos_field(7).unwrap();
        assert_eq!(k.degree(), 3);
        assert_eq!(k.disc_poly(), &BigInt::from(49));
        assert_eq!(k.real_embeddings().len(), 3);
        assert!(k.monogenic_certified());
        assert!(!dedekind_index_divisible(k.defining_poly(), 7).unwrap());
    }

    #[test]
    fn rational_field() {
        let k = make_field(&ip(&[0, 1])).unwrap();
        assert_eq!(k.degree(), 1);
        assert_eq!(k.disc_poly(), &BigInt::one());
        assert!(k.monogenic_certified());
    }

    #[test]
    fn rejections() {
        assert_eq!(make_field(&ip(&[-2, 0, 2])), Err(Error::NotMonic));
        assert!(matches!(make_field(&ip(&[-4, 0, 1])), Err(Error::Reducible(_))));
        assert_eq!(make_field(&ip(&[5])), Err(Error::ConstantPolynomial));
    }

    /// Z[√-3] has index 2 in the ring of integers of Q(√-3); Z[√5] has
    /// index 2 in Q(√5). Both are caught at q = 2.
    #[test]
    fn non_monogenic_orders_are_flagged() {
        assert!(dedekind_index_divisible(&ip(&[3, 0, 1]), 2).unwrap());
        assert!(dedekind_index_divisible(&ip(&[-5, 0, 1]), 2).unwrap());
        let k = make_field(&ip(&[-5, 0, 1])).unwrap();
        assert!(!k.monogenic_certified());
        // x² − 2 at 2 is fine
        assert!(!dedekind_index_divisible(&ip(&[-2, 0, 1]), 2).unwrap());
    }

    #[test]
    fn two_cos_discriminants() {
        for (p, e) in [(5u64, 1u32), (7, 2), (11, 4), (13, 5)] {
            let k = two_cos_field(p).unwrap();
            assert_eq!(k.field_disc(), &BigInt::from(p).pow(e), "p = {p}");
            assert!(k.monogenic_certified());
        }
    }

    #[test]
    fn json_shape() {
        let k = make_field(&ip(&[-2, 0, 1])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&k).unwrap();
        assert_eq!(v["poly"], serde_json::json!(["-2", "0", "1"]));
        assert_eq!(v["degree"], 2);
        assert_eq!(v["disc_poly"], "8");
        assert_eq!(v["field_disc"], "8");
        assert_eq!(v["monogenic"], true);
    }
}
