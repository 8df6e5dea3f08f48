//! Lattices in `SO(2,1)` over `Q(cos 2π/p)` containing an element of
//! order `p`.
//!
//! For a prime `p ≥ 5` let `ω = cos(2π/p)` and `K = Q(ω) = Q(2ω)`. A shift
//! `T = a/2^j` with `cos(3π/p) < −T < cos(2π/p)` makes `c = T + ω`
//! positive at the identity embedding and negative at every other one, so
//! `x² + y² − c·z²` has signature `(2,1)` at the identity and is definite
//! elsewhere. The rotation `[[0, −1], [1, 2ω]] ⊕ 1` has order `p` and
//! preserves the form with Gram matrix `[[1, ω, 0], [ω, 1, 0], [0, 0, −c]]`.

mod matrix;
mod probe;

pub use matrix::FieldMatrix;
pub use probe::{mod2k_isotropy_probe, ProbeReport, MAX_PROBE_K};

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numfield::{two_cos_field, FieldElement, NumberField, Provenance};
use crate::polyalg::newton::{newton_polygon_rat, single_odd_integer_slope, valuation_rat};
use crate::polyalg::{discriminant, is_prime, isolate_real_roots, minpoly_cos, minpoly_two_cos, RealRoot};
use crate::serde_util::{bigint_string, rational_string, rational_vec_string};
use crate::torsion::{finite_subgroup_bound, order_volume_constants};

/// Matrix size of the ambient `GL_3` for the torsion cross-check.
const AMBIENT_DIM: u32 = 3;

fn check_construction_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p < 5 {
        return Err(Error::InvalidInput(format!("construction needs p >= 5, got {p}")));
    }
    Ok(())
}

/// Roots of `minpoly_cos(p)` ascending: `cos(2πk/p)` for `k = (p−1)/2, …, 1`.
fn cosine_roots(p: u64) -> Result<Vec<RealRoot>> {
    let f = minpoly_cos(p)?;
    let prec = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    Ok(isolate_real_roots(&f, &prec)?
        .into_iter()
        .map(|iv| RealRoot::new(f.clone(), iv))
        .collect())
}

/// Exact test of `−cos(2π/p) < T < −cos(3π/p)`.
///
/// `cos(3π/p) = −cos((p−3)π/p)` is minus the second-smallest root of
/// `minpoly_cos(p)`, and `cos(2π/p)` is the largest.
fn interval_contains(roots: &mut [RealRoot], t: &BigRational) -> bool {
    let m = roots.len();
    let above_lower = roots[m - 1].cmp_rational(&-t) == Ordering::Greater;
    let below_upper = roots[1].cmp_rational(t) == Ordering::Greater;
    above_lower && below_upper
}

fn omega(field: &Arc<NumberField>) -> FieldElement {
    FieldElement::generator(field).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

fn shift_element(field: &Arc<NumberField>, t: &BigRational) -> FieldElement {
    &FieldElement::from_rational(field, t.clone()) + &omega(field)
}

fn log2_exact(n: u64) -> Result<u32> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidInput(format!("denominator cap must be a power of 2, got {n}")));
    }
    Ok(n.trailing_zeros())
}

/// Candidate shifts `a/2^j`, `a` odd, in search order: smallest `j`, then
/// smallest `|a|`, positive before negative.
fn candidates(j: u32, bound: &BigRational) -> impl Iterator<Item = BigRational> {
    let den = BigInt::one() << j;
    let limit = (bound * BigRational::from_integer(den.clone())).ceil().to_integer();
    let mut a = BigInt::one();
    std::iter::from_fn(move || {
        if a > limit {
            return None;
        }
        let cur = a.clone();
        a += 2;
        Some(cur)
    })
    .flat_map(move |a| {
        let pos = BigRational::new(a.clone(), den.clone());
        [pos.clone(), -pos]
    })
}

/// First shift `T = a/2^j` (`2^j ≤ denominator_cap`) inside the interval
/// whose `T + ω` passes [`two_adic_condition`].
pub fn choose_t(p: u64, denominator_cap: u64) -> Result<BigRational> {
    check_construction_prime(p)?;
    let field = Arc::new(two_cos_field(p)?);
    choose_t_in(&field, p, denominator_cap)
}

fn choose_t_in(field: &Arc<NumberField>, p: u64, denominator_cap: u64) -> Result<BigRational> {
    let jmax = log2_exact(denominator_cap)?;
    let mut roots = cosine_roots(p)?;
    // |T| < 1 always
    let bound = BigRational::one();
    for j in 0..=jmax {
        for t in candidates(j, &bound) {
            if !interval_contains(&mut roots, &t) {
                continue;
            }
            if two_adic_condition(&shift_element(field, &t))? {
                return Ok(t);
            }
        }
    }
    Err(Error::NoFeasibleShift(denominator_cap))
}

/// True when the characteristic polynomial of `c` has a single 2-adic
/// Newton polygon slope whose root valuation is an odd integer, i.e.
/// `v(c)` is the same odd integer at every prime above 2.
pub fn two_adic_condition(c: &FieldElement) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroElement);
    }
    let np = newton_polygon_rat(&c.charpoly(), 2)?;
    Ok(single_odd_integer_slope(&np))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchimedeanSigns {
    pub identity_sign: i8,
    /// Signs at the other embeddings, ascending by embedding value.
    pub other_signs: Vec<i8>,
    pub passes: bool,
}

/// Index of the identity embedding among the ascending real embeddings:
/// the largest root, `2cos(2π/p)`.
fn identity_embedding(field: &NumberField) -> Result<usize> {
    match field.provenance() {
        Provenance::TwoCos { .. } if field.real_embeddings().len() == field.degree() => {
            Ok(field.degree() - 1)
        }
        _ => Err(Error::AmbiguousEmbedding(
            "identity embedding is only defined for fields generated by 2cos(2π/p)".into(),
        )),
    }
}

/// Signs of `c` at the identity embedding and at all others. Passes iff
/// the pattern is `(+; −, …, −)`.
pub fn archimedean_check(c: &FieldElement) -> Result<ArchimedeanSigns> {
    let id = identity_embedding(c.field())?;
    let mut signs = c.sign_at_embeddings()?;
    let identity_sign = signs.remove(id);
    let passes = identity_sign > 0 && signs.iter().all(|&s| s < 0);
    Ok(ArchimedeanSigns { identity_sign, other_signs: signs, passes })
}

/// `[[0, −1], [1, 2ω]] ⊕ 1` over `Q(2cos 2π/p)`.
pub fn order_p_element(p: u64, field: &Arc<NumberField>) -> Result<FieldMatrix> {
    if field.defining_poly() != &minpoly_two_cos(p)? {
        return Err(Error::InvalidInput(format!("field is not Q(2cos(2π/{p}))")));
    }
    let e = |c: &[i64]| FieldElement::from_integers(field, c);
    FieldMatrix::from_rows(vec![
        vec![e(&[0]), e(&[-1]), e(&[0])],
        vec![e(&[1]), FieldElement::generator(field), e(&[0])],
        vec![e(&[0]), e(&[0]), e(&[1])],
    ])
}

/// `g^p = I` and `g ≠ I`; for prime `p` this is order exactly `p`.
pub fn verify_order(g: &FieldMatrix, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(!g.is_identity() && g.pow(p).is_identity())
}

/// `gᵀ·G·g = G` and `det g = 1`.
pub fn form_preservation_check(g: &FieldMatrix, gram: &FieldMatrix) -> Result<bool> {
    if g.size() != gram.size() {
        return Err(Error::InvalidInput("generator and Gram matrix sizes differ".into()));
    }
    let lhs = g.transpose().mul(gram)?.mul(g)?;
    Ok(&lhs == gram && g.det().is_one())
}

/// `[[1, ω, 0], [ω, 1, 0], [0, 0, −c]]`.
pub fn gram_matrix(c: &FieldElement) -> Result<FieldMatrix> {
    let field = c.field();
    let z = FieldElement::zero(field);
    let one = FieldElement::one(field);
    let w = omega(field);
    FieldMatrix::from_rows(vec![
        vec![one.clone(), w.clone(), z.clone()],
        vec![w, one, z.clone()],
        vec![z.clone(), z, -c],
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    #[serde(with = "bigint_string")]
    pub disc_computed: BigInt,
    /// `p^{(p−2)/2}`, a closed form that disagrees with the computed value.
    pub disc_closed_form: f64,
    pub disc_matches_p_pow_p_minus_3_over_2: bool,
    pub log_disc: f64,
    /// `log a + b·log disc`.
    pub log_v_hat: f64,
    /// `c·p·log p` with `c = volume_log_c`.
    pub log_volume_cap: f64,
    pub log_volume_cap_holds: bool,
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        crate::polyalg::poly::bigint_to_f64(x).ln()
    } else {
        let shift = bits - 900;
        crate::polyalg::poly::bigint_to_f64(&(x >> shift as usize)).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn volume_from_disc(p: u64, disc: &BigInt, config: &Config) -> VolumeEstimate {
    let pf = p as f64;
    let log_disc = ln_bigint(disc);
    let log_v_hat = config.belolipetsky_a.ln() + config.belolipetsky_b * log_disc;
    let log_volume_cap = config.volume_log_c * pf * pf.ln();
    VolumeEstimate {
        disc_computed: disc.clone(),
        disc_closed_form: pf.powf((pf - 2.0) / 2.0),
        disc_matches_p_pow_p_minus_3_over_2: disc == &BigInt::from(p).pow(((p - 3) / 2) as u32),
        log_disc,
        log_v_hat,
        log_volume_cap,
        log_volume_cap_holds: log_disc <= log_volume_cap,
    }
}

/// Discriminant, the closed form it is compared against, and
/// `log v̂ = log a + b·log disc` with `a, b` from the configuration.
pub fn volume_estimate(p: u64, config: &Config) -> Result<VolumeEstimate> {
    check_construction_prime(p)?;
    let disc = discriminant(&minpoly_two_cos(p)?)?.abs();
    Ok(volume_from_disc(p, &disc, config))
}

/// `p·log log v̂ / log v̂`.
pub fn lower_bound_ratio(p: u64, log_v_hat: f64) -> Result<f64> {
    if !(log_v_hat.is_finite() && log_v_hat > 1.0) {
        return Err(Error::Domain(format!("log v must exceed 1, got {log_v_hat}")));
    }
    Ok(p as f64 * log_v_hat.ln() / log_v_hat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub interval_ok: bool,
    pub archimedean_ok: bool,
    pub two_adic_ok: bool,
    pub form_preserved: bool,
    pub order_verified: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.interval_ok && self.archimedean_ok && self.two_adic_ok && self.form_preserved && self.order_verified
    }

    fn failing(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (ok, name) in [
            (self.interval_ok, "interval_ok"),
            (self.archimedean_ok, "archimedean_ok"),
            (self.two_adic_ok, "two_adic_ok"),
            (self.form_preserved, "form_preserved"),
            (self.order_verified, "order_verified"),
        ] {
            if !ok {
                v.push(name);
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coeffs(#[serde(with = "rational_vec_string")] pub Vec<BigRational>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionCrossCheck {
    pub order: u64,
    pub c1: f64,
    pub c2: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeConstruction {
    pub p: u64,
    pub field: NumberField,
    #[serde(with = "rational_string")]
    pub t: BigRational,
    /// 2-adic valuation of `T`.
    pub t_valuation: i64,
    /// `c = T + ω` in the basis `1, 2ω, (2ω)², …`.
    pub c: Coeffs,
    pub gram: Vec<Vec<Coeffs>>,
    pub generator: Vec<Vec<Coeffs>>,
    pub checks: Checks,
    pub signs: ArchimedeanSigns,
    #[serde(with = "bigint_string")]
    pub disc_used: BigInt,
    pub volume: VolumeEstimate,
    pub log_volume_estimate: f64,
    pub ratio: f64,
    pub torsion_cross_check: TorsionCrossCheck,
    pub probe: Option<ProbeReport>,
    pub discrepancies: Vec<String>,
}

fn coeff_matrix(m: &FieldMatrix) -> Vec<Vec<Coeffs>> {
    m.coeff_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Coeffs).collect())
        .collect()
}

fn matrix_from_coeffs(field: &Arc<NumberField>, rows: &[Vec<Coeffs>]) -> Result<FieldMatrix> {
    let d = field.degree();
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| {
                    if c.0.len() > d {
                        Err(Error::InvalidInput("entry has too many coefficients".into()))
                    } else {
                        Ok(FieldElement::new(field, c.0.clone()))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::from_rows(rows)
}

/// Checks for a given shift, all by exact arithmetic.
fn run_checks(
    p: u64,
    t: &BigRational,
    c: &FieldElement,
    g: &FieldMatrix,
    gram: &FieldMatrix,
) -> Result<(Checks, ArchimedeanSigns)> {
    let mut roots = cosine_roots(p)?;
    let signs = archimedean_check(c)?;
    let checks = Checks {
        interval_ok: interval_contains(&mut roots, t),
        archimedean_ok: signs.passes,
        two_adic_ok: two_adic_condition(c)?,
        form_preserved: gram.is_symmetric() && !gram.det().is_zero() && form_preservation_check(g, gram)?,
        order_verified: verify_order(g, p)?,
    };
    Ok((checks, signs))
}

/// Builds and verifies the construction for `p`. Fails with
/// [`Error::ConstructionFailed`] if any check does not pass.
pub fn construct(p: u64, denominator_cap: u64, probe_k: Option<u32>, config: &Config) -> Result<LatticeConstruction> {
    check_construction_prime(p)?;
    let field = Arc::new(two_cos_field(p)?);
    let t = choose_t_in(&field, p, denominator_cap)?;
    let c = shift_element(&field, &t);
    let g = order_p_element(p, &field)?;
    let gram = gram_matrix(&c)?;
    let (checks, signs) = run_checks(p, &t, &c, &g, &gram)?;
    if !checks.all() {
        return Err(Error::ConstructionFailed(checks.failing().join(", ")));
    }

    let disc = field.field_disc().abs();
    let volume = volume_from_disc(p, &disc, config);
    let ratio = lower_bound_ratio(p, volume.log_v_hat)?;
    let (c1, c2) = order_volume_constants(AMBIENT_DIM, config);
    let bound = finite_subgroup_bound(volume.log_v_hat.exp(), AMBIENT_DIM, config.jordan_index, c1, c2)?;
    let torsion_cross_check = TorsionCrossCheck { order: p, c1, c2, bound, holds: p as f64 <= bound };
    let probe = probe_k.map(|k| mod2k_isotropy_probe(&c, k)).transpose()?;

    let mut discrepancies = Vec::new();
    if volume.disc_matches_p_pow_p_minus_3_over_2 {
        discrepancies.push(format!(
            "closed form p^((p-2)/2) = {:.6} differs from the computed discriminant p^((p-3)/2) = {}",
            volume.disc_closed_form, volume.disc_computed
        ));
    }
    discrepancies.push(
        "T + sigma(omega) is negative, not positive, at every non-identity embedding; the interval for -T forces this"
            .into(),
    );
    discrepancies.push("2-adic anisotropy is supported by probe evidence, not proven".into());
    if let Some(pr) = &probe {
        if pr.potential_counterexample {
            discrepancies.push(format!(
                "probe found {} primitive solutions modulo 2^{}",
                pr.primitive_solutions, pr.k
            ));
        }
    }

    Ok(LatticeConstruction {
        p,
        t_valuation: valuation_rat(&t, &BigInt::from(2)),
        t,
        c: Coeffs(c.coeffs().to_vec()),
        gram: coeff_matrix(&gram),
        generator: coeff_matrix(&g),
        checks,
        signs,
        disc_used: disc,
        log_volume_estimate: volume.log_v_hat,
        volume,
        ratio,
        torsion_cross_check,
        probe,
        discrepancies,
        field: Arc::try_unwrap(field).unwrap_or_else(|a| (*a).clone()),
    })
}

impl LatticeConstruction {
    /// Recomputes every check from the serialized data alone.
    pub fn reverify(&self) -> Result<Checks> {
        check_construction_prime(self.p)?;
        let field = Arc::new(self.field.rebuild()?);
        let c = FieldElement::new(&field, self.c.0.clone());
        if c != shift_element(&field, &self.t) {
            return Err(Error::InvalidInput("c does not equal T + omega".into()));
        }
        let g = matrix_from_coeffs(&field, &self.generator)?;
        let gram = matrix_from_coeffs(&field, &self.gram)?;
        if gram != gram_matrix(&c)? {
            return Err(Error::InvalidInput("Gram matrix does not match c".into()));
        }
        Ok(run_checks(self.p, &self.t, &c, &g, &gram)?.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    #[serde(with = "bigint_string")]
    pub disc: BigInt,
    pub log_v_hat: f64,
    pub ratio: f64,
}

fn sweep_row(p: u64, config: &Config) -> Result<SweepRow> {
    let v = volume_estimate(p, config)?;
    Ok(SweepRow { p, ratio: lower_bound_ratio(p, v.log_v_hat)?, disc: v.disc_computed, log_v_hat: v.log_v_hat })
}

/// Discriminant, `log v̂` and ratio for every prime `5 ≤ p ≤ pmax`.
pub fn construct_sweep(pmax: u64, config: &Config, threads: usize) -> Result<Vec<SweepRow>> {
    let primes: Vec<u64> = (5..=pmax).filter(|&p| is_prime(p)).collect();
    let threads = threads.max(1);
    if threads == 1 || primes.len() < 2 {
        return primes.iter().map(|&p| sweep_row(p, config)).collect();
    }
    let results: Vec<Result<SweepRow>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let primes = &primes;
                s.spawn(move || {
                    primes
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| i % threads == w)
                        .map(|(i, &p)| (i, sweep_row(p, config)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<(usize, Result<SweepRow>)> =
            handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect();
        all.sort_by_key(|(i, _)| *i);
        all.into_iter().map(|(_, r)| r).collect()
    });
    results.into_iter().collect()
}
