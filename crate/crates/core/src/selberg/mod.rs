//! Torsion-free congruence levels and index bounds.

mod analytic;

pub use analytic::{grh_error, grh_threshold, integrate, li_surrogate, logarithmic_integral, GrhReport};

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numfield::{dedekind_split, NumberField};
use crate::polyalg::is_prime;
use crate::serde_util::bigint_string;

/// A prime ideal `𝔞 | q` with `𝔞^{q−1} ∤ q·O` gives a torsion-free
/// principal congruence subgroup. For ramification `e` this means
/// `e ≤ q − 2`; primes other than `q` never see `𝔞`.
pub fn kionke_criterion(q: u64, e: usize) -> Result<bool> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if e == 0 {
        return Err(Error::InvalidInput("ramification index must be >= 1".into()));
    }
    Ok((e as u64).saturating_add(2) <= q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceLevel {
    pub q: u64,
    pub f: usize,
    pub e: usize,
    #[serde(with = "bigint_string")]
    pub norm: BigInt,
    pub torsion_free_certificate: bool,
    #[serde(with = "bigint_string")]
    pub index_bound: BigInt,
    pub dim_g: u32,
    /// Primes whose splitting could not be trusted.
    pub skipped_primes: Vec<u64>,
    /// Largest rational prime examined.
    pub scanned_up_to: u64,
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug)]
struct Candidate {
    norm: BigInt,
    q: u64,
    f: usize,
    e: usize,
}

impl Candidate {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.norm
            .cmp(&other.norm)
            .then(self.q.cmp(&other.q))
            .then(self.f.cmp(&other.f))
            .then(self.e.cmp(&other.e))
    }
}

enum Scan {
    Ideals(Vec<Candidate>),
    Skipped,
}

fn scan_prime(k: &NumberField, q: u64) -> Result<Scan> {
    if k.degree() == 1 {
        return Ok(Scan::Ideals(if kionke_criterion(q, 1)? {
            vec![Candidate { norm: BigInt::from(q), q, f: 1, e: 1 }]
        } else {
            vec![]
        }));
    }
    let s = dedekind_split(k, q)?;
    if s.index_divisible {
        return Ok(Scan::Skipped);
    }
    let mut out = Vec::new();
    for &(e, f) in &s.factors {
        if kionke_criterion(q, e)? {
            out.push(Candidate { norm: BigInt::from(q).pow(f as u32), q, f, e });
        }
    }
    Ok(Scan::Ideals(out))
}

const BLOCK: usize = 64;

/// Smallest-norm prime ideal passing [`kionke_criterion`], scanning
/// rational primes in increasing order up to `cap`.
///
/// Primes are processed in fixed blocks of consecutive primes, each block
/// split over `threads` workers; the result does not depend on `threads`.
pub fn find_congruence_level(
    k: &NumberField,
    dim_g: u32,
    cap: u64,
    threads: usize,
) -> Result<CongruenceLevel> {
    if dim_g == 0 {
        return Err(Error::InvalidInput("dim G must be >= 1".into()));
    }
    let threads = threads.max(1);
    let mut best: Option<Candidate> = None;
    let mut skipped = Vec::new();
    let mut next = 2u64;
    let mut scanned_up_to = 0;
    loop {
        if let Some(b) = &best {
            if BigInt::from(next) > b.norm {
                break;
            }
        }
        if next > cap {
            return Err(Error::ScanLimit { cap });
        }
        let mut block = Vec::with_capacity(BLOCK);
        while block.len() < BLOCK && next <= cap {
            if is_prime(next) {
                block.push(next);
            }
            next += 1;
        }
        let results = scan_block(k, &block, threads)?;
        for (q, r) in block.iter().zip(results) {
            scanned_up_to = *q;
            match r {
                Scan::Skipped => skipped.push(*q),
                Scan::Ideals(cands) => {
                    for c in cands {
                        let better = match &best {
                            None => true,
                            Some(b) => c.key_cmp(b) == Ordering::Less,
                        };
                        if better {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        if best.is_none() && next > cap {
            return Err(Error::ScanLimit { cap });
        }
    }
    let b = best.expect("loop exits with a candidate");
    let mut discrepancies = Vec::new();
    if (b.q as u128) <= k.degree() as u128 {
        discrepancies.push(format!(
            "level lies over q = {} <= d = {}; the criterion e <= q - 2 was checked directly",
            b.q,
            k.degree()
        ));
    }
    Ok(CongruenceLevel {
        q: b.q,
        f: b.f,
        e: b.e,
        index_bound: b.norm.pow(dim_g),
        norm: b.norm,
        torsion_free_certificate: true,
        dim_g,
        skipped_primes: skipped,
        scanned_up_to,
        discrepancies,
    })
}

fn scan_block(k: &NumberField, block: &[u64], threads: usize) -> Result<Vec<Scan>> {
    if threads == 1 || block.len() < 2 {
        return block.iter().map(|&q| scan_prime(k, q)).collect();
    }
    let chunk = block.len().div_ceil(threads);
    let parts: Vec<Result<Vec<Scan>>> = std::thread::scope(|s| {
        let handles: Vec<_> = block
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|&q| scan_prime(k, q)).collect::<Result<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(block.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Index of the third principal congruence subgroup after restriction of
/// scalars: `3^{d·dim H}`.
pub fn unconditional_index_bound(d: u32, dim_h: u32) -> Result<BigInt> {
    if d == 0 || dim_h == 0 {
        return Err(Error::InvalidInput("d and dim H must be >= 1".into()));
    }
    let e = d.checked_mul(dim_h).ok_or(Error::Overflow)?;
    Ok(BigInt::from(3).pow(e))
}

/// `lemma_C · ((c1 + c2)·log v)^{(2+ε)·dim H}`.
pub fn volume_index_bound_grh(
    v: f64,
    dim_h: u32,
    epsilon: f64,
    prasad_c1: f64,
    prasad_c2: f64,
    lemma_c: f64,
) -> Result<f64> {
    if !(v > std::f64::consts::E) {
        return Err(Error::Domain(format!("v must exceed e, got {v}")));
    }
    if dim_h == 0 {
        return Err(Error::InvalidInput("dim H must be >= 1".into()));
    }
    let out = lemma_c * ((prasad_c1 + prasad_c2) * v.ln()).powf((2.0 + epsilon) * dim_h as f64);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow)
    }
}

/// Growth of the generator count of a torsion-free subgroup in its index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum GrowthForm {
    /// `f(u) = u^{1−α}`.
    Power { alpha: f64 },
    /// `f(u) = (log u)^κ`.
    LogPower { kappa: f64 },
}

impl GrowthForm {
    fn eval(&self, u: f64) -> f64 {
        match *self {
            GrowthForm::Power { alpha } => u.powf(1.0 - alpha),
            GrowthForm::LogPower { kappa } => u.ln().powf(kappa),
        }
    }
}

/// `(f(v·(log v)^c) + log log v) / v`.
pub fn generator_bound_pipeline(v: f64, c: f64, form: GrowthForm) -> Result<f64> {
    if !(v.is_finite() && v.ln().ln() > 1.0) {
        return Err(Error::Domain(format!("v must exceed e^e, got {v}")));
    }
    let u = v * v.ln().powf(c);
    let out = (form.eval(u) + v.ln().ln()) / v;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow)
    }
}

/// Threshold report with the scan result for `k` filled in.
pub fn grh_report_for_field(
    k: &NumberField,
    dim_g: u32,
    config: &Config,
    threads: usize,
) -> Result<(GrhReport, CongruenceLevel)> {
    let d = u32::try_from(k.degree()).map_err(|_| Error::InvalidInput("degree too large".into()))?;
    let mut report = grh_threshold(d, k.log_abs_disc(), config)?;
    let level = find_congruence_level(k, dim_g, config.prime_scan_cap, threads)?;
    report.smallest_actual_prime_norm = Some(level.norm.clone());
    if level.norm > report.threshold_x {
        report
            .discrepancies
            .push("found prime norm exceeds the threshold".into());
    }
    Ok((report, level))
}
