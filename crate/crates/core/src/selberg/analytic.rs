//! Logarithmic integral, the GRH error term and the resulting threshold.

use num_bigint::BigInt;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::serde_util::{bigint_string, opt_bigint_string};

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return (v, err);
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive(f, a, m, tol * 0.5, depth - 1);
    let (r, er) = adaptive(f, m, b, tol * 0.5, depth - 1);
    (l + r, el + er)
}

/// `∫_a^b f` with an estimated absolute error; `rel_tol` is relative to a
/// first coarse estimate of the integral.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let (coarse, _) = gk15(&f, a, b);
    let tol = (coarse.abs() * rel_tol).max(f64::MIN_POSITIVE);
    adaptive(&f, a, b, tol, 40)
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x >= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("x must be >= 2, got {x}")))
    }
}

/// `Li(x) = ∫_2^x dt / log t`, computed as `∫_{log 2}^{log x} e^u / u du`.
pub fn logarithmic_integral(x: f64) -> Result<f64> {
    check_x(x)?;
    let (v, _) = integrate(|u| u.exp() / u, std::f64::consts::LN_2, x.ln(), 1e-12);
    Ok(v)
}

/// The elementary lower bound `x / log x`.
pub fn li_surrogate(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(x / x.ln())
}

/// `Err(x) = 13·√x·(log D + d·log x)`.
pub fn grh_error(x: f64, d: u32, log_d: f64) -> Result<f64> {
    check_x(x)?;
    Ok(13.0 * x.sqrt() * (log_d + d as f64 * x.ln()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrhReport {
    pub d: u32,
    pub log_d: f64,
    #[serde(with = "bigint_string")]
    pub threshold_x: BigInt,
    pub li_at_threshold: f64,
    pub err_at_threshold: f64,
    /// Both sides one step below the threshold, where the inequality fails.
    pub li_below: f64,
    pub err_below: f64,
    /// Norm of the level found by the prime scan, when a field was given.
    #[serde(with = "opt_bigint_string")]
    pub smallest_actual_prime_norm: Option<BigInt>,
    pub config: Config,
    pub discrepancies: Vec<String>,
}

fn crossing(x: u64, d: u32, log_d: f64) -> Result<(bool, f64, f64)> {
    let xf = x as f64;
    let li = logarithmic_integral(xf)?;
    let err = grh_error(xf, d, log_d)?;
    Ok((li > err + (d as f64) * (d as f64), li, err))
}

/// Smallest integer `x` with `Li(x) > Err(x) + d²`, found by doubling from
/// 2 and then bisecting the last doubling step.
pub fn grh_threshold(d: u32, log_d: f64, config: &Config) -> Result<GrhReport> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be >= 1".into()));
    }
    if !(log_d.is_finite() && log_d >= 0.0) {
        return Err(Error::InvalidInput(format!("log D must be >= 0, got {log_d}")));
    }
    let mut hi: u64 = 2;
    loop {
        if crossing(hi, d, log_d)?.0 {
            break;
        }
        hi = hi.checked_mul(2).ok_or(Error::Overflow)?;
    }
    let mut lo = hi / 2;
    if lo < 2 {
        lo = 2;
    }
    // invariant: lo fails (or lo == hi == 2 passes), hi passes
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if crossing(mid, d, log_d)?.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (_, li, err) = crossing(hi, d, log_d)?;
    let (_, li_below, err_below) = crossing(lo, d, log_d)?;
    Ok(GrhReport {
        d,
        log_d,
        threshold_x: BigInt::from(hi),
        li_at_threshold: li,
        err_at_threshold: err,
        li_below,
        err_below,
        smallest_actual_prime_norm: None,
        config: config.clone(),
        discrepancies: vec![
            "closed form C2*(log D + d)^(2+eps) not evaluated: constant unspecified; threshold solved numerically"
                .into(),
        ],
    })
}
