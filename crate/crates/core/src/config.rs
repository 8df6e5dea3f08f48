//! Constants the bounds depend on but that have no known numeric value.
//!
//! Every default below is illustrative: it only makes the pipelines
//! runnable. Reports carry the configuration they were produced with.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// `log D_k ≤ prasad_c1 · log vol`.
    pub prasad_c1: f64,
    /// `d ≤ prasad_c2 · log vol`.
    pub prasad_c2: f64,
    /// `vol ≤ a · D_K^b` for the lower-bound family.
    pub belolipetsky_a: f64,
    pub belolipetsky_b: f64,
    /// Index of an abelian subgroup in a finite linear group.
    pub jordan_index: f64,
    pub epsilon: f64,
    pub prime_scan_cap: u64,
    /// Front constant of the index bound in terms of `d + log D_k`.
    #[serde(rename = "lemma_C")]
    pub lemma_c: f64,
    /// `c` in the check `log D_K ≤ c · p · log p`.
    pub volume_log_c: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            prasad_c1: 1.0,
            prasad_c2: 1.0,
            belolipetsky_a: 1.0,
            belolipetsky_b: 1.0,
            jordan_index: 1.0,
            epsilon: 0.1,
            prime_scan_cap: 1_000_000,
            lemma_c: 1.0,
            volume_log_c: 1.0,
        }
    }
}

/// A partially specified configuration, as read from a file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub prasad_c1: Option<f64>,
    pub prasad_c2: Option<f64>,
    pub belolipetsky_a: Option<f64>,
    pub belolipetsky_b: Option<f64>,
    pub jordan_index: Option<f64>,
    pub epsilon: Option<f64>,
    pub prime_scan_cap: Option<u64>,
    #[serde(rename = "lemma_C")]
    pub lemma_c: Option<f64>,
    pub volume_log_c: Option<f64>,
}

impl Config {
    /// Applies overrides and returns the names of fields that kept their
    /// illustrative default.
    pub fn with_overrides(o: &ConfigOverrides) -> (Config, Vec<&'static str>) {
        let mut c = Config::default();
        let mut defaulted = Vec::new();
        macro_rules! take {
            ($field:ident, $name:literal) => {
                match o.$field {
                    Some(v) => c.$field = v,
                    None => defaulted.push($name),
                }
            };
        }
        take!(prasad_c1, "prasad_c1");
        take!(prasad_c2, "prasad_c2");
        take!(belolipetsky_a, "belolipetsky_a");
        take!(belolipetsky_b, "belolipetsky_b");
        take!(jordan_index, "jordan_index");
        take!(epsilon, "epsilon");
        take!(prime_scan_cap, "prime_scan_cap");
        take!(lemma_c, "lemma_C");
        take!(volume_log_c, "volume_log_c");
        (c, defaulted)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("prasad_c1", self.prasad_c1),
            ("prasad_c2", self.prasad_c2),
            ("belolipetsky_a", self.belolipetsky_a),
            ("belolipetsky_b", self.belolipetsky_b),
            ("jordan_index", self.jordan_index),
            ("epsilon", self.epsilon),
            ("lemma_C", self.lemma_c),
            ("volume_log_c", self.volume_log_c),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("config {name} must be > 0, got {v}")));
            }
        }
        if self.jordan_index < 1.0 {
            return Err(Error::InvalidInput("config jordan_index must be >= 1".into()));
        }
        if self.prime_scan_cap < 2 {
            return Err(Error::InvalidInput("config prime_scan_cap must be >= 2".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Config::default().validate().unwrap();
    }

    #[test]
    fn overrides_track_defaults() {
        let o = ConfigOverrides { epsilon: Some(0.5), ..Default::default() };
        let (c, d) = Config::with_overrides(&o);
        assert_eq!(c.epsilon, 0.5);
        assert!(!d.contains(&"epsilon"));
        assert!(d.contains(&"lemma_C"));
    }

    #[test]
    fn rejects_nonpositive() {
        let c = Config { epsilon: 0.0, ..Config::default() };
        assert!(c.validate().is_err());
        let c = Config { jordan_index: 0.5, ..Config::default() };
        assert!(c.validate().is_err());
    }
}
