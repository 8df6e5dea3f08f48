//! Decimal-string serde adapters for big numbers.

pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub mod opt_bigint_string {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// Rationals as `"n"` or `"n/d"`.
pub mod rational_string {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn to_string(x: &BigRational) -> String {
        x.to_string()
    }

    pub fn parse(s: &str) -> Result<BigRational, String> {
        let mut parts = s.splitn(2, '/');
        let n: BigInt = parts
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|e| format!("{e}"))?;
        let d: BigInt = match parts.next() {
            Some(d) => d.trim().parse().map_err(|e| format!("{e}"))?,
            None => BigInt::from(1),
        };
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    }

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        parse(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        x.iter()
            .map(super::rational_string::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| super::rational_string::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
