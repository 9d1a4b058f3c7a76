use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, QhaError, Result};

/// An exponent `p ∈ [1, ∞]` for L^p and Schatten-p norms.
///
/// Serialized as a JSON number, or as the string `"inf"` for `p = ∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(invalid(format!("exponent must lie in [1, inf], got {p}")))
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// ℓ^p norm of a sequence of magnitudes, each weighted by `weight`.
    pub(crate) fn norm_of<I: IntoIterator<Item = f64>>(self, magnitudes: I, weight: f64) -> f64 {
        match self {
            Exponent::Infinity => magnitudes.into_iter().fold(0.0, f64::max),
            Exponent::Finite(1.0) => weight * magnitudes.into_iter().sum::<f64>(),
            Exponent::Finite(2.0) => {
                (weight * magnitudes.into_iter().map(|m| m * m).sum::<f64>()).sqrt()
            }
            Exponent::Finite(p) => {
                let mags: Vec<f64> = magnitudes.into_iter().collect();
                let top = mags.iter().copied().fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                // scale by the largest entry to keep |m|^p in range
                let s: f64 = mags.iter().map(|m| (m / top).powf(p)).sum();
                top * (weight * s).powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = QhaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| invalid(format!("cannot parse exponent `{other}`")))?;
                Exponent::new(p)
            }
        }
    }
}

/// Parse a comma-separated list such as `1,2,inf`.
pub fn parse_list(s: &str) -> Result<Vec<Exponent>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Exponent::new(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_below_one() {
        assert!(Exponent::new(0.5).is_err());
        assert!("0.99".parse::<Exponent>().is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn infinity_round_trips_as_string() {
        let v = serde_json::to_string(&vec![Exponent::ONE, Exponent::Infinity]).unwrap();
        assert_eq!(v, r#"[1.0,"inf"]"#);
        let back: Vec<Exponent> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![Exponent::ONE, Exponent::Infinity]);
    }

    #[test]
    fn list_parsing() {
        assert_eq!(
            parse_list("1,2,inf").unwrap(),
            vec![Exponent::ONE, Exponent::TWO, Exponent::Infinity]
        );
    }
}
