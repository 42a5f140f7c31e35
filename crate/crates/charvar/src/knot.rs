//! Two-generator knot presentations and their plain-text file format.
//!
//! ```text
//! name: figure8
//! relator: BAbaBabABa
//! meridian: a
//! longitude: BabAAbaB
//! alexander: t^2 - 3*t + 1
//! ```
//!
//! Blank lines and `#` comments are allowed. The two generators are declared
//! conjugate meridians (exploited downstream as the trace identification
//! `y = x`); that the longitude commutes with the meridian is an input
//! contract, not machine-checked.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::VariableRing;
use crate::words::FreeWord;

/// The ring `Q[t]` for Alexander polynomials.
pub fn alexander_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::lex(&["t"])))
}

#[derive(Clone, Debug)]
pub struct KnotPresentation {
    pub name: String,
    pub relator: FreeWord,
    pub meridian: FreeWord,
    pub longitude: FreeWord,
    pub alexander: Option<Polynomial>,
}

impl KnotPresentation {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut relator = None;
        let mut meridian = None;
        let mut longitude = None;
        let mut alexander = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "relator" => relator = Some(FreeWord::parse(value)?),
                "meridian" => meridian = Some(FreeWord::parse(value)?),
                "longitude" => longitude = Some(FreeWord::parse(value)?),
                "alexander" => {
                    alexander = Some(Polynomial::parse(&alexander_ring(), value)?)
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key `{}`",
                        lineno + 1,
                        other
                    )))
                }
            }
        }
        let relator = relator.ok_or_else(|| Error::Parse("missing relator".into()))?;
        if relator.is_empty() {
            return Err(Error::Parse("relator reduces to the identity".into()));
        }
        let longitude =
            longitude.ok_or_else(|| Error::Parse("missing longitude".into()))?;
        Ok(KnotPresentation {
            name: name.unwrap_or_else(|| "unnamed".into()),
            relator,
            meridian: meridian.unwrap_or_else(|| FreeWord::parse("a").unwrap()),
            longitude,
            alexander,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// The bundled figure-eight presentation.
    pub fn figure_eight() -> Self {
        Self::parse(include_str!("../data/figure8.knot")).expect("bundled data parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_figure_eight() {
        let kp = KnotPresentation::figure_eight();
        assert_eq!(kp.name, "figure8");
        assert_eq!(kp.relator.to_string(), "BAbaBabABa");
        assert_eq!(kp.meridian.to_string(), "a");
        assert_eq!(kp.longitude.to_string(), "BabAAbaB");
        let alex = kp.alexander.unwrap();
        assert_eq!(
            alex,
            Polynomial::parse(&alexander_ring(), "t^2 - 3*t + 1").unwrap()
        );
    }

    #[test]
    fn longitude_is_commutator_product() {
        // lambda = tau^-1 delta with tau = a b^-1 a^-1 b, delta = a^-1 b a b^-1
        let tau = FreeWord::parse("aBAb").unwrap();
        let delta = FreeWord::parse("AbaB").unwrap();
        let lambda = tau.inverse().concat(&delta);
        assert_eq!(lambda, KnotPresentation::figure_eight().longitude);
    }

    #[test]
    fn parse_errors() {
        assert!(KnotPresentation::parse("relator: aA\nlongitude: b").is_err());
        assert!(KnotPresentation::parse("longitude: b").is_err());
        assert!(KnotPresentation::parse("relator: ab\nlongitude: b\nfoo: 3").is_err());
    }
}
