//! Session configuration: the JSON file accepted by `--config`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use svir_core::lattice::OddCentralSign;
use svir_core::parse::parse_scalar;
use svir_core::repmod::{Family, ModuleSpec};
use svir_core::scalar::Symbols;
use svir_core::{AlgebraConfig, HalfInt};

use crate::UsageError;

/// A number or a `p/q` literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn half_int(&self) -> Result<HalfInt, UsageError> {
        match self {
            Literal::Int(n) => Ok(HalfInt::from_int(*n)),
            Literal::Text(t) => parse_half(t),
        }
    }
}

pub fn parse_half(text: &str) -> Result<HalfInt, UsageError> {
    let bad = || UsageError(format!("`{text}` is not a half-integer"));
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    HalfInt::from_ratio(n, d).ok_or_else(bad)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralSign {
    AsPrinted,
    Flipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_names: Option<Vec<String>>,
    pub sigma: Vec<Literal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Scalar literals for `a`, `b` or `a'`; missing ones stay symbolic.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<i64>,
    /// Indeterminates beyond the basis names; defaults to `a, b, a'`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_central: Option<CentralSign>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            n: 2,
            d_names: None,
            sigma: vec![Literal::Text("1/2".into()), Literal::Int(0)],
            family: None,
            params: BTreeMap::new(),
            radius: None,
            symbols: None,
            odd_central: None,
        }
    }
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
    }

    pub fn d_names(&self) -> Vec<String> {
        self.d_names
            .clone()
            .unwrap_or_else(|| (1..=self.n).map(|i| format!("d{i}")).collect())
    }

    pub fn algebra(&self) -> Result<AlgebraConfig, UsageError> {
        let d = self.d_names();
        if d.len() != self.n {
            return Err(UsageError(format!(
                "d_names has {} entries but n = {}",
                d.len(),
                self.n
            )));
        }
        let extra = self
            .symbols
            .clone()
            .unwrap_or_else(|| ["a", "b", "a'"].map(String::from).to_vec());
        let symbols = Symbols::new(d.iter().cloned().chain(extra))
            .map_err(|e| UsageError(format!("symbols: {e}")))?;
        let sigma = self
            .sigma
            .iter()
            .map(Literal::half_int)
            .collect::<Result<Vec<_>, _>>()?;
        let names: Vec<&str> = d.iter().map(String::as_str).collect();
        let config = AlgebraConfig::new(symbols, &names, sigma)
            .map_err(|e| UsageError(format!("config: {e}")))?;
        Ok(match self.odd_central {
            Some(CentralSign::Flipped) => config.with_odd_central(OddCentralSign::Flipped),
            _ => config,
        })
    }

    /// The module family named by `flag`, falling back to the config.
    pub fn family(&self, flag: Option<&str>) -> Result<Family, UsageError> {
        let tag = flag
            .or(self.family.as_deref())
            .ok_or_else(|| UsageError("no module family given".into()))?;
        Family::from_tag(tag).ok_or_else(|| {
            UsageError(format!("unknown family `{tag}` (expected SA, SAprime or SBprime)"))
        })
    }

    pub fn module(&self, config: &AlgebraConfig, family: Family) -> Result<ModuleSpec, UsageError> {
        let allowed: &[&str] = match family {
            Family::SA => &["a", "b"],
            Family::SAPrime | Family::SBPrime => &["a'"],
        };
        if let Some(k) = self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(UsageError(format!("parameter `{k}` does not apply to {family}")));
        }
        let param = |name: &str| {
            let text = self.params.get(name).map_or(name, String::as_str);
            parse_scalar(config.symbols(), text)
                .map_err(|e| UsageError(format!("parameter `{name}` = `{text}`: {e}")))
        };
        Ok(match family {
            Family::SA => ModuleSpec::SA {
                a: param("a")?,
                b: param("b")?,
            },
            Family::SAPrime => ModuleSpec::SAPrime {
                a_prime: param("a'")?,
            },
            Family::SBPrime => ModuleSpec::SBPrime {
                a_prime: param("a'")?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_rank_two() {
        let c = SessionConfig::default().algebra().unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.sigma(), &[HalfInt::from_twice(1), HalfInt::ZERO]);
    }

    #[test]
    fn parses_json() {
        let text = r#"{"n": 1, "sigma": ["1/2"], "family": "SA", "params": {"b": "1/2"}}"#;
        let cfg: SessionConfig = serde_json::from_str(text).unwrap();
        let alg = cfg.algebra().unwrap();
        let spec = cfg.module(&alg, cfg.family(None).unwrap()).unwrap();
        match spec {
            ModuleSpec::SA { b, .. } => assert_eq!(b, svir_core::Scalar::from_ratio(1, 2)),
            _ => panic!("wrong family"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_half("1/3").is_err());
        assert_eq!(parse_half("-3/2").unwrap(), HalfInt::from_twice(-3));
        let cfg = SessionConfig {
            params: BTreeMap::from([("a'".to_string(), "1".to_string())]),
            ..SessionConfig::default()
        };
        let alg = cfg.algebra().unwrap();
        assert!(cfg.module(&alg, Family::SA).is_err());
        assert!(cfg.family(Some("SC")).is_err());
        let dup = SessionConfig {
            symbols: Some(vec!["d1".into()]),
            ..SessionConfig::default()
        };
        assert!(dup.algebra().is_err());
    }
}
