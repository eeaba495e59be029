//! Run configuration: a JSON document overridden field-by-field by CLI flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{CkError, Result};
use crate::geometry::KappaTriple;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: Option<String>,
    pub kappa: Option<[f64; 3]>,
    #[serde(default)]
    pub coeff: BTreeMap<String, String>,
    pub x0: Option<Vec<f64>>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return Err(CkError::Usage(format!("tolerance must be > 0, got {tol}")));
            }
        }
        if let (Some(t0), Some(t1)) = (self.t0, self.t1) {
            if t1 <= t0 {
                return Err(CkError::Usage(format!(
                    "need t1 > t0, got t0 = {t0}, t1 = {t1}"
                )));
            }
        }
        Ok(())
    }

    pub fn kappa_triple(&self) -> Option<KappaTriple> {
        self.kappa.map(|[a, b, c]| KappaTriple::new(a, b, c))
    }

    /// Overlay non-empty fields of `other` (CLI flags) onto `self`.
    pub fn overridden_by(mut self, other: RunConfig) -> Self {
        if other.system.is_some() {
            self.system = other.system;
        }
        if other.kappa.is_some() {
            self.kappa = other.kappa;
        }
        for (k, v) in other.coeff {
            self.coeff.insert(k, v);
        }
        if other.x0.is_some() {
            self.x0 = other.x0;
        }
        if other.t0.is_some() {
            self.t0 = other.t0;
        }
        if other.t1.is_some() {
            self.t1 = other.t1;
        }
        if other.tol.is_some() {
            self.tol = other.tol;
        }
        if other.seed.is_some() {
            self.seed = other.seed;
        }
        if other.out.is_some() {
            self.out = other.out;
        }
        if other.suite.is_some() {
            self.suite = other.suite;
        }
        self
    }
}

pub fn parse_kappa_flag(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CkError::Usage(format!(
            "--kappa expects k1,k2,k3; got {s:?}"
        )));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CkError::Usage(format!("invalid kappa component {part:?}")))?;
    }
    Ok(out)
}

pub fn parse_coeff_flag(s: &str) -> Result<(String, String)> {
    match s.split_once('=') {
        Some((name, expr)) if !name.trim().is_empty() => {
            Ok((name.trim().to_string(), expr.to_string()))
        }
        _ => Err(CkError::Usage(format!(
            "--coeff expects name=expr; got {s:?}"
        ))),
    }
}

pub fn parse_x0_flag(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CkError::Usage(format!("invalid x0 component {p:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsers() {
        assert_eq!(parse_kappa_flag("1,-1, 0.5").unwrap(), [1.0, -1.0, 0.5]);
        assert!(parse_kappa_flag("1,2").is_err());
        let (name, expr) = parse_coeff_flag("b3=1 + sin(t)").unwrap();
        assert_eq!(name, "b3");
        assert_eq!(expr, "1 + sin(t)");
        assert!(parse_coeff_flag("oops").is_err());
        assert_eq!(parse_x0_flag("1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn validation_rules() {
        let cfg = RunConfig {
            t0: Some(1.0),
            t1: Some(0.5),
            ..Default::default()
        };
        assert!(matches!(cfg.validate(), Err(CkError::Usage(_))));
        let cfg = RunConfig {
            tol: Some(0.0),
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
