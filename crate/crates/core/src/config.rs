//! Run configuration shared by the CLI and the acceptance harness.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::delaunay::{equilibrium_ubar, DEFAULT_EPS_FLOOR};
use crate::numerics::Tolerance;
use crate::{Error, Result};

/// The single global seed for randomized inputs.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// How the Delaunay parameters of a sweep are chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsGrid {
    /// `0.05, 0.10, …` up to `0.95 ū`
    Standard,
    Explicit(Vec<EpsValue>),
    Range { start: f64, step: f64, stop: f64 },
}

/// A Delaunay parameter, either absolute or as a multiple of `ū`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsValue {
    Absolute(f64),
    UbarMultiple(f64),
}

impl EpsValue {
    pub fn resolve(self, n: usize) -> Result<f64> {
        let ubar = equilibrium_ubar(n)?;
        let eps = match self {
            EpsValue::Absolute(e) => e,
            EpsValue::UbarMultiple(m) => m * ubar,
        };
        if !(eps > 0.0 && eps <= ubar) {
            return Err(Error::EpsOutOfRange { eps, ubar });
        }
        if eps < DEFAULT_EPS_FLOOR {
            return Err(Error::EpsBelowFloor { eps, floor: DEFAULT_EPS_FLOOR });
        }
        Ok(eps)
    }
}

impl std::str::FromStr for EpsValue {
    type Err = Error;

    /// `0.5`, `ubar`, or `0.98ubar`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse Delaunay parameter {s:?}"));
        if let Some(mult) = s.strip_suffix("ubar") {
            let mult = mult.trim().trim_end_matches('*');
            let m = if mult.is_empty() { 1.0 } else { mult.parse().map_err(|_| bad())? };
            return Ok(EpsValue::UbarMultiple(m));
        }
        s.parse().map(EpsValue::Absolute).map_err(|_| bad())
    }
}

impl std::str::FromStr for EpsGrid {
    type Err = Error;

    /// `standard`, `start:step:stop`, or a comma-separated list of values.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "standard" {
            return Ok(EpsGrid::Standard);
        }
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let num = |x: &str| {
                x.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad range component {x:?}")))
            };
            if parts.len() != 3 {
                return Err(Error::InvalidArgument(format!("range must be start:step:stop, got {s:?}")));
            }
            return Ok(EpsGrid::Range { start: num(parts[0])?, step: num(parts[1])?, stop: num(parts[2])? });
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(EpsGrid::Explicit)
    }
}

impl EpsGrid {
    /// Sorted parameter values for dimension `n`.
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        let ubar = equilibrium_ubar(n)?;
        let mut out = match self {
            EpsGrid::Standard => standard_grid(n)?,
            EpsGrid::Explicit(v) => v.iter().map(|e| e.resolve(n)).collect::<Result<Vec<_>>>()?,
            EpsGrid::Range { start, step, stop } => {
                if !(*step > 0.0) || !(stop >= start) {
                    return Err(Error::InvalidArgument(format!("bad range {start}:{step}:{stop}")));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                (0..count)
                    .map(|k| EpsValue::Absolute(start + step * k as f64).resolve(n))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        if out.is_empty() {
            return Err(Error::InvalidArgument(format!("empty Delaunay parameter grid for n = {n} (ū = {ubar})")));
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        Ok(out)
    }
}

/// `0.05, 0.10, …` while `≤ 0.95 ū`.
pub fn standard_grid(n: usize) -> Result<Vec<f64>> {
    let ubar = equilibrium_ubar(n)?;
    Ok((1..)
        .map(|k| 0.05 * k as f64)
        .take_while(|e| *e <= 0.95 * ubar)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub eps_grid: EpsGrid,
    pub j_max: usize,
    pub tolerance: Tolerance,
    pub out: PathBuf,
    pub seed: u64,
    /// worker threads for sweeps; 0 lets rayon decide
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 4,
            eps_grid: EpsGrid::Standard,
            j_max: 6,
            tolerance: crate::delaunay::PeriodicOrbit::default_tolerance(),
            out: PathBuf::from("out"),
            seed: DEFAULT_SEED,
            workers: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidDimension { n: self.n });
        }
        if self.j_max < 1 {
            return Err(Error::InvalidArgument("j_max must be at least 1".into()));
        }
        self.eps_grid.values(self.n)?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    /// Hash of the numerical settings; `out` and `workers` do not change results and are left out.
    pub fn hash(&self) -> String {
        let key = RunConfig { out: PathBuf::new(), workers: 0, ..self.clone() };
        let json = serde_json::to_vec(&key).expect("config serializes");
        config_hash(&json)
    }
}

pub fn config_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_stays_below_ubar() {
        for n in 3..=6 {
            let ubar = equilibrium_ubar(n).unwrap();
            let g = standard_grid(n).unwrap();
            assert!((g[0] - 0.05).abs() < 1e-15);
            assert!(*g.last().unwrap() <= 0.95 * ubar);
            assert!(g.last().unwrap() + 0.05 > 0.95 * ubar);
        }
    }

    #[test]
    fn parse_grids() {
        let g: EpsGrid = "0.1,ubar,0.5ubar".parse().unwrap();
        let v = g.values(4).unwrap();
        let ubar = equilibrium_ubar(4).unwrap();
        assert_eq!(v, vec![0.1, 0.5 * ubar, ubar]);
        let r: EpsGrid = "0.1:0.1:0.5".parse().unwrap();
        assert_eq!(r.values(4).unwrap().len(), 5);
        assert!("2.0".parse::<EpsGrid>().unwrap().values(4).is_err());
        assert!("x".parse::<EpsGrid>().is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.out = PathBuf::from("elsewhere");
        b.workers = 3;
        assert_eq!(a.hash(), b.hash());
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
