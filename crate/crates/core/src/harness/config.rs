use std::path::PathBuf;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// γ draws stay this far from ±1.
pub const GAMMA_MARGIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `min:max:count`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidConfig(format!("axis '{s}' is not min:max:count")));
        }
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad number '{x}' in axis '{s}'")))
        };
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidConfig(format!("bad count in axis '{s}'")))?;
        Ok(Axis {
            min: num(parts[0])?,
            max: num(parts[1])?,
            count,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MomentumGrid {
    Cartesian { p1: Axis, p2: Axis },
    Circle { radius: f64, count: usize },
}

impl MomentumGrid {
    pub fn points(&self) -> Vec<[f64; 2]> {
        match *self {
            MomentumGrid::Cartesian { p1, p2 } => {
                let ys = p2.points();
                p1.points()
                    .into_iter()
                    .flat_map(|x| ys.iter().map(move |&y| [x, y]))
                    .collect()
            }
            MomentumGrid::Circle { radius, count } => (0..count)
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / count as f64;
                    [radius * a.cos(), radius * a.sin()]
                })
                .collect(),
        }
    }

    /// A uniform draw from the region the grid spans.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> [f64; 2] {
        let draw = |rng: &mut ChaCha8Rng, a: Axis| {
            if a.min == a.max {
                a.min
            } else {
                rng.gen_range(a.min.min(a.max)..=a.min.max(a.max))
            }
        };
        match *self {
            MomentumGrid::Cartesian { p1, p2 } => [draw(rng, p1), draw(rng, p2)],
            MomentumGrid::Circle { radius, .. } => {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                [radius * a.cos(), radius * a.sin()]
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            MomentumGrid::Cartesian { p1, p2 } => [p1, p2]
                .iter()
                .all(|a| a.count >= 1 && a.min.is_finite() && a.max.is_finite()),
            MomentumGrid::Circle { radius, count } => radius.is_finite() && radius > 0.0 && count >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("invalid momentum grid {self:?}")))
        }
    }
}

impl FromStr for MomentumGrid {
    type Err = Error;

    /// `min:max:count` for both axes, `a:b:n,c:d:m` for p₁ and p₂
    /// separately, or `circle:radius:count`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("circle:") {
            let (r, n) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidConfig(format!("grid '{s}' is not circle:radius:count")))?;
            let radius = r
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad radius in '{s}'")))?;
            let count = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad count in '{s}'")))?;
            return Ok(MomentumGrid::Circle { radius, count });
        }
        match s.split_once(',') {
            Some((a, b)) => Ok(MomentumGrid::Cartesian {
                p1: a.parse()?,
                p2: b.parse()?,
            }),
            None => {
                let a: Axis = s.parse()?;
                Ok(MomentumGrid::Cartesian { p1: a, p2: a })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub gamma_values: Vec<f64>,
    pub beta_values: Vec<f64>,
    pub momentum_grid: MomentumGrid,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let axis = Axis {
            min: -2.0,
            max: 2.0,
            count: 4,
        };
        SuiteConfig {
            gamma_values: vec![-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9],
            beta_values: vec![0.5, 1.0, 2.0],
            momentum_grid: MomentumGrid::Cartesian { p1: axis, p2: axis },
            samples: 100,
            seed: 42,
            tolerance: 1e-10,
            output_path: None,
            format: OutputFormat::Json,
        }
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad number '{x}'")))
        })
        .collect()
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gamma_values.is_empty() || self.beta_values.is_empty() {
            return Err(Error::InvalidConfig("gamma and beta lists must be non-empty".into()));
        }
        for &g in &self.gamma_values {
            crate::clifford::check_gamma(g)?;
        }
        if self.beta_values.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidConfig("beta values must be finite".into()));
        }
        if self.samples < 1 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        self.momentum_grid.validate()
    }

    /// Rejects β = 0, which collapses the splitting.
    pub fn require_splitting(&self) -> Result<()> {
        if self.beta_values.contains(&0.0) {
            return Err(Error::DegenerateSplitting);
        }
        Ok(())
    }

    pub fn gamma_range(&self) -> (f64, f64) {
        let lim = 1.0 - GAMMA_MARGIN;
        let lo = self.gamma_values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.gamma_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo.clamp(-lim, lim), hi.clamp(-lim, lim))
    }

    pub fn beta_range(&self) -> (f64, f64) {
        let lo = self.beta_values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.beta_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: MomentumGrid = "-1:1:3".parse().unwrap();
        assert_eq!(g.points().len(), 9);
        let g: MomentumGrid = "0:1:2,5:5:1".parse().unwrap();
        assert_eq!(g.points(), vec![[0.0, 5.0], [1.0, 5.0]]);
        let g: MomentumGrid = "circle:1:8".parse().unwrap();
        assert!(g.points().iter().all(|p| (p[0].hypot(p[1]) - 1.0).abs() < 1e-15));
        assert!("1:2".parse::<MomentumGrid>().is_err());
        assert!("circle:x:3".parse::<MomentumGrid>().is_err());
    }

    #[test]
    fn validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = SuiteConfig {
            gamma_values: vec![1.5],
            ..SuiteConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::GammaOutOfDomain(_))));
        let bad = SuiteConfig {
            samples: 0,
            ..SuiteConfig::default()
        };
        assert!(bad.validate().is_err());
        let flat = SuiteConfig {
            beta_values: vec![0.0, 1.0],
            ..SuiteConfig::default()
        };
        assert_eq!(flat.require_splitting(), Err(Error::DegenerateSplitting));
        assert_eq!(parse_list("0, -0.5,1e-1").unwrap(), vec![0.0, -0.5, 0.1]);
    }
}
