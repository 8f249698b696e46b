//! Mixtures of isotropic Gaussians with known cluster labels.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Dataset, Error, Result, RngStream};

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSpec {
    pub center: Vec<f64>,
    pub std: f64,
    pub count: usize,
}

impl ClusterSpec {
    pub fn new(center: Vec<f64>, std: f64, count: usize) -> Self {
        Self { center, std, count }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    clusters: Vec<ClusterSpec>,
    seed: u64,
}

impl GeneratorSpec {
    pub fn new(clusters: Vec<ClusterSpec>, seed: u64) -> Result<Self> {
        let Some(first) = clusters.first() else {
            return Err(Error::Config("generator needs at least one cluster".into()));
        };
        let p = first.center.len();
        for (j, c) in clusters.iter().enumerate() {
            if c.center.len() != p || p == 0 {
                return Err(Error::Config(format!(
                    "cluster {j} center has {} coordinates, expected {p} > 0",
                    c.center.len()
                )));
            }
            if c.center.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("cluster {j} center is not finite")));
            }
            if !(c.std > 0.0 && c.std.is_finite()) {
                return Err(Error::Config(format!(
                    "cluster {j} standard deviation must be positive, got {}",
                    c.std
                )));
            }
            if c.count == 0 {
                return Err(Error::Config(format!("cluster {j} has no points")));
            }
        }
        Ok(Self { clusters, seed })
    }

    /// Parses `center:std:count` groups separated by `;`, the center written
    /// as comma-separated coordinates, e.g. `0,0:1:2000;10,10:1:100`.
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let bad = |g: &str| Error::Config(format!("cluster `{g}` is not center:std:count"));
        let mut clusters = Vec::new();
        for group in text.split(';').map(str::trim).filter(|g| !g.is_empty()) {
            let parts: Vec<&str> = group.split(':').collect();
            let [center, std, count] = parts[..] else {
                return Err(bad(group));
            };
            let center = center
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad(group))?;
            let std = std.trim().parse().map_err(|_| bad(group))?;
            let count = count.trim().parse().map_err(|_| bad(group))?;
            clusters.push(ClusterSpec::new(center, std, count));
        }
        Self::new(clusters, seed)
    }

    pub fn clusters(&self) -> &[ClusterSpec] {
        &self.clusters
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws every cluster's points in order; labels are cluster ordinals.
pub fn generate(spec: &GeneratorSpec) -> Dataset {
    let mut rng = RngStream::new(spec.seed);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (label, c) in spec.clusters.iter().enumerate() {
        for _ in 0..c.count {
            let x = c
                .center
                .iter()
                .map(|&mu| {
                    let z: f64 = rng.sample(StandardNormal);
                    mu + c.std * z
                })
                .collect();
            points.push(x);
            labels.push(label as i64);
        }
    }
    Dataset::new(points, Some(labels)).expect("generator specs yield finite points")
}
