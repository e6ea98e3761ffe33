//! Log-log scaling fits of sweep tables against symbolic growth models.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};

use crate::sweep::TableRow;

/// Symbolic growth model g(n) for the ratio table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingModel {
    N2,
    N3,
    N3Log2,
    N4,
    /// Grid cover model for m-LOTZ: `n * (2n/m)^(m/2) * ln(n/m)`.
    Grid(u32),
}

impl ScalingModel {
    pub fn value(&self, n: f64) -> f64 {
        match self {
            ScalingModel::N2 => n.powi(2),
            ScalingModel::N3 => n.powi(3),
            ScalingModel::N3Log2 => n.powi(3) * n.ln() * n.ln(),
            ScalingModel::N4 => n.powi(4),
            ScalingModel::Grid(m) => {
                let m = *m as f64;
                n * (2.0 * n / m).powf(m / 2.0) * (n / m).ln()
            }
        }
    }
}

impl FromStr for ScalingModel {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n2" => Ok(ScalingModel::N2),
            "n3" => Ok(ScalingModel::N3),
            "n3log2" => Ok(ScalingModel::N3Log2),
            "n4" => Ok(ScalingModel::N4),
            other => {
                let inner = other
                    .strip_prefix("grid(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| {
                        anyhow!("unknown model {other:?}, expected n2 | n3 | n3log2 | n4 | grid(m)")
                    })?;
                let m: u32 = inner.parse().map_err(|_| anyhow!("bad grid objective count {inner:?}"))?;
                if m < 2 || !m.is_multiple_of(2) {
                    bail!("grid(m) needs an even m >= 2, got {m}");
                }
                Ok(ScalingModel::Grid(m))
            }
        }
    }
}

impl fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingModel::N2 => write!(f, "n2"),
            ScalingModel::N3 => write!(f, "n3"),
            ScalingModel::N3Log2 => write!(f, "n3log2"),
            ScalingModel::N4 => write!(f, "n4"),
            ScalingModel::Grid(m) => write!(f, "grid({m})"),
        }
    }
}

/// Which per-run time a fit works on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitMetric {
    FullFront,
    FirstPareto,
}

impl FromStr for FitMetric {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-front" => Ok(FitMetric::FullFront),
            "first-pareto" => Ok(FitMetric::FirstPareto),
            other => bail!("unknown metric {other:?}, expected full-front | first-pareto"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FitPoint {
    pub n: u32,
    pub mean: f64,
    pub ratio: f64,
    pub samples: usize,
    pub censored: usize,
}

#[derive(Clone, Debug)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<FitPoint>,
    /// Sizes dropped because every replicate was censored.
    pub excluded: Vec<u32>,
}

impl FitResult {
    pub fn max_ratio_spread(&self) -> f64 {
        let ratios: Vec<f64> = self.points.iter().map(|p| p.ratio).collect();
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }

    pub fn total_censored(&self) -> usize {
        self.points.iter().map(|p| p.censored).sum()
    }
}

/// Least-squares slope of `ln(mean metric)` against `ln n`, plus the
/// per-size ratio `mean / g(n)`. Sizes whose replicates are all censored
/// are excluded. Needs at least three usable sizes.
pub fn fit_scaling(rows: &[TableRow], metric: FitMetric, model: ScalingModel) -> Result<FitResult> {
    let mut groups: BTreeMap<u32, (Vec<u64>, usize)> = BTreeMap::new();
    for row in rows {
        let entry = groups.entry(row.n).or_default();
        let value = match metric {
            FitMetric::FullFront => row.iterations_to_full_front,
            FitMetric::FirstPareto => row.iterations_to_first_pareto,
        };
        match value {
            Some(v) => entry.0.push(v),
            None => entry.1 += 1,
        }
    }
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for (&n, (values, censored)) in &groups {
        if values.is_empty() {
            excluded.push(n);
            continue;
        }
        let mean = values.iter().sum::<u64>() as f64 / values.len() as f64;
        points.push(FitPoint {
            n,
            mean,
            ratio: mean / model.value(n as f64),
            samples: values.len(),
            censored: *censored,
        });
    }
    if points.len() < 3 {
        bail!(
            "need at least 3 sizes with uncensored means, have {} (excluded: {excluded:?})",
            points.len()
        );
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let y_mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(FitResult {
        slope,
        intercept: y_mean - slope * x_mean,
        points,
        excluded,
    })
}
