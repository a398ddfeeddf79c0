use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::Error;
use crate::lower::basis_metrics;
use crate::synth::{incrementor, mcx_clean, mcx_dirty, mcx_no_ancilla, SplitPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    McxClean,
    McxDirty,
    Incrementor,
    McxNoAncilla,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::McxClean, Family::McxDirty, Family::Incrementor, Family::McxNoAncilla];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::McxClean => "mcx_clean",
            Family::McxDirty => "mcx_dirty",
            Family::Incrementor => "incrementor",
            Family::McxNoAncilla => "mcx_no_ancilla",
        }
    }

    pub fn build(self, n: usize, policy: &SplitPolicy) -> Result<Circuit, Error> {
        match self {
            Family::McxClean => mcx_clean(n, policy),
            Family::McxDirty => mcx_dirty(n, policy),
            Family::Incrementor => incrementor(n, policy),
            Family::McxNoAncilla => mcx_no_ancilla(n, policy),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub depth_mcx: usize,
    pub depth_basis: usize,
    pub size: usize,
    pub size_basis: usize,
    pub ancilla_clean: usize,
    pub ancilla_dirty: usize,
}

/// `depth(2n) − depth(n)` for consecutive rows where `n` doubles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthStep {
    pub n: usize,
    pub diff: i64,
}

/// Least-squares fit `depth ≈ a·(log₂ n)² + b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogSquaredFit {
    pub a: f64,
    pub b: f64,
    /// `‖depth − fit‖₂ / ‖depth‖₂` over the fitted points.
    pub relative_residual: f64,
    /// Largest pointwise `|depth − fit| / depth`.
    pub max_relative_residual: f64,
}

impl LogSquaredFit {
    pub fn predict(&self, n: usize) -> f64 {
        let l = (n as f64).log2();
        self.a * l * l + self.b
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub family: Family,
    pub rows: Vec<ScalingRow>,
    pub depth_steps: Vec<DepthStep>,
    pub fit: Option<LogSquaredFit>,
}

pub fn fit_log_squared(points: &[(usize, usize)]) -> Option<LogSquaredFit> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(n, _)| *n >= 2).map(|&(n, d)| ((n as f64).log2().powi(2), d as f64)).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x, sy + y));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let a = sxy / sxx;
    let b = my - a * mx;
    let residuals: Vec<f64> = pts.iter().map(|(x, y)| y - (a * x + b)).collect();
    let norm = |v: &mut dyn Iterator<Item = f64>| v.map(|r| r * r).sum::<f64>().sqrt();
    let data_norm = norm(&mut pts.iter().map(|p| p.1));
    let relative_residual = if data_norm > 0.0 { norm(&mut residuals.iter().copied()) / data_norm } else { 0.0 };
    let max_relative_residual =
        residuals.iter().zip(&pts).map(|(r, (_, y))| (r / y.max(1.0)).abs()).fold(0.0, f64::max);
    Some(LogSquaredFit { a, b, relative_residual, max_relative_residual })
}

pub fn scaling_report(family: Family, ns: &[usize], policy: &SplitPolicy) -> Result<ScalingReport, Error> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("sizes must be strictly ascending".into()));
    }
    let rows: Vec<ScalingRow> = ns
        .par_iter()
        .map(|&n| {
            let c = family.build(n, policy)?;
            let (depth_basis, size_basis) = basis_metrics(&c)?;
            let r = c.report();
            Ok(ScalingRow {
                n,
                depth_mcx: r.depth,
                depth_basis,
                size: r.size,
                size_basis,
                ancilla_clean: r.ancilla_clean,
                ancilla_dirty: r.ancilla_dirty,
            })
        })
        .collect::<Result<_, Error>>()?;
    let depth_steps = rows
        .windows(2)
        .filter(|w| w[1].n == 2 * w[0].n)
        .map(|w| DepthStep { n: w[0].n, diff: w[1].depth_mcx as i64 - w[0].depth_mcx as i64 })
        .collect();
    let fit = match family {
        Family::Incrementor | Family::McxNoAncilla => {
            fit_log_squared(&rows.iter().map(|r| (r.n, r.depth_mcx)).collect::<Vec<_>>())
        }
        _ => None,
    };
    Ok(ScalingReport { family, rows, depth_steps, fit })
}
