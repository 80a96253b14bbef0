//! ASI sampled over a (mean accuracy, CV) grid, for plotting the index as a
//! surface.
//!
//! Every cell is computed by [`metrics::asi`]; cells where it is undefined
//! (mean + CV = 0) are masked as `None`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics;

pub const DEFAULT_MEAN_RANGE: (f64, f64) = (0.0, 100.0);
/// Covers every published CV (max 5.867) with headroom.
pub const DEFAULT_CV_RANGE: (f64, f64) = (0.0, 25.0);
/// 1-point steps along mean, 0.5-point steps along CV over the default ranges.
pub const DEFAULT_RESOLUTION: Resolution = Resolution { mean: 101, cv: 51 };

/// Samples per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub mean: usize,
    pub cv: usize,
}

impl FromStr for Resolution {
    type Err = Error;

    /// `N` for both axes or `MEANxCV`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad resolution {s:?}, expected N or NxM"));
        let (m, c) = s.split_once(['x', 'X']).unwrap_or((s, s));
        Ok(Self {
            mean: m.trim().parse().map_err(|_| bad())?,
            cv: c.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Json,
}

impl FromStr for GridFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(GridFormat::Csv),
            "json" => Ok(GridFormat::Json),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}, expected csv or json"))),
        }
    }
}

/// ASI values, rows indexed by CV and columns by mean accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub mean_axis: Vec<f64>,
    pub cv_axis: Vec<f64>,
    pub values: Vec<Vec<Option<f64>>>,
}

/// Exact ASI at an arbitrary point, `None` where undefined.
pub fn query(mean: f64, cv: f64) -> Option<f64> {
    metrics::asi(mean, cv).ok()
}

fn axis(range: (f64, f64), n: usize, name: &str) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi <= lo {
        return Err(Error::InvalidParameter(format!(
            "{name} range [{lo}, {hi}] must satisfy 0 <= lo < hi"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "{name} axis needs at least 2 samples, got {n}"
        )));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / last })
        .collect())
}

/// Samples both ranges uniformly, endpoints included.
pub fn surface_grid(
    mean_range: (f64, f64),
    cv_range: (f64, f64),
    resolution: Resolution,
) -> Result<SurfaceGrid> {
    let mean_axis = axis(mean_range, resolution.mean, "mean")?;
    let cv_axis = axis(cv_range, resolution.cv, "cv")?;
    let values = cv_axis
        .iter()
        .map(|&cv| mean_axis.iter().map(|&m| query(m, cv)).collect())
        .collect();
    Ok(SurfaceGrid {
        mean_axis,
        cv_axis,
        values,
    })
}

impl SurfaceGrid {
    pub fn value(&self, cv_index: usize, mean_index: usize) -> Option<f64> {
        self.values[cv_index][mean_index]
    }

    pub fn masked_count(&self) -> usize {
        self.values.iter().flatten().filter(|v| v.is_none()).count()
    }

    /// Long-form `mean,cv,asi`, masked cells omitted. Numbers use the
    /// shortest representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mean,cv,asi\n");
        for (row, &cv) in self.values.iter().zip(&self.cv_axis) {
            for (cell, &mean) in row.iter().zip(&self.mean_axis) {
                if let Some(v) = cell {
                    let _ = writeln!(out, "{mean},{cv},{v}");
                }
            }
        }
        out
    }

    /// Axes plus the row-major value matrix, `null` for masked cells.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let grid: SurfaceGrid =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        if grid.values.len() != grid.cv_axis.len()
            || grid.values.iter().any(|r| r.len() != grid.mean_axis.len())
        {
            return Err(Error::validation("surface grid", "matrix shape does not match axes"));
        }
        Ok(grid)
    }
}

/// Parses the long-form CSV back into `(mean, cv, asi)` triples.
pub fn parse_csv(text: &str) -> Result<Vec<(f64, f64, f64)>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "mean,cv,asi")) => {}
        _ => return Err(Error::parse(1, "expected header `mean,cv,asi`")),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let nums: Vec<f64> = line
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(i + 1, format!("bad row {line:?}")))?;
            match nums[..] {
                [m, c, a] => Ok((m, c, a)),
                _ => Err(Error::parse(i + 1, format!("expected 3 columns in {line:?}"))),
            }
        })
        .collect()
}

pub fn emit_grid(grid: &SurfaceGrid, format: GridFormat, destination: &Path) -> Result<()> {
    let text = match format {
        GridFormat::Csv => grid.to_csv(),
        GridFormat::Json => grid.to_json(),
    };
    fs::write(destination, text).map_err(|e| Error::io(destination, e))
}

/// A matplotlib script that plots the long-form CSV at `csv_path`
/// (relative to the script's directory).
pub fn plot_script(csv_path: &str) -> String {
    format!(
        r#"#!/usr/bin/env python3
# Plots the ASI surface from {csv_path}. Requires numpy and matplotlib.
import os
import numpy as np
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
data = np.loadtxt(os.path.join(here, "{csv_path}"), delimiter=",", skiprows=1)
mean, cv, asi = data[:, 0], data[:, 1], data[:, 2]

fig = plt.figure(figsize=(8, 6))
ax = fig.add_subplot(projection="3d")
ax.plot_trisurf(mean, cv, asi, cmap="viridis", linewidth=0)
ax.set_xlabel("Mean accuracy (%)")
ax.set_ylabel("CV (%)")
ax.set_zlabel("ASI")
fig.tight_layout()
fig.savefig(os.path.join(here, "asi_surface.png"), dpi=150)
"#
    )
}
