//! Mean accuracy, coefficient of variation, and the Accuracy-Stability
//! Index (ASI).
//!
//! For per-condition accuracies `a_1..a_N` (percent):
//!
//! ```text
//! mean = Σ a_c / N
//! CV   = 100 · sqrt(Σ (a_c − mean)² / N) / mean        (population std)
//! ASI  = (mean − CV) / (mean + CV),  mean + CV ≠ 0
//! ```
//!
//! ASI lies in `[-1, 1]`: 1 means zero variation, −1 means zero accuracy.
//! Everything is computed in full `f64`; rounding belongs to rendering.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::harness::AccuracySeries;

/// Divisor used for the variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dispersion {
    /// Divide by N.
    #[default]
    Population,
    /// Divide by N − 1.
    Sample,
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("accuracy series"));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

pub fn mean_accuracy(series: &AccuracySeries) -> Result<f64> {
    mean(&series.accuracies().collect::<Vec<_>>())
}

/// CV in percent using the population standard deviation.
pub fn coefficient_of_variation(series: &AccuracySeries) -> Result<f64> {
    cv_of(&series.accuracies().collect::<Vec<_>>(), Dispersion::Population)
}

/// CV in percent of raw values with the chosen dispersion.
pub fn cv_of(values: &[f64], dispersion: Dispersion) -> Result<f64> {
    let m = mean(values)?;
    if m == 0.0 {
        return Err(Error::UndefinedCv);
    }
    let divisor = match dispersion {
        Dispersion::Population => values.len() as f64,
        Dispersion::Sample if values.len() < 2 => {
            return Err(Error::InvalidParameter(
                "sample standard deviation needs at least two values".into(),
            ))
        }
        Dispersion::Sample => (values.len() - 1) as f64,
    };
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Ok(100.0 * (ss / divisor).sqrt() / m)
}

/// `(mean − cv) / (mean + cv)`.
pub fn asi(mean: f64, cv: f64) -> Result<f64> {
    if !(mean.is_finite() && cv.is_finite()) || mean < 0.0 || cv < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "ASI needs finite mean >= 0 and cv >= 0, got mean {mean}, cv {cv}"
        )));
    }
    let sum = mean + cv;
    if sum == 0.0 {
        return Err(Error::UndefinedAsi);
    }
    Ok((mean - cv) / sum)
}

/// One classifier's summary, the row shape of a score table.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkScore {
    pub classifier_id: String,
    pub mean_accuracy_percent: f64,
    pub cv_percent: f64,
    pub asi: f64,
    /// Series length; `None` when the score was rebuilt from a published
    /// (mean, cv) pair.
    pub n_conditions: Option<usize>,
}

impl BenchmarkScore {
    /// Builds a score from a summary pair, computing ASI.
    pub fn from_summary(classifier_id: impl Into<String>, mean: f64, cv: f64) -> Result<Self> {
        Ok(Self {
            classifier_id: classifier_id.into(),
            mean_accuracy_percent: mean,
            cv_percent: cv,
            asi: asi(mean, cv)?,
            n_conditions: None,
        })
    }
}

pub fn score(series: &AccuracySeries) -> Result<BenchmarkScore> {
    let mean = mean_accuracy(series)?;
    let cv = coefficient_of_variation(series)?;
    Ok(BenchmarkScore {
        classifier_id: series.classifier_id().to_string(),
        mean_accuracy_percent: mean,
        cv_percent: cv,
        asi: asi(mean, cv)?,
        n_conditions: Some(series.len()),
    })
}

/// Which side of a comparison has the larger ASI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preferred {
    A,
    B,
    Tie,
}

/// Relative change of `b` against baseline `a`, in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeDelta {
    pub cv_delta_percent: f64,
    pub mean_delta_percent: f64,
    pub asi_ordering: Preferred,
}

pub fn compare(a: &BenchmarkScore, b: &BenchmarkScore) -> Result<RelativeDelta> {
    if a.cv_percent == 0.0 {
        return Err(Error::UndefinedDelta("cv"));
    }
    if a.mean_accuracy_percent == 0.0 {
        return Err(Error::UndefinedDelta("mean accuracy"));
    }
    let asi_ordering = match a.asi.partial_cmp(&b.asi) {
        Some(Ordering::Greater) => Preferred::A,
        Some(Ordering::Less) => Preferred::B,
        _ => Preferred::Tie,
    };
    Ok(RelativeDelta {
        cv_delta_percent: 100.0 * (b.cv_percent / a.cv_percent - 1.0),
        mean_delta_percent: 100.0 * (b.mean_accuracy_percent / a.mean_accuracy_percent - 1.0),
        asi_ordering,
    })
}
