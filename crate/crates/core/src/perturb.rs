//! Deterministic corruption kernels and their ordered composition.
//!
//! All kernels are pure functions of `(image, parameters, seed)`. Zero
//! intensity (density 0, sigma 0, 0 degrees) returns the input unchanged.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::{clamp_unit, Image};
use crate::seed::Seed;

/// One corruption with its intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PerturbationStep {
    Identity,
    /// Fraction of pixel positions forced to 0.0 or 1.0.
    SaltPepper { density: f64 },
    /// Standard deviation of additive noise on the `[0, 1]` scale.
    GaussianNoise { sigma: f64 },
    /// Signed degrees, positive is clockwise.
    Rotation { degrees: f64 },
}

impl PerturbationStep {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PerturbationStep::Identity => Ok(()),
            PerturbationStep::SaltPepper { density } => check_density(density),
            PerturbationStep::GaussianNoise { sigma } => check_sigma(sigma),
            PerturbationStep::Rotation { degrees } => check_degrees(degrees),
        }
    }

    /// Short kind tag used in registry documents and labels.
    pub fn kind_tag(&self) -> &'static str {
        match self {
            PerturbationStep::Identity => "ID",
            PerturbationStep::SaltPepper { .. } => "SP",
            PerturbationStep::GaussianNoise { .. } => "GA",
            PerturbationStep::Rotation { .. } => "ROT",
        }
    }

    pub fn intensity(&self) -> Option<f64> {
        match *self {
            PerturbationStep::Identity => None,
            PerturbationStep::SaltPepper { density } => Some(density),
            PerturbationStep::GaussianNoise { sigma } => Some(sigma),
            PerturbationStep::Rotation { degrees } => Some(degrees),
        }
    }

    /// True when the step cannot change any image.
    pub fn is_identity(&self) -> bool {
        self.intensity().is_none_or(|v| v == 0.0)
    }

    pub fn apply(&self, img: &Image, seed: Seed) -> Result<Image> {
        match *self {
            PerturbationStep::Identity => Ok(img.clone()),
            PerturbationStep::SaltPepper { density } => apply_salt_pepper(img, density, seed),
            PerturbationStep::GaussianNoise { sigma } => apply_gaussian_noise(img, sigma, seed),
            PerturbationStep::Rotation { degrees } => rotate(img, degrees),
        }
    }
}

impl fmt::Display for PerturbationStep {
    /// Compact label form, e.g. `SP0.1`, `GA0.15`, `ROT-30`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.intensity() {
            None => f.write_str("ID"),
            Some(v) => write!(f, "{}{}", self.kind_tag(), v),
        }
    }
}

fn check_density(density: f64) -> Result<()> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "salt-and-pepper density {density} outside [0, 1]"
        )))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gaussian sigma {sigma} must be finite and >= 0"
        )))
    }
}

fn check_degrees(degrees: f64) -> Result<()> {
    if degrees.is_finite() && degrees > -360.0 && degrees < 360.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "rotation {degrees} degrees outside (-360, 360)"
        )))
    }
}

/// Impulse noise.
///
/// Exactly `round(density * width * height)` positions are drawn without
/// replacement; each gets 0.0 or 1.0 in every channel by a fair coin.
pub fn apply_salt_pepper(img: &Image, density: f64, seed: Seed) -> Result<Image> {
    check_density(density)?;
    let n = img.pixel_count();
    let hits = (density * n as f64).round() as usize;
    let mut out = img.clone();
    if hits == 0 {
        return Ok(out);
    }
    let mut rng = seed.rng();
    let positions = rand::seq::index::sample(&mut rng, n, hits.min(n));
    let width = img.width();
    for pos in positions.iter() {
        let value = if rng.random::<bool>() { 1.0 } else { 0.0 };
        out.pixel_mut(pos % width, pos / width).fill(value);
    }
    Ok(out)
}

/// Additive zero-mean normal noise, one independent draw per sample,
/// clamped back to `[0, 1]`.
pub fn apply_gaussian_noise(img: &Image, sigma: f64, seed: Seed) -> Result<Image> {
    check_sigma(sigma)?;
    let mut out = img.clone();
    if sigma == 0.0 {
        return Ok(out);
    }
    let normal = Normal::new(0.0, sigma)
        .map_err(|e| Error::InvalidParameter(format!("gaussian sigma {sigma}: {e}")))?;
    let mut rng = seed.rng();
    for v in out.samples_mut() {
        let noisy = *v as f64 + normal.sample(&mut rng);
        *v = clamp_unit(noisy as f32);
    }
    Ok(out)
}

/// Rotates about the image center, keeping the input dimensions.
///
/// Positive angles turn the content clockwise as displayed (y grows
/// downward). Each output pixel inverse-maps into the source and is
/// resampled bilinearly; taps falling outside the source read as 0.0.
pub fn rotate(img: &Image, degrees: f64) -> Result<Image> {
    check_degrees(degrees)?;
    if degrees == 0.0 {
        return Ok(img.clone());
    }
    let (sin, cos) = libm::sincos(degrees.to_radians());
    let (w, h) = (img.width(), img.height());
    let cx = (w as f64 - 1.0) * 0.5;
    let cy = (h as f64 - 1.0) * 0.5;
    let channels = img.channels().count();
    let mut out = img.blank_like(0.0);
    let mut acc = [0.0f64; 3];

    for y in 0..h {
        for x in 0..w {
            let dx = x as f64 - cx;
            let dy = y as f64 - cy;
            let sx = cos * dx + sin * dy + cx;
            let sy = -sin * dx + cos * dy + cy;
            let x0 = sx.floor();
            let y0 = sy.floor();
            let fx = sx - x0;
            let fy = sy - y0;
            let taps = [
                (x0, y0, (1.0 - fx) * (1.0 - fy)),
                (x0 + 1.0, y0, fx * (1.0 - fy)),
                (x0, y0 + 1.0, (1.0 - fx) * fy),
                (x0 + 1.0, y0 + 1.0, fx * fy),
            ];
            acc[..channels].fill(0.0);
            for (tx, ty, weight) in taps {
                if weight == 0.0 || tx < 0.0 || ty < 0.0 || tx >= w as f64 || ty >= h as f64 {
                    continue;
                }
                let src = img.pixel(tx as usize, ty as usize);
                for (a, &s) in acc.iter_mut().zip(src) {
                    *a += weight * s as f64;
                }
            }
            for (o, &a) in out.pixel_mut(x, y).iter_mut().zip(&acc) {
                *o = clamp_unit(a as f32);
            }
        }
    }
    Ok(out)
}

/// Applies `steps` strictly in order. Step `i` draws its randomness from
/// `seed.derive(i)`, so swapping two steps also swaps their sub-seeds.
pub fn apply_sequence(img: &Image, steps: &[PerturbationStep], seed: Seed) -> Result<Image> {
    for step in steps {
        step.validate()?;
    }
    let mut current = img.clone();
    for (i, step) in steps.iter().enumerate() {
        current = step.apply(&current, seed.derive(i as u64))?;
    }
    Ok(current)
}
