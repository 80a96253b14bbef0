//! Normalized raster images.
//!
//! Every intensity lives in `[0.0, 1.0]`. Pixels are stored row-major with
//! interleaved channels, so sample `(x, y, c)` is at
//! `(y * width + x) * channels + c`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray,
    Rgb,
}

impl Channels {
    pub fn count(self) -> usize {
        match self {
            Channels::Gray => 1,
            Channels::Rgb => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: Channels,
    data: Vec<f32>,
}

impl Image {
    /// Builds an image from raw samples, rejecting wrong lengths and
    /// intensities outside `[0, 1]`.
    pub fn new(width: usize, height: usize, channels: Channels, data: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width * height * channels.count();
        if data.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "expected {expected} samples for {width}x{height}x{}, got {}",
                channels.count(),
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "intensity {bad} outside [0, 1]"
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, channels: Channels, value: f32) -> Result<Self> {
        Self::new(
            width,
            height,
            channels,
            vec![value; width * height * channels.count()],
        )
    }

    /// Builds a grayscale image from a function of pixel coordinates.
    /// Values are clamped to `[0, 1]`.
    pub fn from_fn_gray(width: usize, height: usize, f: impl Fn(usize, usize) -> f32) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(clamp_unit(f(x, y)));
            }
        }
        Self::new(width, height, Channels::Gray, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<f32> {
        self.data
    }

    pub fn get(&self, x: usize, y: usize, c: usize) -> f32 {
        self.data[self.index(x, y) + c]
    }

    /// Samples of the pixel at `(x, y)`.
    pub fn pixel(&self, x: usize, y: usize) -> &[f32] {
        let start = self.index(x, y);
        &self.data[start..start + self.channels.count()]
    }

    pub(crate) fn pixel_mut(&mut self, x: usize, y: usize) -> &mut [f32] {
        let start = self.index(x, y);
        let n = self.channels.count();
        &mut self.data[start..start + n]
    }

    pub(crate) fn samples_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    /// Same geometry as `self`, every sample set to `value`.
    pub(crate) fn blank_like(&self, value: f32) -> Self {
        Self {
            width: self.width,
            height: self.height,
            channels: self.channels,
            data: vec![value; self.data.len()],
        }
    }

    /// Number of pixel positions whose samples differ in any channel.
    pub fn count_changed_pixels(&self, other: &Image) -> usize {
        assert_eq!(
            (self.width, self.height, self.channels),
            (other.width, other.height, other.channels),
            "images must share geometry"
        );
        let n = self.channels.count();
        self.data
            .chunks_exact(n)
            .zip(other.data.chunks_exact(n))
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Mean and population variance over all samples.
    pub fn mean_and_variance(&self) -> (f64, f64) {
        let n = self.data.len() as f64;
        let mean = self.data.iter().map(|&v| v as f64).sum::<f64>() / n;
        let var = self
            .data
            .iter()
            .map(|&v| {
                let d = v as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / n;
        (mean, var)
    }

    fn index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.width && y < self.height);
        (y * self.width + x) * self.channels.count()
    }
}

#[inline]
pub(crate) fn clamp_unit(v: f32) -> f32 {
    if v.is_nan() {
        0.0
    } else {
        v.clamp(0.0, 1.0)
    }
}
