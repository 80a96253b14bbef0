//! Robustness benchmarking for image classifiers.
//!
//! The crate covers the whole pipeline:
//!
//! * [`perturb`]: seeded salt-and-pepper, Gaussian and rotation kernels and
//!   their ordered composition;
//! * [`registry`]: the catalog of benchmark conditions and materialization of
//!   corrupted image groups with a checksummed manifest;
//! * [`harness`]: per-condition accuracy from a classifier or from a table;
//! * [`metrics`]: mean accuracy, coefficient of variation and the
//!   Accuracy-Stability Index `ASI = (mean − CV) / (mean + CV)`;
//! * [`surface`]: ASI sampled over a (mean, CV) grid;
//! * [`cli`]: the `asi` command.
//!
//! ```
//! use asi_bench::metrics::asi;
//!
//! let index = asi(89.702, 1.479).unwrap();
//! assert!((index - 0.968).abs() < 5e-4);
//! ```

pub mod cli;
pub mod error;
pub mod fixture;
pub mod harness;
pub mod image;
pub mod metrics;
pub mod perturb;
pub mod pnm;
pub mod registry;
pub mod report;
pub mod seed;
pub mod surface;
pub mod synthetic;

pub use error::{Error, Result};
pub use image::{Channels, Image};
pub use perturb::{apply_sequence, PerturbationStep};
pub use seed::Seed;
