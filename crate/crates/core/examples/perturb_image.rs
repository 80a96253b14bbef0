//! Applies each perturbation family to a gradient image and writes the
//! results as PGM files.
//!
//! cargo run --example perturb_image -- [OUT_DIR]

use std::path::PathBuf;

use asi_bench::perturb::{apply_gaussian_noise, apply_salt_pepper, rotate};
use asi_bench::{pnm, Image, Seed};

fn main() -> asi_bench::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "perturbed".into()));
    std::fs::create_dir_all(&out).map_err(|e| asi_bench::Error::io(&out, e))?;

    let img = Image::from_fn_gray(64, 64, |x, y| (x + y) as f32 / 126.0)?;
    let variants = [
        ("clean", img.clone()),
        ("sp_0.2", apply_salt_pepper(&img, 0.2, Seed(1))?),
        ("ga_0.1", apply_gaussian_noise(&img, 0.1, Seed(1))?),
        ("rot_30", rotate(&img, 30.0)?),
    ];
    for (name, v) in &variants {
        let path = out.join(format!("{name}.pgm"));
        pnm::write(v, &path)?;
        let (mean, var) = v.mean_and_variance();
        println!(
            "{name:>7}: mean {mean:.4} var {var:.4} changed {:>4} px -> {}",
            img.count_changed_pixels(v),
            path.display()
        );
    }
    Ok(())
}
