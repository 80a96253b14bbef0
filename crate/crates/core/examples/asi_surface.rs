//! Samples ASI over (mean, CV) and writes a CSV grid plus a matplotlib
//! script that plots it.
//!
//! cargo run --example asi_surface -- [OUT.csv]

use std::path::PathBuf;

use asi_bench::surface::{
    emit_grid, plot_script, query, surface_grid, GridFormat, DEFAULT_CV_RANGE, DEFAULT_MEAN_RANGE,
    DEFAULT_RESOLUTION,
};

fn main() -> asi_bench::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "asi_surface.csv".into()));
    let grid = surface_grid(DEFAULT_MEAN_RANGE, DEFAULT_CV_RANGE, DEFAULT_RESOLUTION)?;
    emit_grid(&grid, GridFormat::Csv, &out)?;
    let script = out.with_file_name("plot_surface.py");
    let name = out.file_name().unwrap().to_string_lossy();
    std::fs::write(&script, plot_script(&name)).map_err(|e| asi_bench::Error::io(&script, e))?;
    println!(
        "{}x{} grid ({} masked) -> {}, plot with python3 {}",
        grid.mean_axis.len(),
        grid.cv_axis.len(),
        grid.masked_count(),
        out.display(),
        script.display()
    );
    for (m, cv) in [(90.0, 1.5), (90.0, 5.0), (60.0, 1.5)] {
        println!("asi({m}, {cv}) = {:.4}", query(m, cv).unwrap());
    }
    Ok(())
}
