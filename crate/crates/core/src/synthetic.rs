//! Synthetic labeled corpora for running the pipeline without external data.

use rand::Rng;

use crate::image::Image;
use crate::registry::LabeledImage;
use crate::seed::Seed;

/// Class names of [`three_class_corpus`], in label order.
pub const CLASSES: [&str; 3] = ["dark", "textured", "bright"];

/// `per_class` grayscale `size`×`size` images for each of three classes that
/// differ in brightness and texture:
///
/// * `dark`: smooth, mean near 0.25
/// * `textured`: checkerboard of amplitude 0.2 around 0.5
/// * `bright`: smooth, mean near 0.75
///
/// Each image gets a small random brightness offset and gradient direction.
/// Names are `<class>_<index>.pgm`.
pub fn three_class_corpus(per_class: usize, size: usize, seed: Seed) -> Vec<LabeledImage> {
    let mut out = Vec::with_capacity(per_class * CLASSES.len());
    for (k, class) in CLASSES.iter().enumerate() {
        for i in 0..per_class {
            let mut rng = seed.derive(k as u64).derive(i as u64).rng();
            let offset: f32 = rng.random_range(-0.03..0.03);
            let slope: f32 = rng.random_range(-0.04..0.04);
            let span = size.max(2) as f32 - 1.0;
            let img = Image::from_fn_gray(size, size, |x, y| {
                let ramp = slope * (x as f32 / span - 0.5) + slope * (y as f32 / span - 0.5);
                match k {
                    0 => 0.25 + offset + ramp,
                    1 => {
                        let check = if (x / 2 + y / 2) % 2 == 0 { 0.2 } else { -0.2 };
                        0.5 + offset + check + ramp
                    }
                    _ => 0.75 + offset + ramp,
                }
            })
            .expect("positive size");
            out.push(LabeledImage::from_image(format!("{class}_{i:02}.pgm"), *class, &img));
        }
    }
    out
}
