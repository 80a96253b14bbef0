//! Salt-and-pepper then rotation is not the same as rotation then
//! salt-and-pepper: rotating smears the impulses into gray blobs.

use asi_bench::{apply_sequence, Image, PerturbationStep, Seed};

fn main() -> asi_bench::Result<()> {
    let img = Image::filled(32, 32, asi_bench::Channels::Gray, 0.5)?;
    let sp = PerturbationStep::SaltPepper { density: 0.2 };
    let rot = PerturbationStep::Rotation { degrees: 45.0 };

    let sp_rot = apply_sequence(&img, &[sp, rot], Seed(7))?;
    let rot_sp = apply_sequence(&img, &[rot, sp], Seed(7))?;

    let extremes = |im: &Image| im.as_slice().iter().filter(|&&v| v == 0.0 || v == 1.0).count();
    println!("{sp} then {rot}: {} extreme samples", extremes(&sp_rot));
    println!("{rot} then {sp}: {} extreme samples", extremes(&rot_sp));
    println!("pixels that differ: {}", sp_rot.count_changed_pixels(&rot_sp));
    Ok(())
}
