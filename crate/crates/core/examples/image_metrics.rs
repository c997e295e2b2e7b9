//! Clarity of a blur ramp and block-matching flow of a shifted texture.
//!
//! cargo run -p ronar-core --example image_metrics

use image::{GrayImage, Luma};
use ronar_core::vision::{clarity_score, dense_flow, mean_flow_magnitude};

fn texture(w: u32, h: u32) -> GrayImage {
    // xorshift keeps the example free of extra dependencies
    let mut s: u32 = 0x9e37_79b9;
    GrayImage::from_fn(w, h, |_, _| {
        s ^= s << 13;
        s ^= s >> 17;
        s ^= s << 5;
        Luma([(s >> 24) as u8])
    })
}

fn blur(img: &GrayImage, r: u32) -> GrayImage {
    let (w, h) = img.dimensions();
    GrayImage::from_fn(w, h, |x, y| {
        let (mut sum, mut n) = (0u32, 0u32);
        for yy in y.saturating_sub(r)..=(y + r).min(h - 1) {
            for xx in x.saturating_sub(r)..=(x + r).min(w - 1) {
                sum += img.get_pixel(xx, yy).0[0] as u32;
                n += 1;
            }
        }
        Luma([(sum / n) as u8])
    })
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = texture(96, 96);
    for r in 0..4 {
        println!("blur radius {r}: clarity {:.1}", clarity_score(&blur(&base, r))?);
    }

    let crop = |dx: u32| GrayImage::from_fn(80, 80, |x, y| *base.get_pixel(x + 8 - dx, y + 8));
    for shift in [0, 2, 5] {
        let flow = dense_flow(&crop(0), &crop(shift), 16, 8)?;
        println!(
            "shift {shift} px: mean flow {:.3} over {}x{} blocks, centre block {:?}",
            mean_flow_magnitude(&flow)?,
            flow.width,
            flow.height,
            flow.at(2, 2)
        );
    }
    Ok(())
}
