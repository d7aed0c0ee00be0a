//! Writes an SVG drawing of a random planar instance.
//!
//! cargo run --example render -- out.svg [n] [seed]

use zonelab::gen::{perturb, GenConfig};
use zonelab::instance::Instance;
use zonelab::render::render_svg;

fn main() -> zonelab::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = args.first().map_or("zone.svg", String::as_str);
    let n = args.get(1).map_or(6, |a| a.parse().expect("integer n"));
    let seed = args.get(2).map_or(5, |a| a.parse().expect("integer seed"));
    let mut inst = Instance::generate(&GenConfig::new(seed, n, 2))?;
    inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, 8, seed)?;
    std::fs::write(out, render_svg(&inst.hyperplanes, &inst.body)?)?;
    println!("wrote {out}");
    Ok(())
}
