//! Zone report of a random planar instance, with every outer border listed.
//!
//! cargo run --example zone_report -- [n] [seed]

use zonelab::arrangement::build_arrangement;
use zonelab::gen::{perturb, GenConfig};
use zonelab::instance::Instance;
use zonelab::zone::{checked_analysis, ZoneReport};

fn main() -> zonelab::error::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(5) as usize;
    let seed = args.get(1).copied().unwrap_or(3);
    let mut inst = Instance::generate(&GenConfig::new(seed, n, 2))?;
    inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, 8, seed)?;

    let arr = build_arrangement(inst.hyperplanes.clone(), 2)?;
    let analysis = checked_analysis(&arr, &inst.body)?;
    let report = ZoneReport::from_analysis(&analysis);
    println!("{}\n{}", ZoneReport::csv_header(), report.csv_row());
    println!("zone cells:");
    for c in analysis.zone_cells() {
        println!("  {}", c.signs());
    }
    for i in 0..2 {
        println!("outer {i}-borders:");
        for b in analysis.borders(i) {
            println!("  {} in {}", b.face.signs(), b.cell.signs());
        }
    }
    Ok(())
}
