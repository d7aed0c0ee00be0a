//! Builds a line arrangement, prints its faces and checks them against the
//! brute-force oracle.
//!
//! cargo run --example arrangement -- [n] [seed]

use std::collections::BTreeSet;

use zonelab::arrangement::{build_arrangement, enumerate_faces_oracle};
use zonelab::gen::{random_hyperplanes, GenConfig};

fn main() -> zonelab::error::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(4) as usize;
    let seed = args.get(1).copied().unwrap_or(1);
    let hs = random_hyperplanes(&GenConfig::new(seed, n, 2))?;
    for h in &hs {
        println!("{h}");
    }
    let arr = build_arrangement(hs.clone(), 2)?;
    println!(
        "faces by dimension: {:?} (simple: {})",
        arr.face_counts(),
        arr.is_simple()
    );
    print!("{}", arr.dump());

    let oracle = enumerate_faces_oracle(&hs, 2)?;
    let built: BTreeSet<_> = arr.faces().map(|f| f.signs().clone()).collect();
    let brute: BTreeSet<_> = oracle.faces.keys().cloned().collect();
    println!("oracle agrees: {}", built == brute);
    Ok(())
}
