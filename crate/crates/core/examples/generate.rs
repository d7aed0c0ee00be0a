//! Seeded generation, a JSON round trip, and perturbation of a degenerate
//! input into general position.

use zonelab::arrangement::Hyperplane;
use zonelab::body::{general_position_check, ConvexBody};
use zonelab::exact::vector;
use zonelab::gen::{perturb, GenConfig};
use zonelab::instance::Instance;

fn main() -> zonelab::error::Result<()> {
    let inst = Instance::generate(&GenConfig::new(7, 3, 2))?;
    let json = inst.to_json();
    print!("{json}");
    println!("round trip exact: {}", Instance::from_json(&json)? == inst);

    // Three lines through the origin, and a box with a corner on one of them.
    let hs = vec![
        Hyperplane::from_ints(&[1, 0], 0)?,
        Hyperplane::from_ints(&[0, 1], 0)?,
        Hyperplane::from_ints(&[1, 1], 0)?,
    ];
    let body = ConvexBody::axis_box(&vector(&[1, -3]), &vector(&[3, -1]))?;
    for f in general_position_check(&hs, &body)? {
        println!("finding: {f}");
    }
    let moved = perturb(&hs, &body, 8, 1)?;
    for h in &moved {
        println!("perturbed: {h}");
    }
    println!(
        "findings left: {}",
        general_position_check(&moved, &body)?.len()
    );
    Ok(())
}
