//! Restricts a plane arrangement to one of its planes and slices the body
//! with it, the two ingredients of the deletion/restriction recurrence.

use zonelab::arrangement::{build_arrangement, restrict_to_hyperplane, Hyperplane};
use zonelab::body::{intersect_body_with_flat, ConvexBody};
use zonelab::exact::{format_point, vector};

fn main() -> zonelab::error::Result<()> {
    let hs = vec![
        Hyperplane::from_ints(&[1, 0, 0], 0)?,
        Hyperplane::from_ints(&[0, 1, 0], 0)?,
        Hyperplane::from_ints(&[1, 1, 1], 1)?,
    ];
    let body = ConvexBody::axis_box(&vector(&[-1, -1, -1]), &vector(&[1, 2, 3]))?;
    let r = restrict_to_hyperplane(&hs, &hs[2])?;
    println!("chart origin {}", format_point(r.chart.origin()));
    for h in &r.induced {
        println!("induced line {h}");
    }
    let slice = intersect_body_with_flat(&body, &r.chart)?;
    println!(
        "slice has {} halfspaces, empty = {}",
        slice.halfspaces().len(),
        slice.is_empty()
    );
    let arr = build_arrangement(r.induced.clone(), 2)?;
    println!("induced arrangement faces: {:?}", arr.face_counts());
    Ok(())
}
