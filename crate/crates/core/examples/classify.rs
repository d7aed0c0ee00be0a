//! Classifies every face of the coordinate axes against a box: outer faces
//! miss the body, crossing faces meet its boundary, inner faces sit inside.

use zonelab::arrangement::{build_arrangement, Hyperplane};
use zonelab::body::{classify_face, ConvexBody};
use zonelab::exact::{format_point, vector};

fn main() -> zonelab::error::Result<()> {
    let hs = vec![
        Hyperplane::from_ints(&[1, 0], 0)?,
        Hyperplane::from_ints(&[0, 1], 0)?,
    ];
    let arr = build_arrangement(hs, 2)?;
    for (lo, hi) in [([-1, -1], [1, 1]), ([1, -3], [2, 3]), ([2, 2], [3, 3])] {
        let body = ConvexBody::axis_box(&vector(&lo), &vector(&hi))?;
        println!("box {lo:?}..{hi:?}");
        for f in arr.faces() {
            println!(
                "  {} dim {} at {}: {:?}",
                f.signs(),
                f.dim(),
                format_point(f.witness()),
                classify_face(f, &body)?
            );
        }
    }
    Ok(())
}
