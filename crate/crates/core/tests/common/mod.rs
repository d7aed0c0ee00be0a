#![allow(dead_code)]

use zonelab::arrangement::{Arrangement, Face, Hyperplane};
use zonelab::body::{classify_face, ConvexBody, FaceClass};
use zonelab::error::Result;
use zonelab::exact::vector;
use zonelab::zone::ZoneClassifier;

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn h(normal: &[i64], offset: i64) -> Hyperplane {
    Hyperplane::from_ints(normal, offset).unwrap()
}

pub fn boxed(lo: &[i64], hi: &[i64]) -> ConvexBody {
    ConvexBody::axis_box(&vector(lo), &vector(hi)).unwrap()
}

/// H = {x = 0, y = 0}, K = [1,2] x [-3,3].
pub fn worked() -> (Vec<Hyperplane>, ConvexBody) {
    (vec![h(&[1, 0], 0), h(&[0, 1], 0)], boxed(&[1, -3], &[2, 3]))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// Number of k-faces of a simple arrangement of n hyperplanes in R^d.
pub fn simple_face_count(n: usize, d: usize, k: usize) -> u128 {
    if d - k > n {
        return 0;
    }
    binomial(n, d - k) * (0..=k).map(|j| binomial(n + k - d, j)).sum::<u128>()
}

/// Union of two disjoint closed boxes. Not convex, so the single-facet
/// property of zones can fail for it.
pub struct TwoBoxes {
    pub a: ConvexBody,
    pub b: ConvexBody,
}

impl TwoBoxes {
    /// `[-1,1] x [1,2]` and `[-1,1] x [-2,-1]`, split by the x-axis.
    pub fn split_by_axis() -> (Vec<Hyperplane>, TwoBoxes) {
        (
            vec![h(&[0, 1], 0)],
            TwoBoxes {
                a: boxed(&[-1, 1], &[1, 2]),
                b: boxed(&[-1, -2], &[1, -1]),
            },
        )
    }
}

impl ZoneClassifier for TwoBoxes {
    fn classify(&self, face: &Face) -> Result<FaceClass> {
        use FaceClass::*;
        Ok(
            match (classify_face(face, &self.a)?, classify_face(face, &self.b)?) {
                (Outer, Outer) => Outer,
                (Crossing, _) | (_, Crossing) => Crossing,
                _ => Inner,
            },
        )
    }

    fn in_zone(&self, cell: &Face) -> Result<bool> {
        Ok(self.a.in_zone(cell)? || self.b.in_zone(cell)?)
    }
}

pub fn arrangement_signs(
    arr: &Arrangement,
) -> std::collections::BTreeSet<zonelab::arrangement::SignVector> {
    arr.faces().map(|f| f.signs().clone()).collect()
}
