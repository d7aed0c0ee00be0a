mod common;

use common::{boxed, worked, TwoBoxes};
use proptest::prelude::*;
use zonelab::arrangement::build_arrangement;
use zonelab::body::{classify_face, FaceClass};
use zonelab::gen::{perturb, GenConfig};
use zonelab::instance::Instance;
use zonelab::verify::{check_claim24, CheckStatus};
use zonelab::zone::{checked_analysis, zone_report, ZoneAnalysis, ZoneClassifier};

fn general_instance(seed: u64, n: usize, d: usize) -> Instance {
    let mut cfg = GenConfig::new(seed, n, d);
    cfg.axis_box = seed % 2 == 1;
    let mut inst = Instance::generate(&cfg).unwrap();
    inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, 8, seed).unwrap();
    inst
}

#[test]
fn worked_instance_classes() {
    let (hs, k) = worked();
    let arr = build_arrangement(hs, 2).unwrap();
    let a = checked_analysis(&arr, &k).unwrap();
    let signs: Vec<String> = a
        .zone_cells()
        .iter()
        .map(|c| c.signs().to_string())
        .collect();
    assert_eq!(signs, ["+-", "++"]);
    assert_eq!(a.class_counts(FaceClass::Outer), vec![1, 3, 2]);
    assert_eq!(a.class_counts(FaceClass::Crossing), vec![0, 1, 2]);
    assert_eq!(a.outer_complexity_by_cells(), 4);
}

#[test]
fn non_convex_union_breaks_the_single_cell_property() {
    let (hs, mock) = TwoBoxes::split_by_axis();
    let arr = build_arrangement(hs, 2).unwrap();
    let r = check_claim24(&arr, &mock).unwrap();
    assert_eq!(r.status, CheckStatus::Fail);
    assert_eq!(r.note, "outer facet 0 borders two zone cells");
    // Each box alone is convex and passes.
    assert_eq!(
        check_claim24(&arr, &mock.a).unwrap().status,
        CheckStatus::Pass
    );
    assert_eq!(
        check_claim24(&arr, &mock.b).unwrap().status,
        CheckStatus::Pass
    );
}

#[test]
fn body_away_from_everything() {
    let hs = vec![common::h(&[1, 0], 0), common::h(&[0, 1], 0)];
    let k = boxed(&[5, 5], &[6, 6]);
    let report = zone_report(&build_arrangement(hs, 2).unwrap(), &k).unwrap();
    // Only the cell containing the box is in the zone; its corner and two
    // rays are outer.
    assert_eq!(report.zone_cell_count, 1);
    assert_eq!(report.tau, vec![1, 2]);
}

fn props(seed: u64, n: usize, d: usize) -> Result<(), TestCaseError> {
    let inst = general_instance(seed, n, d);
    let arr = build_arrangement(inst.hyperplanes.clone(), d).unwrap();
    let a = checked_analysis(&arr, &inst.body).unwrap();
    let faces: Vec<_> = arr.faces().collect();

    // Overlay classes agree with one program per face.
    for k in 0..=d {
        for (f, c) in arr.faces_of_dim(k).iter().zip(a.classes_of_dim(k)) {
            prop_assert_eq!(*c, classify_face(f, &inst.body).unwrap());
        }
    }
    // Inner faces only sit in closures of non-outer faces; closures of inner
    // faces hold no outer face.
    let class_of = |f: &zonelab::arrangement::Face| {
        let (k, i) = arr.position(f.signs()).unwrap();
        a.classes_of_dim(k)[i]
    };
    for f in &faces {
        for g in &faces {
            if !f.signs().conforms_to(g.signs()) {
                continue;
            }
            if class_of(f) == FaceClass::Inner {
                prop_assert_ne!(class_of(g), FaceClass::Outer);
            }
            if class_of(g) == FaceClass::Inner {
                prop_assert_ne!(class_of(f), FaceClass::Outer);
            }
        }
    }
    // For a full-dimensional body, zone cells are exactly the crossing cells.
    for (cell, class) in arr.cells().iter().zip(a.classes_of_dim(d)) {
        prop_assert_eq!(
            inst.body.in_zone(cell).unwrap(),
            *class == FaceClass::Crossing
        );
    }
    // C(Z) by cells equals the per-dimension sum, and no face is bordered by
    // more than 2^(d-i) zone cells.
    let report = zonelab::zone::ZoneReport::from_analysis(&a);
    prop_assert_eq!(a.outer_complexity_by_cells(), report.outer_complexity);
    prop_assert_eq!(report.tau.iter().sum::<usize>(), report.outer_complexity);
    for i in 0..d {
        for f in arr.faces_of_dim(i) {
            prop_assert!(a.incident_zone_cells(f).len() <= 1 << (d - i));
        }
    }
    prop_assert_eq!(
        check_claim24(&arr, &inst.body).unwrap().status,
        CheckStatus::Pass
    );
    // Default per-face classification agrees with the overlay.
    struct PerFace<'a>(&'a zonelab::body::ConvexBody);
    impl ZoneClassifier for PerFace<'_> {
        fn classify(&self, f: &zonelab::arrangement::Face) -> zonelab::error::Result<FaceClass> {
            self.0.classify(f)
        }
        fn in_zone(&self, c: &zonelab::arrangement::Face) -> zonelab::error::Result<bool> {
            self.0.in_zone(c)
        }
    }
    let slow = ZoneAnalysis::new(&arr, &PerFace(&inst.body)).unwrap();
    prop_assert_eq!(zonelab::zone::ZoneReport::from_analysis(&slow), report);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn planar_zone_invariants(seed in any::<u64>(), n in 0usize..7) {
        props(seed, n, 2)?;
    }

    #[test]
    fn spatial_zone_invariants(seed in any::<u64>(), n in 0usize..5) {
        props(seed, n, 3)?;
    }

    #[test]
    fn linear_zone_invariants(seed in any::<u64>(), n in 0usize..8) {
        props(seed, n, 1)?;
    }
}
