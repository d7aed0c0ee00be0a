//! Zones of body boundaries, borders and the outer-complexity counts.
//!
//! A zone cell is a cell meeting both the body and its complement. An
//! `i`-border is a pair (face, zone cell) with the `i`-face in the closure
//! of the cell; `tau_i` counts the borders whose face lies outside the body.

use num_traits::Signed;
use rayon::prelude::*;

use crate::arrangement::{build_arrangement, Arrangement, Face, Hyperplane, Sign, SignVector};
use crate::body::{classify_face, general_position_check, ConvexBody, FaceClass};
use crate::error::{Error, Result};
use crate::exact::{feasible, fraction, Integer, Rational};

/// Widest dimension the flat CSV layout has columns for.
pub const MAX_DIM: usize = 6;

/// Decides face classes and zone membership. [`ConvexBody`] is the real
/// implementation; tests plug in non-convex stand-ins.
pub trait ZoneClassifier: Sync {
    fn classify(&self, face: &Face) -> Result<FaceClass>;
    fn in_zone(&self, cell: &Face) -> Result<bool>;

    /// Classes of every face, by dimension, and zone membership of every cell.
    fn classify_all(&self, arr: &Arrangement) -> Result<(Vec<Vec<FaceClass>>, Vec<bool>)> {
        let classes = (0..=arr.dim())
            .map(|k| {
                arr.faces_of_dim(k)
                    .par_iter()
                    .map(|f| self.classify(f))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let zone = arr
            .cells()
            .par_iter()
            .map(|c| self.in_zone(c))
            .collect::<Result<Vec<_>>>()?;
        Ok((classes, zone))
    }
}

impl ZoneClassifier for ConvexBody {
    /// Reads everything off the arrangement refined by the body's facet
    /// hyperplanes instead of solving one program per face.
    fn classify_all(&self, arr: &Arrangement) -> Result<(Vec<Vec<FaceClass>>, Vec<bool>)> {
        overlay_classes(arr, self)
    }

    fn classify(&self, face: &Face) -> Result<FaceClass> {
        classify_face(face, self)
    }

    fn in_zone(&self, cell: &Face) -> Result<bool> {
        if self.is_empty() || self.halfspaces().is_empty() {
            return Ok(false);
        }
        let mut meets = cell.region().to_vec();
        meets.extend_from_slice(self.halfspaces());
        if !feasible(&meets, self.dim())?.is_feasible() {
            return Ok(false);
        }
        for j in 0..self.halfspaces().len() {
            let mut leaves = cell.region().to_vec();
            leaves.push(self.outside_of(j));
            if feasible(&leaves, self.dim())?.is_feasible() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Copy, Default)]
struct Reach {
    body: bool,
    closed_outside: bool,
    open_outside: bool,
}

/// Every face of `arr` is a union of faces of the arrangement with the
/// body's facet hyperplanes added; whether it meets the body or the outer
/// sides of its facets is a property of those pieces' sign vectors.
fn overlay_classes(
    arr: &Arrangement,
    body: &ConvexBody,
) -> Result<(Vec<Vec<FaceClass>>, Vec<bool>)> {
    let d = arr.dim();
    let shape: Vec<usize> = (0..=d).map(|k| arr.faces_of_dim(k).len()).collect();
    if body.is_empty() {
        let classes = shape.iter().map(|&c| vec![FaceClass::Outer; c]).collect();
        return Ok((classes, vec![false; shape[d]]));
    }
    let n = arr.n();
    let mut all = arr.hyperplanes().to_vec();
    // (position in `all`, +1 if `c_j·x - d_j` has that hyperplane's sign)
    let mut facets = Vec::with_capacity(body.halfspaces().len());
    for c in body.halfspaces() {
        let h = Hyperplane::new(c.coeffs().to_vec(), c.offset().clone())?;
        let same = c
            .coeffs()
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_positive());
        let at = match all.iter().position(|g| *g == h) {
            Some(p) => p,
            None => {
                all.push(h);
                all.len() - 1
            }
        };
        facets.push((at, same));
    }
    let refined = build_arrangement(all, d)?;
    let mut reach: Vec<Vec<Reach>> = shape.iter().map(|&c| vec![Reach::default(); c]).collect();
    for piece in refined.faces() {
        let parent = SignVector(piece.signs().0[..n].to_vec());
        let (k, i) = arr.position(&parent).expect("pieces refine existing faces");
        let r = &mut reach[k][i];
        let mut inside = true;
        for &(at, same) in &facets {
            let s = piece.signs().0[at];
            let s = if same { s } else { s.flip() };
            match s {
                Sign::Minus => {
                    inside = false;
                    r.open_outside = true;
                    r.closed_outside = true;
                }
                Sign::Zero => r.closed_outside = true,
                Sign::Plus => {}
            }
        }
        r.body |= inside;
    }
    let bounded = !body.halfspaces().is_empty();
    let classes = reach
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|r| match r {
                    Reach { body: false, .. } => FaceClass::Outer,
                    Reach {
                        closed_outside: true,
                        ..
                    } => FaceClass::Crossing,
                    _ => FaceClass::Inner,
                })
                .collect()
        })
        .collect();
    let zone = reach[d]
        .iter()
        .map(|r| bounded && r.body && r.open_outside)
        .collect();
    Ok((classes, zone))
}

#[derive(Clone, Copy, Debug)]
pub struct Border<'a> {
    pub face: &'a Face,
    pub cell: &'a Face,
    pub i: usize,
}

/// Classes of every face and zone membership of every cell of one arrangement.
pub struct ZoneAnalysis<'a> {
    arr: &'a Arrangement,
    classes: Vec<Vec<FaceClass>>,
    zone: Vec<bool>,
}

impl<'a> ZoneAnalysis<'a> {
    pub fn new<C: ZoneClassifier + ?Sized>(arr: &'a Arrangement, classifier: &C) -> Result<Self> {
        let (classes, zone) = classifier.classify_all(arr)?;
        Ok(ZoneAnalysis { arr, classes, zone })
    }

    pub fn arrangement(&self) -> &'a Arrangement {
        self.arr
    }

    pub fn classes_of_dim(&self, k: usize) -> &[FaceClass] {
        &self.classes[k]
    }

    pub fn zone_cells(&self) -> Vec<&'a Face> {
        self.arr
            .cells()
            .iter()
            .zip(&self.zone)
            .filter(|(_, &z)| z)
            .map(|(c, _)| c)
            .collect()
    }

    /// Zone cells whose closure contains `face`.
    pub fn incident_zone_cells(&self, face: &Face) -> Vec<&'a Face> {
        self.zone_cells()
            .into_iter()
            .filter(|c| face.signs().conforms_to(c.signs()))
            .collect()
    }

    /// All `i`-borders whose face is outer, in face order then cell order.
    pub fn borders(&self, i: usize) -> Vec<Border<'a>> {
        let zone = self.zone_cells();
        let mut out = Vec::new();
        for (f, class) in self.arr.faces_of_dim(i).iter().zip(&self.classes[i]) {
            if *class != FaceClass::Outer {
                continue;
            }
            for &cell in &zone {
                if f.signs().conforms_to(cell.signs()) {
                    out.push(Border { face: f, cell, i });
                }
            }
        }
        out
    }

    pub fn tau(&self, i: usize) -> usize {
        self.borders(i).len()
    }

    /// Crossing faces per dimension `0..d`, raw and as (face, zone cell) pairs.
    pub fn crossing_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let zone = self.zone_cells();
        let d = self.arr.dim();
        let mut raw = vec![0; d];
        let mut borders = vec![0; d];
        for k in 0..d {
            for (f, class) in self.arr.faces_of_dim(k).iter().zip(&self.classes[k]) {
                if *class == FaceClass::Crossing {
                    raw[k] += 1;
                    borders[k] += zone
                        .iter()
                        .filter(|c| f.signs().conforms_to(c.signs()))
                        .count();
                }
            }
        }
        (raw, borders)
    }

    pub fn class_counts(&self, class: FaceClass) -> Vec<usize> {
        self.classes
            .iter()
            .map(|layer| layer.iter().filter(|&&c| c == class).count())
            .collect()
    }

    /// Outer complexity accumulated cell by cell: for every zone cell, the
    /// number of outer faces of dimension below `d` in its closure.
    pub fn outer_complexity_by_cells(&self) -> usize {
        let d = self.arr.dim();
        self.zone_cells()
            .iter()
            .map(|cell| {
                (0..d)
                    .map(|k| {
                        self.arr
                            .faces_of_dim(k)
                            .iter()
                            .zip(&self.classes[k])
                            .filter(|(f, c)| {
                                **c == FaceClass::Outer && f.signs().conforms_to(cell.signs())
                            })
                            .count()
                    })
                    .sum::<usize>()
            })
            .sum()
    }
}

pub fn zone_cells<'a>(arr: &'a Arrangement, body: &ConvexBody) -> Result<Vec<&'a Face>> {
    let zone = arr
        .cells()
        .par_iter()
        .map(|c| body.in_zone(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(arr
        .cells()
        .iter()
        .zip(zone)
        .filter(|(_, z)| *z)
        .map(|(c, _)| c)
        .collect())
}

/// `tau_i` together with the borders it counts.
pub fn count_borders<'a>(
    arr: &'a Arrangement,
    body: &ConvexBody,
    i: usize,
) -> Result<(usize, Vec<Border<'a>>)> {
    if i >= arr.dim() {
        return Err(Error::Malformed(format!(
            "border dimension {i} must be below {}",
            arr.dim()
        )));
    }
    let analysis = ZoneAnalysis::new(arr, body)?;
    let borders = analysis.borders(i);
    Ok((borders.len(), borders))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingCounts {
    pub faces: Vec<usize>,
    pub borders: Vec<usize>,
}

pub fn count_crossing_faces(arr: &Arrangement, body: &ConvexBody) -> Result<CrossingCounts> {
    let (faces, borders) = ZoneAnalysis::new(arr, body)?.crossing_counts();
    Ok(CrossingCounts { faces, borders })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneReport {
    pub n: usize,
    pub d: usize,
    pub zone_cell_count: usize,
    pub tau: Vec<usize>,
    pub outer_complexity: usize,
    pub crossing_counts: Vec<usize>,
    pub crossing_borders: Vec<usize>,
    /// Inner faces per dimension `0..=d`; informational only.
    pub inner_counts: Vec<usize>,
    /// `C(Z) / (d n^(d-1))`, absent when `n = 0`.
    pub ratio_cz: Option<Rational>,
    /// `tau_i` over `4 (d-i)! C(n, d-i) n^(i-1)` for `2 <= i < d` when `d >= 3`.
    pub prop_ratios: Vec<Option<Rational>>,
    /// Over all outer 1-borders, the number of missing outer endpoints
    /// (`2 - #outer vertices` of the edge).
    pub endpoint_deficit: usize,
}

impl ZoneReport {
    pub fn from_analysis(analysis: &ZoneAnalysis<'_>) -> ZoneReport {
        let arr = analysis.arrangement();
        let (n, d) = (arr.n(), arr.dim());
        let tau: Vec<usize> = (0..d).map(|i| analysis.tau(i)).collect();
        let outer_complexity: usize = tau.iter().sum();
        let (crossing_counts, crossing_borders) = analysis.crossing_counts();
        let ratio_cz = (n > 0 && d > 0).then(|| {
            Rational::from_parts(
                outer_complexity.into(),
                dashu_int::UBig::from(d) * dashu_int::UBig::from(n).pow(d - 1),
            )
        });
        let prop_ratios = (0..d)
            .map(|i| {
                if d < 3 || i < 2 {
                    return None;
                }
                let bound = crate::verify::prop23_bound(n, d, i);
                (bound > Integer::ZERO).then(|| fraction(tau[i].into(), bound))
            })
            .collect();
        let endpoint_deficit = if d >= 2 {
            analysis
                .borders(1)
                .iter()
                .map(|b| {
                    let ends = arr
                        .faces_of_dim(0)
                        .iter()
                        .zip(analysis.classes_of_dim(0))
                        .filter(|(v, c)| {
                            **c == FaceClass::Outer && v.signs().conforms_to(b.face.signs())
                        })
                        .count();
                    2usize.saturating_sub(ends)
                })
                .sum()
        } else {
            0
        };
        ZoneReport {
            n,
            d,
            zone_cell_count: analysis.zone_cells().len(),
            tau,
            outer_complexity,
            crossing_counts,
            crossing_borders,
            inner_counts: analysis.class_counts(FaceClass::Inner),
            ratio_cz,
            prop_ratios,
            endpoint_deficit,
        }
    }

    pub fn csv_header() -> String {
        let mut cols = vec!["n".to_string(), "d".into(), "zone_cells".into()];
        cols.extend((0..MAX_DIM).map(|i| format!("tau_{i}")));
        cols.push("C_Z".into());
        cols.extend((0..MAX_DIM).map(|i| format!("crossing_{i}")));
        cols.push("ratio_CZ".into());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![
            self.n.to_string(),
            self.d.to_string(),
            self.zone_cell_count.to_string(),
        ];
        cols.extend((0..MAX_DIM).map(|i| self.tau.get(i).map_or(String::new(), |v| v.to_string())));
        cols.push(self.outer_complexity.to_string());
        cols.extend((0..MAX_DIM).map(|i| {
            self.crossing_counts
                .get(i)
                .map_or(String::new(), |v| v.to_string())
        }));
        cols.push(
            self.ratio_cz
                .as_ref()
                .map_or(String::new(), |r| r.to_string()),
        );
        cols.join(",")
    }
}

/// Zone analysis of an instance in general position. Other instances are
/// refused with the findings.
pub fn checked_analysis<'a>(arr: &'a Arrangement, body: &ConvexBody) -> Result<ZoneAnalysis<'a>> {
    if arr.dim() > MAX_DIM {
        return Err(Error::UnsupportedDimension(arr.dim()));
    }
    let findings = general_position_check(arr.hyperplanes(), body)?;
    if !findings.is_empty() {
        return Err(Error::GeneralPosition(findings));
    }
    let analysis = ZoneAnalysis::new(arr, body)?;
    debug_assert!((0..arr.dim()).all(|i| {
        analysis
            .arrangement()
            .faces_of_dim(i)
            .iter()
            .all(|f| analysis.incident_zone_cells(f).len() <= 1 << (arr.dim() - i))
    }));
    Ok(analysis)
}

/// Full zone report. Refuses instances that are not in general position.
pub fn zone_report(arr: &Arrangement, body: &ConvexBody) -> Result<ZoneReport> {
    Ok(ZoneReport::from_analysis(&checked_analysis(arr, body)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_arrangement, Hyperplane};
    use crate::exact::{int, ratio, vector};

    fn h(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::from_ints(normal, offset).unwrap()
    }

    fn boxed(lo: &[i64], hi: &[i64]) -> ConvexBody {
        ConvexBody::axis_box(&vector(lo), &vector(hi)).unwrap()
    }

    fn axes() -> Arrangement {
        build_arrangement(vec![h(&[1, 0], 0), h(&[0, 1], 0)], 2).unwrap()
    }

    fn signs(cells: &[&Face]) -> Vec<String> {
        cells.iter().map(|c| c.signs().to_string()).collect()
    }

    #[test]
    fn zone_of_tall_box_right_of_axis() {
        let arr = axes();
        let k = boxed(&[1, -3], &[2, 3]);
        assert_eq!(signs(&zone_cells(&arr, &k).unwrap()), vec!["+-", "++"]);
        let (t1, b1) = count_borders(&arr, &k, 1).unwrap();
        assert_eq!(t1, 2);
        let faces: Vec<String> = b1.iter().map(|b| b.face.signs().to_string()).collect();
        assert_eq!(faces, vec!["0-", "0+"]);
        assert_eq!(count_borders(&arr, &k, 0).unwrap().0, 2);
        let c = count_crossing_faces(&arr, &k).unwrap();
        assert_eq!(c.faces, vec![0, 1]);
        assert_eq!(c.borders, vec![0, 2]);
        let r = zone_report(&arr, &k).unwrap();
        assert_eq!(r.outer_complexity, 4);
        assert_eq!(r.zone_cell_count, 2);
        assert_eq!(r.ratio_cz, Some(int(1)));
    }

    #[test]
    fn single_zone_cell_in_third_quadrant() {
        let arr = axes();
        let k = boxed(&[-2, -2], &[-1, -1]);
        assert_eq!(signs(&zone_cells(&arr, &k).unwrap()), vec!["--"]);
        assert_eq!(count_borders(&arr, &k, 1).unwrap().0, 2);
        assert_eq!(count_borders(&arr, &k, 0).unwrap().0, 1);
    }

    #[test]
    fn body_straddling_a_single_line() {
        let arr = build_arrangement(vec![h(&[1, 0], 0)], 2).unwrap();
        let k = boxed(&[-1, -1], &[1, 1]);
        assert_eq!(zone_cells(&arr, &k).unwrap().len(), 2);
        let c = count_crossing_faces(&arr, &k).unwrap();
        assert_eq!(c.faces, vec![0, 1]);
        assert_eq!(c.borders, vec![0, 2]);
    }

    #[test]
    fn whole_space_has_empty_zone() {
        let arr = axes();
        let k = ConvexBody::whole_space(2);
        assert!(zone_cells(&arr, &k).unwrap().is_empty());
        let r = zone_report(&arr, &k).unwrap();
        assert_eq!(r.outer_complexity, 0);
    }

    #[test]
    fn points_on_a_line_around_unit_interval() {
        let hs = vec![
            h(&[1], -1),
            Hyperplane::new(vec![int(1)], ratio(1, 2)).unwrap(),
            h(&[1], 2),
        ];
        let arr = build_arrangement(hs, 1).unwrap();
        let k = boxed(&[0], &[1]);
        let r = zone_report(&arr, &k).unwrap();
        assert_eq!(r.tau, vec![2]);
        assert_eq!(r.outer_complexity, 2);
    }

    #[test]
    fn empty_arrangement_report() {
        let arr = build_arrangement(vec![], 2).unwrap();
        let r = zone_report(&arr, &boxed(&[0, 0], &[1, 1])).unwrap();
        assert_eq!(r.tau, vec![0, 0]);
        assert_eq!(r.outer_complexity, 0);
        assert_eq!(r.ratio_cz, None);
        // The lone cell R^2 still meets the boundary.
        assert_eq!(r.zone_cell_count, 1);
    }

    #[test]
    fn degenerate_instances_are_refused() {
        let arr = axes();
        let err = zone_report(&arr, &boxed(&[0, 0], &[1, 1])).unwrap_err();
        assert!(matches!(err, Error::GeneralPosition(_)));
    }

    #[test]
    fn csv_row_layout() {
        let arr = axes();
        let r = zone_report(&arr, &boxed(&[1, -3], &[2, 3])).unwrap();
        assert_eq!(
            ZoneReport::csv_header(),
            "n,d,zone_cells,tau_0,tau_1,tau_2,tau_3,tau_4,tau_5,C_Z,\
             crossing_0,crossing_1,crossing_2,crossing_3,crossing_4,crossing_5,ratio_CZ"
        );
        assert_eq!(r.csv_row(), "2,2,2,2,2,,,,,4,0,1,,,,,1");
    }

    /// The body classified one face at a time, through the trait defaults.
    struct PerFace(ConvexBody);

    impl ZoneClassifier for PerFace {
        fn classify(&self, face: &Face) -> Result<FaceClass> {
            self.0.classify(face)
        }
        fn in_zone(&self, cell: &Face) -> Result<bool> {
            self.0.in_zone(cell)
        }
    }

    fn overlay_matches(hs: Vec<Hyperplane>, k: ConvexBody) {
        let d = k.dim();
        let arr = build_arrangement(hs, d).unwrap();
        let fast = k.classify_all(&arr).unwrap();
        let slow = PerFace(k).classify_all(&arr).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn overlay_agrees_with_per_face_programs() {
        use crate::gen::{random_body, random_hyperplanes, GenConfig};
        for seed in 0..12 {
            for d in 1..=3 {
                let mut cfg = GenConfig::new(seed, 2 + seed as usize % 4, d);
                cfg.coeff_bound = 3;
                cfg.axis_box = seed % 3 == 0;
                cfg.body_facets = 1 + seed as usize % 5;
                overlay_matches(
                    random_hyperplanes(&cfg).unwrap(),
                    random_body(&cfg).unwrap(),
                );
            }
        }
    }

    #[test]
    fn overlay_handles_shared_and_degenerate_facets() {
        // A facet on one of the lines, with either orientation.
        overlay_matches(vec![h(&[1, 0], 0), h(&[0, 1], 0)], boxed(&[0, -1], &[1, 1]));
        overlay_matches(vec![h(&[1, 0], 1), h(&[0, 1], 0)], boxed(&[0, -1], &[1, 1]));
        // A flat body: a segment on a line.
        overlay_matches(vec![h(&[1, 0], 0), h(&[1, 1], 0)], boxed(&[0, 0], &[2, 0]));
        // Empty body and the whole plane.
        overlay_matches(vec![h(&[1, 0], 0)], boxed(&[1, 0], &[0, 1]));
        overlay_matches(
            vec![h(&[1, 0], 0), h(&[0, 1], 2)],
            ConvexBody::whole_space(2),
        );
    }
}
