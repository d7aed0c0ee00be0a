//! SVG drawings of planar instances: lines, the body, shaded zone cells and
//! outer borders.
//!
//! Geometry is clipped exactly to the viewport, which is the bounding box of
//! all arrangement vertices and body vertices grown by 10% on every side
//! (20% overall). Coordinates are only rounded to decimals when written.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::arrangement::{build_arrangement, Hyperplane};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::exact::{int, LinearConstraint, Rational, Relation};
use crate::zone::ZoneAnalysis;

type Point = [Rational; 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub lo: Point,
    pub hi: Point,
}

impl Viewport {
    fn constraints(&self) -> Vec<LinearConstraint> {
        let e = |k: usize| {
            let mut v = vec![Rational::zero(), Rational::zero()];
            v[k] = int(1);
            v
        };
        (0..2)
            .flat_map(|k| {
                [
                    LinearConstraint::ge(e(k), self.lo[k].clone()),
                    LinearConstraint::le(e(k), self.hi[k].clone()),
                ]
            })
            .collect()
    }

    fn around(points: &[Point]) -> Viewport {
        let Some(first) = points.first() else {
            return Viewport {
                lo: [int(-1), int(-1)],
                hi: [int(1), int(1)],
            };
        };
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in points {
            for k in 0..2 {
                if p[k] < lo[k] {
                    lo[k] = p[k].clone();
                }
                if p[k] > hi[k] {
                    hi[k] = p[k].clone();
                }
            }
        }
        for k in 0..2 {
            let extent = &hi[k] - &lo[k];
            let pad = if extent.is_zero() {
                int(1)
            } else {
                extent / int(10)
            };
            lo[k] -= &pad;
            hi[k] += &pad;
        }
        Viewport { lo, hi }
    }
}

fn closed(c: &LinearConstraint) -> LinearConstraint {
    match c.relation() {
        Relation::Gt => c.with_relation(Relation::Ge),
        _ => c.clone(),
    }
}

fn meet(a: &LinearConstraint, b: &LinearConstraint) -> Option<Point> {
    let (p, q) = (a.coeffs(), b.coeffs());
    let det = &p[0] * &q[1] - &p[1] * &q[0];
    if det.is_zero() {
        return None;
    }
    let (r, s) = (a.offset(), b.offset());
    Some([
        (r * &q[1] - s * &p[1]) / &det,
        (&p[0] * s - &q[0] * r) / &det,
    ])
}

/// Vertices of the closed polygon cut out by `constraints`, counterclockwise.
/// Degenerate regions give a segment, a point or nothing.
fn polygon(constraints: &[LinearConstraint]) -> Vec<Point> {
    let closure: Vec<LinearConstraint> = constraints
        .iter()
        .filter(|c| c.trivial().is_none())
        .map(closed)
        .collect();
    if constraints.iter().any(|c| c.trivial() == Some(false)) {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    for (i, a) in closure.iter().enumerate() {
        for b in &closure[i + 1..] {
            if let Some(p) = meet(a, b) {
                if closure.iter().all(|c| c.is_satisfied_by(&p)) {
                    found.insert(p);
                }
            }
        }
    }
    let mut pts: Vec<Point> = found.into_iter().collect();
    if pts.len() < 3 {
        return pts;
    }
    let count = int(pts.len() as i64);
    let cx = pts.iter().fold(Rational::ZERO, |acc, p| acc + &p[0]) / &count;
    let cy = pts.iter().fold(Rational::ZERO, |acc, p| acc + &p[1]) / &count;
    let upper = |p: &Point| p[1] > cy || (p[1] == cy && p[0] > cx);
    pts.sort_by(|a, b| {
        upper(b).cmp(&upper(a)).then_with(|| {
            let cross = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

fn body_vertices(body: &ConvexBody) -> Vec<Point> {
    let hs = body.halfspaces();
    let mut out = Vec::new();
    for (i, a) in hs.iter().enumerate() {
        for b in &hs[i + 1..] {
            if let Some(p) = meet(a, b) {
                if body.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn num(r: &Rational) -> String {
    let v = r.to_f64().value();
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn points_attr(pts: &[Point]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", num(&p[0]), num(&-&p[1])))
        .collect::<Vec<_>>()
        .join(" ")
}

fn segment(out: &mut String, class: &str, pts: &[Point]) {
    if let [a, .., b] = pts {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(&a[0]),
            num(&-&a[1]),
            num(&b[0]),
            num(&-&b[1])
        );
    }
}

fn clipped(region: &[LinearConstraint], view: &[LinearConstraint]) -> Vec<Point> {
    let mut all = region.to_vec();
    all.extend_from_slice(view);
    polygon(&all)
}

pub fn render_svg(hyperplanes: &[Hyperplane], body: &ConvexBody) -> Result<String> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    let arr = build_arrangement(hyperplanes.to_vec(), 2)?;
    let analysis = ZoneAnalysis::new(&arr, body)?;
    let mut anchors: Vec<Point> = arr
        .faces_of_dim(0)
        .iter()
        .map(|v| [v.witness()[0].clone(), v.witness()[1].clone()])
        .collect();
    anchors.extend(body_vertices(body));
    let viewport = Viewport::around(&anchors);
    let view = viewport.constraints();
    let (x0, y0) = (num(&viewport.lo[0]), num(&-&viewport.hi[1]));
    let w = num(&(&viewport.hi[0] - &viewport.lo[0]));
    let h = num(&(&viewport.hi[1] - &viewport.lo[1]));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {y0} {w} {h}" width="600" height="600" preserveAspectRatio="xMidYMid meet">"#
    );
    out.push_str(concat!(
        "<style>",
        ".zone-cell{fill:#f6c97a;fill-opacity:0.6;stroke:none}",
        ".body{fill:#4a7fb5;fill-opacity:0.35;stroke:#1f4e79;stroke-width:2}",
        ".hyperplane{stroke:#333;stroke-width:1}",
        ".outer-border{stroke:#c0392b;stroke-width:3}",
        ".outer-vertex{fill:#c0392b}",
        "*{vector-effect:non-scaling-stroke}",
        "</style>\n"
    ));
    let _ = writeln!(
        out,
        r#"<rect class="viewport" x="{x0}" y="{y0}" width="{w}" height="{h}" fill="white"/>"#
    );
    for cell in analysis.zone_cells() {
        let pts = clipped(cell.region(), &view);
        if pts.len() >= 3 {
            let _ = writeln!(
                out,
                r#"<polygon class="zone-cell" data-signs="{}" points="{}"/>"#,
                cell.signs(),
                points_attr(&pts)
            );
        }
    }
    if !body.is_empty() {
        let pts = clipped(body.halfspaces(), &view);
        if pts.len() >= 3 {
            let _ = writeln!(
                out,
                r#"<polygon class="body" points="{}"/>"#,
                points_attr(&pts)
            );
        }
    }
    for hp in hyperplanes {
        let pts = clipped(&[hp.sign_constraint(crate::arrangement::Sign::Zero)], &view);
        segment(&mut out, "hyperplane", &pts);
    }
    let mut drawn = BTreeSet::new();
    for border in analysis.borders(1) {
        if drawn.insert(border.face.signs().clone()) {
            segment(
                &mut out,
                "outer-border",
                &clipped(border.face.region(), &view),
            );
        }
    }
    for border in analysis.borders(0) {
        if drawn.insert(border.face.signs().clone()) {
            let p = border.face.witness();
            let _ = writeln!(
                out,
                r#"<circle class="outer-vertex" cx="{}" cy="{}" r="{}"/>"#,
                num(&p[0]),
                num(&-&p[1]),
                num(&((&viewport.hi[0] - &viewport.lo[0]) / int(100)))
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vector;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    fn worked_box() -> ConvexBody {
        ConvexBody::axis_box(&vector(&[1, -3]), &vector(&[2, 3])).unwrap()
    }

    #[test]
    fn worked_instance_drawing() {
        let hs = vec![
            Hyperplane::from_ints(&[1, 0], 0).unwrap(),
            Hyperplane::from_ints(&[0, 1], 0).unwrap(),
        ];
        let svg = render_svg(&hs, &worked_box()).unwrap();
        assert_eq!(count(&svg, "zone-cell"), 2);
        assert_eq!(count(&svg, "body"), 1);
        assert_eq!(count(&svg, "hyperplane"), 2);
        assert_eq!(count(&svg, "outer-border"), 2);
        assert_eq!(count(&svg, "outer-vertex"), 1);
        assert!(svg.contains(r#"viewBox="-0.2000 -3.6000 2.4000 7.2000""#));
        assert_eq!(svg, render_svg(&hs, &worked_box()).unwrap());
    }

    #[test]
    fn body_alone() {
        let svg = render_svg(&[], &worked_box()).unwrap();
        assert_eq!(count(&svg, "body"), 1);
        // The lone cell meets the boundary, so it is shaded as well.
        assert_eq!(count(&svg, "zone-cell"), 1);
        assert_eq!(count(&svg, "hyperplane"), 0);
    }

    #[test]
    fn other_dimensions_refused() {
        let k = ConvexBody::axis_box(&vector(&[0, 0, 0]), &vector(&[1, 1, 1])).unwrap();
        assert!(matches!(
            render_svg(&[], &k),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn square_polygon_is_counterclockwise() {
        let k = ConvexBody::axis_box(&vector(&[0, 0]), &vector(&[1, 1])).unwrap();
        let pts = polygon(k.halfspaces());
        assert_eq!(pts.len(), 4);
        let area: Rational = (0..4)
            .map(|i| {
                let (a, b) = (&pts[i], &pts[(i + 1) % 4]);
                &a[0] * &b[1] - &a[1] * &b[0]
            })
            .fold(Rational::ZERO, |acc, v| acc + v);
        assert_eq!(area, int(2));
    }
}
