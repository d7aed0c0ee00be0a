//! Convex polyhedral bodies and how arrangement faces sit relative to them.

use std::fmt;

use num_traits::Zero;

use crate::arrangement::{combinations, Chart, Face, Hyperplane, Sign};
use crate::error::{Error, Result};
use crate::exact::{feasible, solve_affine_system, LinearConstraint, Rational, Relation};

/// A closed convex set `{x : c_j · x >= d_j for all j}`, possibly unbounded
/// or empty. With no halfspaces it is all of `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexBody {
    halfspaces: Vec<LinearConstraint>,
    dim: usize,
    empty: bool,
}

impl ConvexBody {
    /// Builds a body from `>=` constraints. Always-true constraints are dropped.
    pub fn new(dim: usize, halfspaces: Vec<LinearConstraint>) -> Result<Self> {
        let mut kept = Vec::with_capacity(halfspaces.len());
        for (k, c) in halfspaces.into_iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::Malformed(format!(
                    "halfspace {k} has {} coefficients, expected {dim}",
                    c.dim()
                )));
            }
            match c.trivial() {
                Some(true) => continue,
                Some(false) => {}
                None if c.relation() != Relation::Ge => {
                    return Err(Error::Malformed(format!(
                        "halfspace {k} must be a closed `>=` constraint"
                    )));
                }
                None => {}
            }
            kept.push(c);
        }
        let empty = !feasible(&kept, dim)?.is_feasible();
        Ok(ConvexBody {
            halfspaces: kept,
            dim,
            empty,
        })
    }

    pub fn from_pairs(dim: usize, pairs: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        let hs = pairs
            .into_iter()
            .map(|(c, d)| LinearConstraint::ge(c, d))
            .collect();
        Self::new(dim, hs)
    }

    pub fn whole_space(dim: usize) -> Self {
        ConvexBody {
            halfspaces: Vec::new(),
            dim,
            empty: false,
        }
    }

    /// The axis-parallel box `lo <= x <= hi`.
    pub fn axis_box(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        let dim = lo.len();
        if hi.len() != dim {
            return Err(Error::Malformed("box corners differ in dimension".into()));
        }
        let mut hs = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[k] = Rational::ONE;
            hs.push(LinearConstraint::ge(e.clone(), lo[k].clone()));
            hs.push(LinearConstraint::le(e, hi[k].clone()));
        }
        Self::new(dim, hs)
    }

    pub fn halfspaces(&self) -> &[LinearConstraint] {
        &self.halfspaces
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|c| c.is_satisfied_by(x))
    }

    pub fn contains_in_interior(&self, x: &[Rational]) -> bool {
        self.interior().iter().all(|c| c.is_satisfied_by(x))
    }

    /// Strict versions of every halfspace. Their common solution set is the
    /// interior whenever the body is full-dimensional.
    pub fn interior(&self) -> Vec<LinearConstraint> {
        self.halfspaces
            .iter()
            .map(|c| c.with_relation(Relation::Gt))
            .collect()
    }

    /// `c_j · x < d_j`: the open side of halfspace `j` lying outside the body.
    pub fn outside_of(&self, j: usize) -> LinearConstraint {
        let c = &self.halfspaces[j];
        LinearConstraint::lt(c.coeffs().to_vec(), c.offset().clone())
    }

    /// `c_j · x <= d_j`.
    pub fn outside_or_on(&self, j: usize) -> LinearConstraint {
        let c = &self.halfspaces[j];
        LinearConstraint::le(c.coeffs().to_vec(), c.offset().clone())
    }
}

/// Position of a relatively open face with respect to a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceClass {
    /// Disjoint from the body.
    Outer,
    /// Meets the boundary.
    Crossing,
    /// Contained in the interior.
    Inner,
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceClass::Outer => "OUTER",
            FaceClass::Crossing => "CROSSING",
            FaceClass::Inner => "INNER",
        })
    }
}

pub fn classify_face(f: &Face, body: &ConvexBody) -> Result<FaceClass> {
    classify_region(f.region(), body)
}

/// Classifies the solution set of `region`, which must be nonempty and
/// relatively open. An empty body classifies everything as outer.
pub fn classify_region(region: &[LinearConstraint], body: &ConvexBody) -> Result<FaceClass> {
    if body.is_empty() {
        return Ok(FaceClass::Outer);
    }
    let mut meets: Vec<LinearConstraint> = region.to_vec();
    meets.extend_from_slice(body.halfspaces());
    if !feasible(&meets, body.dim())?.is_feasible() {
        return Ok(FaceClass::Outer);
    }
    for j in 0..body.halfspaces().len() {
        let mut touches = region.to_vec();
        touches.push(body.outside_or_on(j));
        if feasible(&touches, body.dim())?.is_feasible() {
            return Ok(FaceClass::Crossing);
        }
    }
    Ok(FaceClass::Inner)
}

/// Pulls the body back through a hyperplane chart, giving `K ∩ h` in the
/// hyperplane's own coordinates.
pub fn intersect_body_with_flat(body: &ConvexBody, chart: &Chart) -> Result<ConvexBody> {
    if chart.ambient_dim() != body.dim() {
        return Err(Error::Malformed(format!(
            "chart lives in R^{}, body in R^{}",
            chart.ambient_dim(),
            body.dim()
        )));
    }
    let pulled = body
        .halfspaces()
        .iter()
        .map(|c| chart.pull_back(c))
        .collect();
    ConvexBody::new(chart.local_dim(), pulled)
}

/// A violated general-position condition, naming the hyperplanes involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// `j` hyperplanes whose intersection is not a `(d-j)`-flat (`actual` is
    /// `None` when they do not meet at all).
    FlatDimension {
        hyperplanes: Vec<usize>,
        expected: usize,
        actual: Option<usize>,
    },
    /// `d+1` hyperplanes through a common point.
    CommonPoint { hyperplanes: Vec<usize> },
    /// An arrangement vertex on the boundary of the body.
    VertexOnBoundary { hyperplanes: Vec<usize> },
    /// A flat that meets the body only along its boundary.
    TangentFlat { hyperplanes: Vec<usize> },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::FlatDimension {
                hyperplanes,
                expected,
                actual: Some(a),
            } => write!(
                f,
                "flat-dimension {hyperplanes:?}: expected {expected}, got {a}"
            ),
            Finding::FlatDimension {
                hyperplanes,
                expected,
                actual: None,
            } => write!(
                f,
                "flat-dimension {hyperplanes:?}: expected {expected}, got empty"
            ),
            Finding::CommonPoint { hyperplanes } => write!(f, "common-point {hyperplanes:?}"),
            Finding::VertexOnBoundary { hyperplanes } => {
                write!(f, "vertex-on-boundary {hyperplanes:?}")
            }
            Finding::TangentFlat { hyperplanes } => write!(f, "tangent-flat {hyperplanes:?}"),
        }
    }
}

/// Conditions on the hyperplanes alone.
pub fn hyperplane_findings(hyperplanes: &[Hyperplane], dim: usize) -> Result<Vec<Finding>> {
    let n = hyperplanes.len();
    let mut findings = Vec::new();
    for size in 1..=dim.min(n) {
        for subset in combinations(n, size) {
            let sol = solve_affine_system(&equations(hyperplanes, &subset), dim)?;
            let actual = sol.map(|s| s.dim);
            if actual != Some(dim - size) {
                findings.push(Finding::FlatDimension {
                    hyperplanes: subset,
                    expected: dim - size,
                    actual,
                });
            }
        }
    }
    for subset in combinations(n, dim + 1) {
        if solve_affine_system(&equations(hyperplanes, &subset), dim)?.is_some() {
            findings.push(Finding::CommonPoint {
                hyperplanes: subset,
            });
        }
    }
    Ok(findings)
}

/// Checks every general-position condition between `hyperplanes` and `body`.
/// An empty result means the pair is in general position.
pub fn general_position_check(
    hyperplanes: &[Hyperplane],
    body: &ConvexBody,
) -> Result<Vec<Finding>> {
    let dim = body.dim();
    let mut findings = hyperplane_findings(hyperplanes, dim)?;
    if body.is_empty() {
        return Ok(findings);
    }
    let n = hyperplanes.len();
    for size in 1..=dim.min(n) {
        for subset in combinations(n, size) {
            let eqs = equations(hyperplanes, &subset);
            let Some(sol) = solve_affine_system(&eqs, dim)? else {
                continue;
            };
            if sol.dim == 0 {
                if body.contains(&sol.point) && !body.contains_in_interior(&sol.point) {
                    findings.push(Finding::VertexOnBoundary {
                        hyperplanes: subset,
                    });
                }
                continue;
            }
            let mut meets = eqs.clone();
            meets.extend_from_slice(body.halfspaces());
            if !feasible(&meets, dim)?.is_feasible() {
                continue;
            }
            let mut inside = eqs;
            inside.extend(body.interior());
            if !feasible(&inside, dim)?.is_feasible() {
                findings.push(Finding::TangentFlat {
                    hyperplanes: subset,
                });
            }
        }
    }
    Ok(findings)
}

fn equations(hyperplanes: &[Hyperplane], subset: &[usize]) -> Vec<LinearConstraint> {
    subset
        .iter()
        .map(|&i| hyperplanes[i].sign_constraint(Sign::Zero))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_arrangement, restrict_to_hyperplane, SignVector};
    use crate::exact::{int, vector};

    fn h(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::from_ints(normal, offset).unwrap()
    }

    fn boxed(lo: &[i64], hi: &[i64]) -> ConvexBody {
        ConvexBody::axis_box(&vector(lo), &vector(hi)).unwrap()
    }

    fn class_of(hs: Vec<Hyperplane>, signs: &str, body: &ConvexBody) -> FaceClass {
        let arr = build_arrangement(hs, body.dim()).unwrap();
        let face = arr.face(&signs.parse::<SignVector>().unwrap()).unwrap();
        classify_face(face, body).unwrap()
    }

    #[test]
    fn classify_axes_against_boxes() {
        let axes = || vec![h(&[1, 0], 0), h(&[0, 1], 0)];
        let k = boxed(&[1, -3], &[2, 3]);
        assert_eq!(class_of(axes(), "0+", &k), FaceClass::Outer);
        assert_eq!(class_of(axes(), "+0", &k), FaceClass::Crossing);
        let square = boxed(&[-1, -1], &[1, 1]);
        assert_eq!(class_of(axes(), "00", &square), FaceClass::Inner);
    }

    #[test]
    fn empty_body_makes_everything_outer() {
        let k = ConvexBody::from_pairs(1, vec![(vector(&[1]), int(1)), (vector(&[-1]), int(0))])
            .unwrap();
        assert!(k.is_empty());
        assert_eq!(class_of(vec![h(&[1], 0)], "0", &k), FaceClass::Outer);
    }

    #[test]
    fn whole_space_makes_everything_inner() {
        let k = ConvexBody::whole_space(2);
        assert_eq!(class_of(vec![h(&[1, 0], 0)], "+", &k), FaceClass::Inner);
    }

    #[test]
    fn slicing_a_box() {
        let k = boxed(&[1, -3], &[2, 3]);
        let hs = [h(&[1, 0], 0), h(&[0, 1], 0)];
        let on_x_axis = restrict_to_hyperplane(&hs, &hs[1]).unwrap();
        let slice = intersect_body_with_flat(&k, &on_x_axis.chart).unwrap();
        assert_eq!(slice.dim(), 1);
        assert!(slice.contains(&[int(1)]) && slice.contains(&[int(2)]));
        assert!(!slice.contains(&[int(3)]) && !slice.contains(&[int(0)]));
        let on_y_axis = restrict_to_hyperplane(&hs, &hs[0]).unwrap();
        assert!(intersect_body_with_flat(&k, &on_y_axis.chart)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn slicing_a_halfplane_gives_a_halfline() {
        let k = ConvexBody::from_pairs(2, vec![(vector(&[1, 0]), int(0))]).unwrap();
        let hs = [h(&[0, 1], 0)];
        let r = restrict_to_hyperplane(&hs, &hs[0]).unwrap();
        let s = intersect_body_with_flat(&k, &r.chart).unwrap();
        assert_eq!(s.halfspaces().len(), 1);
        assert!(s.contains(&[int(0)]) && s.contains(&[int(100)]) && !s.contains(&[int(-1)]));
    }

    #[test]
    fn general_position_findings() {
        let k = boxed(&[1, -3], &[2, 3]);
        let axes = [h(&[1, 0], 0), h(&[0, 1], 0)];
        assert!(general_position_check(&axes, &k).unwrap().is_empty());

        let parallel = [h(&[1, 0], 0), h(&[1, 0], 1)];
        let f = general_position_check(&parallel, &k).unwrap();
        assert!(f.contains(&Finding::FlatDimension {
            hyperplanes: vec![0, 1],
            expected: 0,
            actual: None
        }));

        let corner = boxed(&[0, 0], &[1, 1]);
        let f = general_position_check(&axes, &corner).unwrap();
        assert!(f.contains(&Finding::VertexOnBoundary {
            hyperplanes: vec![0, 1]
        }));
        assert!(f.contains(&Finding::TangentFlat {
            hyperplanes: vec![0]
        }));

        let concurrent = [h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 1], 0)];
        let f = hyperplane_findings(&concurrent, 2).unwrap();
        assert_eq!(
            f,
            vec![Finding::CommonPoint {
                hyperplanes: vec![0, 1, 2]
            }]
        );
    }

    #[test]
    fn rejects_open_halfspaces() {
        let strict = LinearConstraint::gt(vector(&[1]), int(0));
        assert!(ConvexBody::new(1, vec![strict]).is_err());
    }
}
