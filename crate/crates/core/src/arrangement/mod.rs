//! Face lattices of hyperplane arrangements, keyed by sign vector.
//!
//! [`build_arrangement`] enumerates every flat cut out by at most `d`
//! hyperplanes, then fills each flat bottom-up: the cells of the induced
//! arrangement inside a flat are found by pushing every face of its
//! codimension-one subflats off to both sides and keeping the sign
//! patterns reachable by a short step from the subface.
//! [`enumerate_faces_oracle`] answers the same question by brute force over
//! `{-,0,+}^n` and is kept independent for cross-checks.

mod hyperplane;
mod oracle;
mod restrict;

pub use hyperplane::{Hyperplane, Sign, SignVector};
pub use oracle::{enumerate_faces_oracle, OracleFaces, ORACLE_MAX_HYPERPLANES};
pub use restrict::{restrict_to_hyperplane, Chart, Restriction};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};

use crate::exact::{
    dot, feasible, format_point, solve_affine_system, AffineSolution, LinearConstraint, Rational,
    Relation,
};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identifies the arrangement a [`Face`] was built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrangementId(u64);

/// A relatively open face of an arrangement.
#[derive(Clone, Debug)]
pub struct Face {
    arrangement: ArrangementId,
    signs: SignVector,
    dim: usize,
    witness: Vec<Rational>,
    region: Vec<LinearConstraint>,
}

impl Face {
    pub fn signs(&self) -> &SignVector {
        &self.signs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// A point in the relative interior.
    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn arrangement(&self) -> ArrangementId {
        self.arrangement
    }

    /// One constraint per hyperplane: equalities at zero positions and
    /// strict inequalities elsewhere. Their solution set is the face.
    pub fn region(&self) -> &[LinearConstraint] {
        &self.region
    }

    pub fn flat_equations(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.region.iter().filter(|c| c.relation() == Relation::Eq)
    }

    pub fn is_cell(&self) -> bool {
        self.signs.zero_count() == 0
    }
}

/// `f` lies in the closure of `g`.
pub fn is_subface(f: &Face, g: &Face) -> Result<bool> {
    if f.arrangement != g.arrangement {
        return Err(Error::Malformed(
            "faces belong to different arrangements".into(),
        ));
    }
    Ok(f.signs.conforms_to(&g.signs))
}

/// Sign vectors of the faces of one flat, each with a witness point.
type Witnessed = Vec<(SignVector, Vec<Rational>)>;

#[derive(Clone, Debug)]
pub struct Arrangement {
    id: ArrangementId,
    hyperplanes: Vec<Hyperplane>,
    dim: usize,
    faces: Vec<Vec<Face>>,
    index: HashMap<SignVector, (usize, usize)>,
    simple: bool,
}

impl Arrangement {
    pub fn id(&self) -> ArrangementId {
        self.id
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Faces of dimension `k`, sorted by sign vector.
    pub fn faces_of_dim(&self, k: usize) -> &[Face] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn cells(&self) -> &[Face] {
        self.faces_of_dim(self.dim)
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn face(&self, signs: &SignVector) -> Option<&Face> {
        self.index.get(signs).map(|&(k, i)| &self.faces[k][i])
    }

    /// Dimension and position within [`Arrangement::faces_of_dim`].
    pub fn position(&self, signs: &SignVector) -> Option<(usize, usize)> {
        self.index.get(signs).copied()
    }

    /// Whether the hyperplanes are in general position among themselves:
    /// every `j <= d` of them meet in a `(d-j)`-flat and no `d+1` share a point.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// One line per face, `dim;signs;witness`, sorted lexicographically.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .faces()
            .map(|f| format!("{};{};{}", f.dim, f.signs, format_point(&f.witness)))
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn face_counts(arr: &Arrangement) -> Vec<usize> {
    arr.face_counts()
}

struct Flat {
    zeros: Vec<usize>,
    solution: AffineSolution,
}

/// Builds the complete face lattice of the arrangement of `hyperplanes` in `R^dim`.
pub fn build_arrangement(hyperplanes: Vec<Hyperplane>, dim: usize) -> Result<Arrangement> {
    for (i, h) in hyperplanes.iter().enumerate() {
        if h.dim() != dim {
            return Err(Error::Malformed(format!(
                "hyperplane {i} lives in R^{}, expected R^{dim}",
                h.dim()
            )));
        }
    }
    let mut seen: HashMap<&Hyperplane, usize> = HashMap::new();
    for (i, h) in hyperplanes.iter().enumerate() {
        if let Some(&j) = seen.get(h) {
            return Err(Error::DuplicateHyperplane(j, i));
        }
        seen.insert(h, i);
    }

    let id = ArrangementId(NEXT_ID.fetch_add(1, Ordering::Relaxed));
    let n = hyperplanes.len();
    let (flats, simple) = enumerate_flats(&hyperplanes, dim)?;

    let mut by_zeros: BTreeMap<Vec<usize>, Witnessed> = BTreeMap::new();
    for k in 0..=dim {
        let layer: Vec<&Flat> = flats.iter().filter(|f| f.solution.dim == k).collect();
        let results: Vec<Result<(Vec<usize>, Witnessed)>> = layer
            .par_iter()
            .map(|flat| {
                let faces = fill_flat(flat, &flats, &by_zeros, &hyperplanes)?;
                Ok((flat.zeros.clone(), faces))
            })
            .collect();
        for r in results {
            let (zeros, faces) = r?;
            by_zeros.insert(zeros, faces);
        }
    }

    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); dim + 1];
    for flat in &flats {
        for (signs, witness) in by_zeros.remove(&flat.zeros).unwrap_or_default() {
            let region = region_of(&hyperplanes, &signs);
            faces[flat.solution.dim].push(Face {
                arrangement: id,
                signs,
                dim: flat.solution.dim,
                witness,
                region,
            });
        }
    }
    let mut index = HashMap::new();
    for (k, layer) in faces.iter_mut().enumerate() {
        layer.sort_by(|a, b| a.signs.cmp(&b.signs));
        for (i, f) in layer.iter().enumerate() {
            index.insert(f.signs.clone(), (k, i));
        }
    }
    debug_assert_eq!(index.len(), faces.iter().map(Vec::len).sum::<usize>());
    debug_assert!(faces.iter().flatten().all(|f| f.signs.len() == n));

    Ok(Arrangement {
        id,
        hyperplanes,
        dim,
        faces,
        index,
        simple,
    })
}

pub(crate) fn region_of(hyperplanes: &[Hyperplane], signs: &SignVector) -> Vec<LinearConstraint> {
    hyperplanes
        .iter()
        .zip(&signs.0)
        .map(|(h, &s)| h.sign_constraint(s))
        .collect()
}

/// All nonempty flats, keyed by the full set of hyperplanes containing them,
/// plus whether the family is in general position.
fn enumerate_flats(hyperplanes: &[Hyperplane], dim: usize) -> Result<(Vec<Flat>, bool)> {
    let n = hyperplanes.len();
    let mut simple = true;
    let mut flats: BTreeMap<Vec<usize>, AffineSolution> = BTreeMap::new();
    flats.insert(
        Vec::new(),
        solve_affine_system(&[], dim)?.expect("empty system is consistent"),
    );
    for size in 1..=dim.min(n) {
        for subset in combinations(n, size) {
            let eqs: Vec<LinearConstraint> = subset
                .iter()
                .map(|&i| hyperplanes[i].sign_constraint(Sign::Zero))
                .collect();
            let Some(sol) = solve_affine_system(&eqs, dim)? else {
                simple = false;
                continue;
            };
            if sol.dim != dim - size {
                simple = false;
            }
            let zeros: Vec<usize> = (0..n)
                .filter(|&i| contains_flat(&hyperplanes[i], &sol))
                .collect();
            if zeros.len() != dim - sol.dim {
                simple = false;
            }
            flats.entry(zeros).or_insert(sol);
        }
    }
    let flats = flats
        .into_iter()
        .map(|(zeros, solution)| Flat { zeros, solution })
        .collect();
    Ok((flats, simple))
}

fn contains_flat(h: &Hyperplane, flat: &AffineSolution) -> bool {
    h.eval(&flat.point).is_zero()
        && flat
            .basis
            .iter()
            .all(|v| crate::exact::dot(h.normal(), v).is_zero())
}

/// Faces whose zero set is exactly `flat.zeros`, i.e. the cells of the
/// arrangement induced inside the flat.
fn fill_flat(
    flat: &Flat,
    flats: &[Flat],
    done: &BTreeMap<Vec<usize>, Witnessed>,
    hyperplanes: &[Hyperplane],
) -> Result<Witnessed> {
    let k = flat.solution.dim;
    let point = &flat.solution.point;
    let children: Vec<&Flat> = if k == 0 {
        Vec::new()
    } else {
        flats
            .iter()
            .filter(|c| c.solution.dim == k - 1 && is_superset(&c.zeros, &flat.zeros))
            .collect()
    };
    if children.is_empty() {
        // No hyperplane cuts this flat, so it is a single face.
        let signs = SignVector::of_point(hyperplanes, point);
        return Ok(vec![(signs, point.clone())]);
    }

    let mut found: BTreeMap<SignVector, Vec<Rational>> = BTreeMap::new();
    let mut rejected: BTreeSet<SignVector> = BTreeSet::new();
    for child in children {
        let free: Vec<usize> = child
            .zeros
            .iter()
            .copied()
            .filter(|i| !flat.zeros.contains(i))
            .collect();
        // Restrictions of the freed hyperplanes to the flat's directions.
        let local: Vec<Vec<Rational>> = free
            .iter()
            .map(|&i| {
                flat.solution
                    .basis
                    .iter()
                    .map(|v| dot(hyperplanes[i].normal(), v))
                    .collect()
            })
            .collect();
        for (signs, w) in done.get(&child.zeros).map(Vec::as_slice).unwrap_or(&[]) {
            for mask in 0..(1u32 << free.len()) {
                let mut candidate = signs.clone();
                let mut system = Vec::with_capacity(free.len());
                for (b, &i) in free.iter().enumerate() {
                    let sign = if mask & (1 << b) != 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                    candidate.0[i] = sign;
                    let a = local[b].clone();
                    system.push(match sign {
                        Sign::Plus => LinearConstraint::gt(a, Rational::zero()),
                        _ => LinearConstraint::lt(a, Rational::zero()),
                    });
                }
                if found.contains_key(&candidate) || rejected.contains(&candidate) {
                    continue;
                }
                // The candidate exists iff it is reachable from the child's
                // witness by a small step inside the flat.
                match feasible(&system, k)?.into_witness() {
                    Some(z) => {
                        let witness = step_off(w, &z, flat, &candidate, hyperplanes);
                        found.insert(candidate, witness);
                    }
                    None => {
                        rejected.insert(candidate);
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// `w + delta * u` with `u = basis · z`, for a step small enough that every
/// hyperplane not vanishing at `w` keeps its sign.
fn step_off(
    w: &[Rational],
    z: &[Rational],
    flat: &Flat,
    target: &SignVector,
    hyperplanes: &[Hyperplane],
) -> Vec<Rational> {
    let mut u = vec![Rational::zero(); w.len()];
    for (zj, v) in z.iter().zip(&flat.solution.basis) {
        for (uk, vk) in u.iter_mut().zip(v) {
            *uk += zj * vk;
        }
    }
    // Powers of two keep witness denominators from compounding.
    let mut delta = Rational::one();
    let half = crate::exact::ratio(1, 2);
    for h in hyperplanes {
        let value = h.eval(w);
        let rate = dot(h.normal(), &u);
        if value.is_zero() || rate.is_zero() || value.is_positive() == rate.is_positive() {
            continue;
        }
        let limit = (value / rate).abs();
        while delta >= limit {
            delta *= &half;
        }
    }
    let out: Vec<Rational> = w.iter().zip(&u).map(|(a, b)| a + &delta * b).collect();
    debug_assert_eq!(&SignVector::of_point(hyperplanes, &out), target);
    out
}

fn is_superset(big: &[usize], small: &[usize]) -> bool {
    big.len() > small.len() && small.iter().all(|i| big.contains(i))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::from_ints(normal, offset).unwrap()
    }

    fn axes() -> Arrangement {
        build_arrangement(vec![h(&[1, 0], 0), h(&[0, 1], 0)], 2).unwrap()
    }

    #[test]
    fn empty_arrangement_is_one_cell() {
        let arr = build_arrangement(vec![], 2).unwrap();
        assert_eq!(arr.face_counts(), vec![0, 0, 1]);
        assert!(arr.cells()[0].signs().is_empty());
        let arr = build_arrangement(vec![], 3).unwrap();
        assert_eq!(face_counts(&arr), vec![0, 0, 0, 1]);
    }

    #[test]
    fn coordinate_axes() {
        let arr = axes();
        assert_eq!(arr.face_counts(), vec![1, 4, 4]);
        assert_eq!(arr.faces().count(), 9);
        assert!(arr.is_simple());
    }

    #[test]
    fn three_generic_lines() {
        let arr = build_arrangement(vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 1], 1)], 2).unwrap();
        assert_eq!(arr.face_counts(), vec![3, 9, 7]);
    }

    #[test]
    fn witnesses_reproduce_signs() {
        let arr = build_arrangement(
            vec![
                h(&[1, 2, 0], 1),
                h(&[0, 1, -1], 0),
                h(&[3, 0, 1], 2),
                h(&[1, 1, 1], -1),
            ],
            3,
        )
        .unwrap();
        for f in arr.faces() {
            assert_eq!(
                &SignVector::of_point(arr.hyperplanes(), f.witness()),
                f.signs()
            );
            assert!(f.region().iter().all(|c| c.is_satisfied_by(f.witness())));
        }
    }

    #[test]
    fn duplicates_rejected() {
        let err = build_arrangement(vec![h(&[1, 0], 0), h(&[2, 0], 0)], 2).unwrap_err();
        assert!(matches!(err, Error::DuplicateHyperplane(0, 1)));
    }

    #[test]
    fn degenerate_inputs_are_built_and_flagged() {
        // Parallel pair.
        let arr = build_arrangement(vec![h(&[1, 0], 0), h(&[1, 0], 1)], 2).unwrap();
        assert!(!arr.is_simple());
        assert_eq!(arr.face_counts(), vec![0, 2, 3]);
        // Three concurrent lines: one vertex, six rays, six sectors.
        let arr = build_arrangement(vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 1], 0)], 2).unwrap();
        assert!(!arr.is_simple());
        assert_eq!(arr.face_counts(), vec![1, 6, 6]);
        let v = &arr.faces_of_dim(0)[0];
        assert_eq!(v.signs().zero_count(), 3);
    }

    #[test]
    fn subface_relation() {
        let arr = axes();
        let origin = arr.face(&"00".parse().unwrap()).unwrap();
        let pp = arr.face(&"++".parse().unwrap()).unwrap();
        let mm = arr.face(&"--".parse().unwrap()).unwrap();
        let edge = arr.face(&"0+".parse().unwrap()).unwrap();
        assert!(is_subface(pp, pp).unwrap());
        assert!(is_subface(origin, pp).unwrap());
        assert!(!is_subface(edge, mm).unwrap());
        let other = axes();
        assert!(is_subface(origin, &other.cells()[0]).is_err());
    }

    #[test]
    fn dump_is_sorted_and_stable() {
        let a = axes().dump();
        let b = axes().dump();
        assert_eq!(a, b);
        assert!(a.starts_with("0;00;(0,0)\n"));
        let lines: Vec<&str> = a.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert_eq!(lines.len(), 9);
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
