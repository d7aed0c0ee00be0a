use std::collections::BTreeMap;

use super::{Hyperplane, Sign, SignVector};
use crate::error::{Error, Result};
use crate::exact::{feasible, rank, LinearConstraint};

pub const ORACLE_MAX_HYPERPLANES: usize = 8;

/// Realizable sign vectors found by exhaustive search, with their dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFaces {
    pub dim: usize,
    pub faces: BTreeMap<SignVector, usize>,
}

impl OracleFaces {
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim + 1];
        for &k in self.faces.values() {
            counts[k] += 1;
        }
        counts
    }
}

/// Tests every vector of `{-,0,+}^n` for realizability.
///
/// Deliberately naive: it shares nothing with the flat-based builder except
/// the exact feasibility and rank routines.
pub fn enumerate_faces_oracle(hyperplanes: &[Hyperplane], dim: usize) -> Result<OracleFaces> {
    let n = hyperplanes.len();
    if n > ORACLE_MAX_HYPERPLANES {
        return Err(Error::Budget(format!(
            "oracle enumerates 3^n sign vectors; n = {n} exceeds {ORACLE_MAX_HYPERPLANES}"
        )));
    }
    let total = 3usize.pow(n as u32);
    let mut faces = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        let signs: Vec<Sign> = (0..n)
            .map(|_| {
                let s = [Sign::Minus, Sign::Zero, Sign::Plus][c % 3];
                c /= 3;
                s
            })
            .collect();
        let constraints: Vec<LinearConstraint> = hyperplanes
            .iter()
            .zip(&signs)
            .map(|(h, &s)| {
                let (a, b) = (h.normal().to_vec(), h.offset().clone());
                match s {
                    Sign::Zero => LinearConstraint::eq(a, b),
                    Sign::Plus => LinearConstraint::gt(a, b),
                    Sign::Minus => LinearConstraint::lt(a, b),
                }
            })
            .collect();
        if feasible(&constraints, dim)?.is_feasible() {
            let zero_normals: Vec<_> = hyperplanes
                .iter()
                .zip(&signs)
                .filter(|(_, &s)| s == Sign::Zero)
                .map(|(h, _)| h.normal().to_vec())
                .collect();
            faces.insert(SignVector(signs), dim - rank(&zero_normals));
        }
    }
    Ok(OracleFaces { dim, faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(a: i64, b: i64) -> Hyperplane {
        Hyperplane::from_ints(&[a], b).unwrap()
    }

    #[test]
    fn single_point_on_a_line() {
        let o = enumerate_faces_oracle(&[point(1, 0)], 1).unwrap();
        assert_eq!(o.faces.len(), 3);
        assert_eq!(o.counts(), vec![1, 2]);
    }

    #[test]
    fn two_points_on_a_line() {
        let o = enumerate_faces_oracle(&[point(1, 0), point(1, 1)], 1).unwrap();
        let got: Vec<String> = o.faces.keys().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["--", "0-", "+-", "+0", "++"]);
    }

    #[test]
    fn refuses_large_inputs() {
        let hs: Vec<Hyperplane> = (0..9).map(|k| point(1, k)).collect();
        assert!(matches!(
            enumerate_faces_oracle(&hs, 1),
            Err(Error::Budget(_))
        ));
    }
}
