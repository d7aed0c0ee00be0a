use num_traits::{One, Zero};

use super::{check_dims, LinearConstraint, Rational, Relation};
use crate::error::{Error, Result};

/// Solution set of a system of affine equations: `point + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub dim: usize,
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

/// Solves `a_k · x = b_k` exactly. `Ok(None)` means the system is inconsistent.
pub fn solve_affine_system(
    equalities: &[LinearConstraint],
    dim: usize,
) -> Result<Option<AffineSolution>> {
    check_dims(equalities, dim)?;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(equalities.len());
    for (k, c) in equalities.iter().enumerate() {
        match c.trivial() {
            Some(true) => continue,
            Some(false) => return Ok(None),
            None => {}
        }
        if c.relation() != Relation::Eq {
            return Err(Error::Malformed(format!(
                "constraint {k} is not an equality"
            )));
        }
        let mut row = c.coeffs().to_vec();
        row.push(c.offset().clone());
        rows.push(row);
    }

    let pivots = match reduce(&mut rows, dim) {
        Some(p) => p,
        None => return Ok(None),
    };

    let mut point = vec![Rational::zero(); dim];
    for (r, &col) in pivots.iter().enumerate() {
        point[col] = rows[r][dim].clone();
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); dim];
            v[f] = Rational::one();
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = -rows[r][f].clone();
            }
            v
        })
        .collect();
    Ok(Some(AffineSolution {
        dim: free.len(),
        point,
        basis,
    }))
}

/// Rank of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut r = v.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    reduce(&mut rows, width).map_or(0, |p| p.len())
}

/// In-place reduced row echelon form of an augmented matrix with `width`
/// coefficient columns. Returns the pivot column of each leading row, or
/// `None` when some row reads `0 = nonzero`.
fn reduce(rows: &mut Vec<Vec<Rational>>, width: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = super::recip(&rows[r][col]);
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[width].is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some(pivots)
}
