use num_traits::{One, Zero};

use super::Hyperplane;
use crate::error::{Error, Result};
use crate::exact::{dot, LinearConstraint, Rational};

/// Affine parametrization `t ↦ origin + Σ t_k basis_k` of a hyperplane.
///
/// The basis is `e_j - (a_j / a_p) e_p` for every `j ≠ p`, where `p` is the
/// first nonzero coordinate of the normal, so local coordinates of a point
/// on the hyperplane are just its ambient coordinates with `p` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    origin: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    pivot: usize,
}

impl Chart {
    pub fn of(h: &Hyperplane) -> Chart {
        let d = h.dim();
        let a = h.normal();
        let pivot = a.iter().position(|v| !v.is_zero()).expect("nonzero normal");
        let mut origin = vec![Rational::zero(); d];
        origin[pivot] = h.offset() / &a[pivot];
        let basis = (0..d)
            .filter(|&j| j != pivot)
            .map(|j| {
                let mut v = vec![Rational::zero(); d];
                v[j] = Rational::one();
                v[pivot] = -(&a[j] / &a[pivot]);
                v
            })
            .collect();
        Chart {
            origin,
            basis,
            pivot,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn local_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn to_ambient(&self, t: &[Rational]) -> Vec<Rational> {
        assert_eq!(t.len(), self.local_dim(), "local point has wrong dimension");
        let mut x = self.origin.clone();
        for (tk, v) in t.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += tk * vi;
            }
        }
        x
    }

    /// Local coordinates of a point assumed to lie on the hyperplane.
    pub fn to_local(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter()
            .enumerate()
            .filter(|&(j, _)| j != self.pivot)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Substitutes the parametrization into `coeffs · x (rel) offset`.
    pub fn pull_back(&self, c: &LinearConstraint) -> LinearConstraint {
        let coeffs = self.basis.iter().map(|v| dot(c.coeffs(), v)).collect();
        let offset = c.offset() - dot(c.coeffs(), &self.origin);
        LinearConstraint::new(coeffs, offset, c.relation())
    }
}

/// The arrangement induced on one of its hyperplanes.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub induced: Vec<Hyperplane>,
    /// Position in the input of the hyperplane each induced one came from.
    pub sources: Vec<usize>,
    pub chart: Chart,
}

/// Restricts `hyperplanes \ {h}` to `h`, in `d-1` intrinsic coordinates.
pub fn restrict_to_hyperplane(hyperplanes: &[Hyperplane], h: &Hyperplane) -> Result<Restriction> {
    let pos = hyperplanes
        .iter()
        .position(|g| g == h)
        .ok_or_else(|| Error::Malformed("restricting hyperplane is not in the input".into()))?;
    let chart = Chart::of(h);
    let mut induced: Vec<Hyperplane> = Vec::new();
    let mut sources = Vec::new();
    for (j, g) in hyperplanes.iter().enumerate() {
        if j == pos {
            continue;
        }
        let pulled = chart.pull_back(&g.sign_constraint(super::Sign::Zero));
        if pulled.trivial().is_some() {
            return Err(Error::DegenerateRestriction(j));
        }
        let ih = Hyperplane::new(pulled.coeffs().to_vec(), pulled.offset().clone())?;
        if induced.contains(&ih) {
            return Err(Error::DegenerateRestriction(j));
        }
        induced.push(ih);
        sources.push(j);
    }
    Ok(Restriction {
        induced,
        sources,
        chart,
    })
}
