//! Seeded random instances and general-position perturbation.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, with separate
//! stream ids for hyperplanes, the body and perturbation so each can be
//! regenerated independently. Integers are drawn with `rand`'s uniform
//! range sampling.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Hyperplane;
use crate::body::{general_position_check, ConvexBody};
use crate::error::{Error, Result};
use crate::exact::{dot, fraction, ratio, Integer, LinearConstraint, Rational};

const HYPERPLANE_STREAM: u64 = 0;
const BODY_STREAM: u64 = 1;
const PERTURB_STREAM: u64 = 2;

/// Rounds of [`perturb`] before giving up.
pub const PERTURB_ROUNDS: usize = 8;
/// Granularity of perturbation offsets within one `1/precision` unit.
const PERTURB_STEPS: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    /// Hyperplane coefficients are integers in `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub body_facets: usize,
    pub body_scale: Rational,
    /// Draw an axis-parallel box (`2d` facets) instead of random facets.
    pub axis_box: bool,
}

impl GenConfig {
    pub fn new(seed: u64, n: usize, d: usize) -> Self {
        GenConfig {
            seed,
            n,
            d,
            coeff_bound: 10,
            body_facets: d + 2,
            body_scale: Rational::ONE,
            axis_box: false,
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

pub fn random_hyperplanes(cfg: &GenConfig) -> Result<Vec<Hyperplane>> {
    if cfg.d == 0 {
        return Err(Error::Malformed("dimension must be at least 1".into()));
    }
    if cfg.coeff_bound < 1 {
        return Err(Error::Malformed("coeff_bound must be positive".into()));
    }
    let b = cfg.coeff_bound;
    let mut rng = rng(cfg.seed, HYPERPLANE_STREAM);
    let budget = 1000.max(50 * cfg.n);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(cfg.n);
    let mut attempts = 0;
    while out.len() < cfg.n {
        attempts += 1;
        if attempts > budget {
            return Err(Error::Generation(format!(
                "only {} distinct hyperplanes after {budget} draws with coeff_bound {b}",
                out.len()
            )));
        }
        let normal: Vec<Rational> = (0..cfg.d).map(|_| int(rng.random_range(-b..=b))).collect();
        let offset = int(rng.random_range(-b..=b));
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let h = Hyperplane::new(normal, offset)?;
        if seen.insert(h.clone()) {
            out.push(h);
        }
    }
    Ok(out)
}

/// A body around a random center with coordinates in `[-1, 1]`, strictly
/// inside every facet.
pub fn random_body(cfg: &GenConfig) -> Result<ConvexBody> {
    if cfg.body_facets == 0 && !cfg.axis_box {
        return Err(Error::Malformed("body needs at least one facet".into()));
    }
    let b = cfg.coeff_bound.max(1);
    let mut rng = rng(cfg.seed, BODY_STREAM);
    let center: Vec<Rational> = (0..cfg.d)
        .map(|_| ratio(rng.random_range(-b..=b), b))
        .collect();
    let reach = |rng: &mut ChaCha8Rng| &cfg.body_scale * ratio(rng.random_range(1..=b), b);
    let mut hs = Vec::new();
    if cfg.axis_box {
        for k in 0..cfg.d {
            let w = reach(&mut rng);
            let mut e = vec![Rational::zero(); cfg.d];
            e[k] = int(1);
            hs.push(LinearConstraint::ge(e.clone(), &center[k] - &w));
            hs.push(LinearConstraint::le(e, &center[k] + &w));
        }
    } else {
        while hs.len() < cfg.body_facets {
            let normal: Vec<Rational> = (0..cfg.d).map(|_| int(rng.random_range(-b..=b))).collect();
            let Some(linf) = normal.iter().map(|v| v.abs()).max() else {
                continue;
            };
            if linf.is_zero() {
                continue;
            }
            let offset = dot(&normal, &center) - reach(&mut rng) * linf;
            hs.push(LinearConstraint::ge(normal, offset));
        }
    }
    ConvexBody::new(cfg.d, hs)
}

/// Nudges hyperplane offsets (and, in later rounds, normals) by at most
/// `1/precision` per coefficient until the instance is in general position.
/// Inputs already in general position come back unchanged.
pub fn perturb(
    hyperplanes: &[Hyperplane],
    body: &ConvexBody,
    precision: u64,
    seed: u64,
) -> Result<Vec<Hyperplane>> {
    if precision == 0 {
        return Err(Error::Malformed("precision must be positive".into()));
    }
    let mut findings = general_position_check(hyperplanes, body)?;
    if findings.is_empty() {
        return Ok(hyperplanes.to_vec());
    }
    let mut rng = rng(seed, PERTURB_STREAM);
    let mut precision = Integer::from(precision);
    for round in 0..PERTURB_ROUNDS {
        let denom = &precision * Integer::from(PERTURB_STEPS);
        let jitter = |rng: &mut ChaCha8Rng| {
            fraction(
                rng.random_range(-PERTURB_STEPS..=PERTURB_STEPS).into(),
                denom.clone(),
            )
        };
        let mut candidate = Vec::with_capacity(hyperplanes.len());
        for h in hyperplanes {
            let normal: Vec<Rational> = if round >= PERTURB_ROUNDS / 2 {
                h.normal().iter().map(|a| a + jitter(&mut rng)).collect()
            } else {
                h.normal().to_vec()
            };
            let offset = h.offset() + jitter(&mut rng);
            if normal.iter().all(Zero::is_zero) {
                candidate.clear();
                break;
            }
            candidate.push(Hyperplane::new(normal, offset)?);
        }
        precision *= 2;
        let distinct = candidate.iter().collect::<HashSet<_>>().len();
        if candidate.len() != hyperplanes.len() || distinct != candidate.len() {
            continue;
        }
        findings = general_position_check(&candidate, body)?;
        if findings.is_empty() {
            return Ok(candidate);
        }
    }
    Err(Error::Perturbation {
        rounds: PERTURB_ROUNDS,
        findings,
    })
}
