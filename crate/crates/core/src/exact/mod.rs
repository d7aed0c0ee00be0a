//! Exact rational arithmetic and linear feasibility.
//!
//! Every geometric predicate in the crate reduces to one of two questions
//! answered here: what is the affine solution set of a system of equations
//! ([`solve_affine_system`]), and is a mixed system of `=`, `>=` and `>`
//! constraints satisfiable ([`feasible`]). Both are decided exactly over
//! [`Rational`].

mod affine;
#[cfg(test)]
mod dense;
mod simplex;

pub use affine::{rank, solve_affine_system, AffineSolution};
pub use simplex::{feasible, Feasibility};

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Integer = dashu_int::IBig;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = dashu_ratio::RBig;

pub fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `p / q`; panics when `q` is zero.
pub fn ratio(p: i64, q: i64) -> Rational {
    fraction(Integer::from(p), Integer::from(q))
}

/// `p / q` for big integers; panics when `q` is zero.
pub fn fraction(p: Integer, q: Integer) -> Rational {
    assert!(!q.is_zero(), "zero denominator");
    Rational::from_parts_signed(p, q)
}

pub fn recip(r: &Rational) -> Rational {
    Rational::ONE / r
}

pub fn vector(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses the `"p/q"` (or plain integer) text form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: Integer = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(fraction(p, q))
    } else {
        let p: Integer = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rational::from(p))
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

/// `coeffs · x (relation) offset`.
///
/// A constraint with an all-zero coefficient vector is normalized at
/// construction to one of two sentinels: `0 >= 0` (always true) or
/// `0 > 0` (always false).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    coeffs: Vec<Rational>,
    offset: Rational,
    relation: Relation,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, offset: Rational, relation: Relation) -> Self {
        if coeffs.iter().all(Zero::is_zero) {
            let holds = match relation {
                Relation::Eq => offset.is_zero(),
                Relation::Ge => !offset.is_positive(),
                Relation::Gt => offset.is_negative(),
            };
            let relation = if holds { Relation::Ge } else { Relation::Gt };
            return LinearConstraint {
                coeffs,
                offset: Rational::zero(),
                relation,
            };
        }
        LinearConstraint {
            coeffs,
            offset,
            relation,
        }
    }

    pub fn eq(coeffs: Vec<Rational>, offset: Rational) -> Self {
        Self::new(coeffs, offset, Relation::Eq)
    }

    pub fn ge(coeffs: Vec<Rational>, offset: Rational) -> Self {
        Self::new(coeffs, offset, Relation::Ge)
    }

    pub fn gt(coeffs: Vec<Rational>, offset: Rational) -> Self {
        Self::new(coeffs, offset, Relation::Gt)
    }

    /// `coeffs · x <= offset`, stored as `-coeffs · x >= -offset`.
    pub fn le(coeffs: Vec<Rational>, offset: Rational) -> Self {
        Self::ge(coeffs.into_iter().map(|c| -c).collect(), -offset)
    }

    /// `coeffs · x < offset`, stored as `-coeffs · x > -offset`.
    pub fn lt(coeffs: Vec<Rational>, offset: Rational) -> Self {
        Self::gt(coeffs.into_iter().map(|c| -c).collect(), -offset)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `Some(verdict)` for the normalized all-zero sentinels.
    pub fn trivial(&self) -> Option<bool> {
        if self.coeffs.iter().all(Zero::is_zero) {
            Some(self.relation == Relation::Ge)
        } else {
            None
        }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.offset,
            Relation::Ge => lhs >= self.offset,
            Relation::Gt => lhs > self.offset,
        }
    }

    /// Same constraint with both sides multiplied by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "scale factor must be positive");
        LinearConstraint::new(
            self.coeffs.iter().map(|c| c * factor).collect(),
            &self.offset * factor,
            self.relation,
        )
    }

    /// The same functional with a different relation.
    pub fn with_relation(&self, relation: Relation) -> Self {
        LinearConstraint::new(self.coeffs.clone(), self.offset.clone(), relation)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} . x {} {}",
            format_point(&self.coeffs),
            self.relation,
            self.offset
        )
    }
}

pub(crate) fn check_dims(constraints: &[LinearConstraint], dim: usize) -> Result<()> {
    for (k, c) in constraints.iter().enumerate() {
        if c.dim() != dim {
            return Err(Error::Malformed(format!(
                "constraint {k} has {} coefficients, expected {dim}",
                c.dim()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&ratio(-3, 7)), "-3/7");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(parse_rational("-3/7").unwrap(), ratio(-3, 7));
        assert_eq!(parse_rational("10/4").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn sums_agree_regardless_of_order() {
        let a = ratio(1, 3) + ratio(1, 6);
        let b = ratio(1, 6) + ratio(1, 3);
        assert_eq!(a, b);
        assert_eq!(a, ratio(1, 2));
    }

    #[test]
    fn zero_constraints_normalize_to_sentinels() {
        let z = vector(&[0, 0]);
        assert_eq!(
            LinearConstraint::eq(z.clone(), int(0)).trivial(),
            Some(true)
        );
        assert_eq!(
            LinearConstraint::ge(z.clone(), int(0)).trivial(),
            Some(true)
        );
        assert_eq!(
            LinearConstraint::gt(z.clone(), int(0)).trivial(),
            Some(false)
        );
        assert_eq!(
            LinearConstraint::eq(z.clone(), int(1)).trivial(),
            Some(false)
        );
        assert_eq!(
            LinearConstraint::ge(z.clone(), int(-1)).trivial(),
            Some(true)
        );
        assert_eq!(
            LinearConstraint::ge(vector(&[1, 0]), int(0)).trivial(),
            None
        );
    }

    #[test]
    fn le_and_lt_flip_orientation() {
        let c = LinearConstraint::le(vector(&[1]), int(2));
        assert!(c.is_satisfied_by(&[int(2)]));
        assert!(!c.is_satisfied_by(&[int(3)]));
        let s = LinearConstraint::lt(vector(&[1]), int(2));
        assert!(!s.is_satisfied_by(&[int(2)]));
        assert!(s.is_satisfied_by(&[ratio(3, 2)]));
    }
}
