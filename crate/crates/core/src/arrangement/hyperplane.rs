use std::fmt;

use dashu_int::ops::Gcd;
use dashu_int::UBig;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, format_rational, Integer, LinearConstraint, Rational};

/// The hyperplane `{x : normal · x = offset}` in canonical form: integer
/// coefficients with gcd one and a positive leading nonzero normal entry.
/// Two hyperplanes describe the same set iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Malformed("hyperplane with zero normal".into()));
        }
        let denom_lcm = normal
            .iter()
            .chain(std::iter::once(&offset))
            .fold(UBig::ONE, |acc, r| {
                let g = (&acc).gcd(r.denominator());
                acc / g * r.denominator()
            });
        let scaled: Vec<Integer> = normal
            .iter()
            .chain(std::iter::once(&offset))
            .map(|r| r.numerator() * Integer::from(&denom_lcm / r.denominator()))
            .collect();
        let g = Integer::from(scaled.iter().fold(UBig::ZERO, |acc, v| {
            if v.is_zero() {
                acc
            } else if acc.is_zero() {
                UBig::try_from(v.abs()).expect("absolute value is nonnegative")
            } else {
                (&acc).gcd(v)
            }
        }));
        let lead_negative = scaled
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(Signed::is_negative);
        let g = if lead_negative { -g } else { g };
        let mut coeffs: Vec<Rational> =
            scaled.into_iter().map(|v| Rational::from(v / &g)).collect();
        let offset = coeffs.pop().expect("offset is present");
        Ok(Hyperplane {
            normal: coeffs,
            offset,
        })
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Result<Self> {
        Self::new(
            normal.iter().map(|&v| Rational::from(v)).collect(),
            Rational::from(offset),
        )
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · x - offset`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn side(&self, x: &[Rational]) -> Sign {
        Sign::of(&self.eval(x))
    }

    /// The constraint describing the relatively open set where this
    /// hyperplane's sign equals `sign`.
    pub fn sign_constraint(&self, sign: Sign) -> LinearConstraint {
        match sign {
            Sign::Zero => LinearConstraint::eq(self.normal.clone(), self.offset.clone()),
            Sign::Plus => LinearConstraint::gt(self.normal.clone(), self.offset.clone()),
            Sign::Minus => LinearConstraint::lt(self.normal.clone(), self.offset.clone()),
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(format_rational).collect();
        write!(f, "[{}] . x = {}", parts.join(","), self.offset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Plus
        } else if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }
}

/// One entry per hyperplane of the owning arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Zero).count()
    }

    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Zero)
            .map(|(i, _)| i)
    }

    /// `self` lies in the closure of `other`: every nonzero entry of `self`
    /// agrees with `other`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| *a == Sign::Zero || a == b)
    }

    pub fn of_point(hyperplanes: &[Hyperplane], x: &[Rational]) -> SignVector {
        SignVector(hyperplanes.iter().map(|h| h.side(x)).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn canonical_form_identifies_multiples() {
        let a = Hyperplane::from_ints(&[2, 0], 0).unwrap();
        let b = Hyperplane::from_ints(&[-1, 0], 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.normal(), &[int(1), int(0)]);
        let c = Hyperplane::new(vec![ratio(1, 2), ratio(-1, 3)], ratio(5, 6)).unwrap();
        assert_eq!(c.normal(), &[int(3), int(-2)]);
        assert_eq!(c.offset(), &int(5));
        let d = Hyperplane::from_ints(&[0, -4], 6).unwrap();
        assert_eq!(d.normal(), &[int(0), int(2)]);
        assert_eq!(d.offset(), &int(-3));
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(Hyperplane::from_ints(&[0, 0], 1).is_err());
    }

    #[test]
    fn sign_vector_text_and_conformality() {
        let v: SignVector = "0+-".parse().unwrap();
        assert_eq!(v.to_string(), "0+-");
        let cell: SignVector = "++-".parse().unwrap();
        assert!(v.conforms_to(&cell));
        assert!(!cell.conforms_to(&v));
        assert!(v.conforms_to(&v));
        assert!("x".parse::<SignVector>().is_err());
    }
}
