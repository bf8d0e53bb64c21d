//! Coefficient fields for binomial relations and monomial R-matrices.
//!
//! Everything that carries a scalar (rewrite rules, reductions, linear
//! R-maps) is generic over [`Scalar`]. The set-theoretic case uses
//! [`UnitScalar`], which makes every coefficient the literal `1` and costs
//! nothing at runtime.

use std::fmt;
use std::ops::{Div, Mul};

use num_traits::One;

/// Exact rationals with arbitrary precision.
pub type Rational = num_rational::BigRational;

/// Multiplicative group of a field, as much as the rewriting code needs.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + One + Mul<Output = Self> + Div<Output = Self>
{
    fn is_zero_scalar(&self) -> bool;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for Rational {
    fn is_zero_scalar(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Scalar for num_rational::Rational64 {
    fn is_zero_scalar(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Scalar for f64 {
    fn is_zero_scalar(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for f32 {
    fn is_zero_scalar(&self) -> bool {
        *self == 0.0
    }
}

/// The trivial coefficient: the only value is `1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnitScalar;

impl Mul for UnitScalar {
    type Output = UnitScalar;
    fn mul(self, _: UnitScalar) -> UnitScalar {
        UnitScalar
    }
}

impl Div for UnitScalar {
    type Output = UnitScalar;
    fn div(self, _: UnitScalar) -> UnitScalar {
        UnitScalar
    }
}

impl One for UnitScalar {
    fn one() -> Self {
        UnitScalar
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")
    }
}

impl Scalar for UnitScalar {
    fn is_zero_scalar(&self) -> bool {
        false
    }
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = num.parse().ok()?;
    let q: BigInt = den.parse().ok()?;
    if num_traits::Zero::is_zero(&q) {
        return None;
    }
    Some(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-1/3").unwrap(), Rational::new((-1).into(), 3.into()));
        assert_eq!(parse_rational("4/2").unwrap(), Rational::from_integer(2.into()));
        assert_eq!(parse_rational(" 7 ").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn reciprocals() {
        let q = parse_rational("-2/5").unwrap();
        assert_eq!(q.recip() * q, Rational::one());
        assert_eq!(UnitScalar.recip(), UnitScalar);
        assert_eq!(4.0f64.recip(), 0.25);
    }
}
