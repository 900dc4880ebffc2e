use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use super::AlgebraError;

/// The value `slope * sigma + offset`, with `sigma` the flow exponent kept
/// symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaLinear {
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl SigmaLinear {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        Self { slope, offset }
    }

    pub fn ints(slope: i64, offset: i64) -> Self {
        Self::new(rational::int(slope), rational::int(offset))
    }

    pub fn constant(offset: Rational) -> Self {
        Self::new(Rational::zero(), offset)
    }

    pub fn sigma() -> Self {
        Self::ints(1, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn at(&self, sigma: &Rational) -> Rational {
        &self.slope * sigma + &self.offset
    }

    /// The unique root `-offset / slope`, when the slope is nonzero.
    pub fn root(&self) -> Option<Rational> {
        if self.slope.is_zero() {
            None
        } else {
            Some(-&self.offset / &self.slope)
        }
    }
}

impl fmt::Display for SigmaLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope = match rational::to_string(&self.slope).as_str() {
            "1" => String::new(),
            "-1" => "-".into(),
            s => s.to_string(),
        };
        match (self.slope.is_zero(), self.offset.is_zero()) {
            (true, _) => write!(f, "{}", rational::to_string(&self.offset)),
            (false, true) => write!(f, "{slope}σ"),
            (false, false) => write!(
                f,
                "{slope}σ {} {}",
                if self.offset.is_negative() { "-" } else { "+" },
                rational::to_string(&self.offset.abs())
            ),
        }
    }
}

/// Coefficient ring for [`super::RhoPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn scaled(&self, by: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * other)
    }
    fn scaled(&self, by: &Rational) -> Self {
        self * by
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Coeff for SigmaLinear {
    fn nil() -> Self {
        Self::constant(Rational::zero())
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(&self.slope) && Zero::is_zero(&self.offset)
    }
    fn plus(&self, other: &Self) -> Self {
        Self::new(&self.slope + &other.slope, &self.offset + &other.offset)
    }
    fn negated(&self) -> Self {
        Self::new(-&self.slope, -&self.offset)
    }
    fn times(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !Zero::is_zero(&self.slope) && !Zero::is_zero(&other.slope) {
            return Err(AlgebraError::DegreeOverflowInSigma);
        }
        Ok(Self::new(
            &self.slope * &other.offset + &self.offset * &other.slope,
            &self.offset * &other.offset,
        ))
    }
    fn scaled(&self, by: &Rational) -> Self {
        Self::new(&self.slope * by, &self.offset * by)
    }
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn product_stays_linear() {
        let a = SigmaLinear::ints(2, 1);
        let b = SigmaLinear::constant(int(3));
        assert_eq!(a.times(&b).unwrap(), SigmaLinear::ints(6, 3));
        assert_eq!(b.times(&a).unwrap(), SigmaLinear::ints(6, 3));
    }

    #[test]
    fn quadratic_in_sigma_rejected() {
        let a = SigmaLinear::ints(1, -1);
        assert_eq!(a.times(&a), Err(AlgebraError::DegreeOverflowInSigma));
    }

    #[test]
    fn evaluation_and_root() {
        let a = SigmaLinear::ints(-2, 3);
        assert_eq!(a.at(&frac(3, 2)), int(0));
        assert_eq!(a.root(), Some(frac(3, 2)));
        assert_eq!(SigmaLinear::constant(int(4)).root(), None);
        assert_eq!(a.to_string(), "-2σ + 3");
        assert_eq!(SigmaLinear::ints(486, -324).to_string(), "486σ - 324");
        assert_eq!(SigmaLinear::ints(-1, 2).to_string(), "-σ + 2");
    }
}
