use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use super::sigma::{Coeff, SigmaLinear};
use super::AlgebraError;

/// Univariate polynomial in ρ with a tracked nominal degree.
///
/// Coefficients are stored lowest degree first with trailing zeros trimmed,
/// so the stored length never exceeds `nominal_degree + 1`. The nominal
/// degree is the degree slot the polynomial was built for; the true degree
/// can be lower after cancellation. Equality compares values only.
#[derive(Clone, Debug)]
pub struct RhoPoly<C: Coeff = Rational> {
    coeffs: Vec<C>,
    nominal_degree: usize,
}

impl<C: Coeff> PartialEq for RhoPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<C: Coeff + Eq> Eq for RhoPoly<C> {}

impl<C: Coeff> RhoPoly<C> {
    /// Nominal degree is raised to the true degree if it is smaller.
    pub fn new(mut coeffs: Vec<C>, nominal_degree: usize) -> Self {
        while coeffs.last().is_some_and(|c| c.is_nil()) {
            coeffs.pop();
        }
        let nominal_degree = nominal_degree.max(coeffs.len().saturating_sub(1));
        Self {
            coeffs,
            nominal_degree,
        }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let n = coeffs.len().saturating_sub(1);
        Self::new(coeffs, n)
    }

    pub fn zero(nominal_degree: usize) -> Self {
        Self::new(Vec::new(), nominal_degree)
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c], 0)
    }

    pub fn monomial(c: C, exponent: usize) -> Self {
        let mut coeffs = vec![C::nil(); exponent + 1];
        coeffs[exponent] = c;
        Self::new(coeffs, exponent)
    }

    pub fn nominal_degree(&self) -> usize {
        self.nominal_degree
    }

    /// Highest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients, lowest degree first, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).cloned().unwrap_or_else(C::nil)
    }

    /// Coefficients padded with zeros up to the nominal degree.
    pub fn padded_coeffs(&self) -> Vec<C> {
        (0..=self.nominal_degree).map(|i| self.coeff(i)).collect()
    }

    pub fn with_nominal(mut self, nominal_degree: usize) -> Self {
        self.nominal_degree = nominal_degree.max(self.coeffs.len().saturating_sub(1));
        self
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c.scaled(by)).collect(),
            self.nominal_degree,
        )
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let nominal = self.nominal_degree + other.nominal_degree;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(nominal));
        }
        let mut out = vec![C::nil(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_nil() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b)?);
            }
        }
        Ok(Self::new(out, nominal))
    }

    /// Formal derivative; the nominal degree drops by one (not below zero).
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scaled(&rational::int(i as i64)))
            .collect();
        Self::new(coeffs, self.nominal_degree.saturating_sub(1))
    }

    /// Coefficient reversal about `degree`: returns `ρ^degree · p(1/ρ)`.
    ///
    /// Panics if the true degree exceeds `degree`.
    pub fn reversed(&self, degree: usize) -> Self {
        assert!(
            self.coeffs.len() <= degree + 1,
            "reversal degree below true degree"
        );
        let coeffs = (0..=degree).map(|i| self.coeff(degree - i)).collect();
        Self::new(coeffs, degree)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(coeffs, self.nominal_degree.max(other.nominal_degree))
    }
}

impl RhoPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn to_sigma(&self) -> RhoPoly<SigmaLinear> {
        RhoPoly::new(
            self.coeffs
                .iter()
                .map(|c| SigmaLinear::constant(c.clone()))
                .collect(),
            self.nominal_degree,
        )
    }

    /// `(ρ + shift)^n` with nominal degree `n`.
    pub fn shifted_power(shift: &Rational, n: usize) -> Self {
        let base = Self::from_coeffs(vec![shift.clone(), Rational::one()]);
        (0..n).fold(Self::constant(Rational::one()), |acc, _| &acc * &base)
    }
}

impl RhoPoly<SigmaLinear> {
    /// Substitutes an exact value for σ.
    pub fn specialize(&self, sigma: &Rational) -> RhoPoly<Rational> {
        RhoPoly::new(
            self.coeffs.iter().map(|c| c.at(sigma)).collect(),
            self.nominal_degree,
        )
    }

    pub fn eval(&self, x: &Rational) -> SigmaLinear {
        self.coeffs
            .iter()
            .rev()
            .fold(SigmaLinear::nil(), |acc, c| acc.scaled(x).plus(c))
    }

    /// Mixed product with a rational polynomial; never overflows in σ.
    pub fn mul_rational(&self, other: &RhoPoly<Rational>) -> Self {
        self.try_mul(&other.to_sigma())
            .expect("rational factor has zero σ-slope")
    }
}

impl<C: Coeff> Add for &RhoPoly<C> {
    type Output = RhoPoly<C>;
    fn add(self, rhs: Self) -> RhoPoly<C> {
        self.zip_with(rhs, |a, b| a.plus(b))
    }
}

impl<C: Coeff> Sub for &RhoPoly<C> {
    type Output = RhoPoly<C>;
    fn sub(self, rhs: Self) -> RhoPoly<C> {
        self.zip_with(rhs, |a, b| a.minus(b))
    }
}

impl<C: Coeff> Neg for &RhoPoly<C> {
    type Output = RhoPoly<C>;
    fn neg(self) -> RhoPoly<C> {
        RhoPoly::new(
            self.coeffs.iter().map(|c| c.negated()).collect(),
            self.nominal_degree,
        )
    }
}

impl Mul for &RhoPoly<Rational> {
    type Output = RhoPoly<Rational>;
    fn mul(self, rhs: Self) -> RhoPoly<Rational> {
        self.try_mul(rhs).expect("rational multiplication is total")
    }
}

impl fmt::Display for RhoPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{}", rational::to_string(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "ρ")?,
                _ => write!(f, "ρ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RhoPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational::serde_vec::serialize(&self.padded_coeffs(), s)
    }
}

impl<'de> Deserialize<'de> for RhoPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = rational::serde_vec::deserialize(d)?;
        Ok(Self::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(c: &[i64]) -> RhoPoly {
        RhoPoly::from_ints(c)
    }

    #[test]
    fn square_of_linear() {
        let a = p(&[-1, 1]);
        assert_eq!(&a * &a, p(&[1, -2, 1]));
    }

    #[test]
    fn additive_inverse_keeps_nominal() {
        let a = p(&[1, -2, 1]);
        let z = &a + &(-&a);
        assert!(z.is_zero());
        assert_eq!(z.nominal_degree(), 2);
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn sigma_scaling() {
        let a = RhoPoly::from_coeffs(vec![SigmaLinear::ints(-1, 1), SigmaLinear::ints(2, 0)]);
        let b = a.scale(&int(3));
        assert_eq!(b.coeffs(), &[SigmaLinear::ints(-3, 3), SigmaLinear::ints(6, 0)]);
    }

    #[test]
    fn sigma_times_sigma_overflows() {
        let a = RhoPoly::from_coeffs(vec![SigmaLinear::ints(1, 0)]);
        assert_eq!(a.try_mul(&a), Err(AlgebraError::DegreeOverflowInSigma));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[1, -2, 1]).derivative(), p(&[-2, 2]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(p(&[1, 3, 3, 1]).derivative(), p(&[3, 6, 3]));
    }

    #[test]
    fn nominal_degrees() {
        let a = RhoPoly::new(vec![int(1)], 3);
        let b = RhoPoly::new(vec![int(0), int(1)], 2);
        assert_eq!((&a + &b).nominal_degree(), 3);
        assert_eq!((&a * &b).nominal_degree(), 5);
        assert_eq!((&a * &b).degree(), Some(1));
    }

    #[test]
    fn reversal() {
        let a = p(&[0, 1, 2]);
        assert_eq!(a.reversed(3), p(&[0, 2, 1, 0]).with_nominal(3));
        assert_eq!(a.reversed(3).reversed(3), a.clone().with_nominal(3));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "ρ^2 - 2ρ + 1");
        assert_eq!(p(&[0, 0, -3]).to_string(), "-3ρ^2");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn json_is_padded_lowest_first() {
        let a = RhoPoly::new(vec![int(1), int(-1)], 3);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1","-1","0","0"]"#);
        let back: RhoPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn shifted_power_is_binomial() {
        assert_eq!(RhoPoly::shifted_power(&int(1), 3), p(&[1, 3, 3, 1]));
    }
}
