//! Symmetric homogeneous polynomials in two principal curvatures, written in
//! the basis `H^(g-2i) K^i` with `H = λ1 + λ2`, `K = λ1 λ2`.

mod lambda;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::RhoPoly;

pub use lambda::LambdaPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HkError {
    #[error("degree {degree} needs {expected} coefficients, got {got}")]
    CoefficientCount { degree: usize, expected: usize, got: usize },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
}

/// `Σ c_{i+1} H^(g-2i) K^i`, coefficient slots stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHk")]
pub struct HKPoly {
    degree: usize,
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawHk {
    degree: usize,
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<RawHk> for HKPoly {
    type Error = HkError;
    fn try_from(raw: RawHk) -> Result<Self, HkError> {
        HKPoly::new(raw.degree, raw.coeffs)
    }
}

fn slots(degree: usize) -> usize {
    degree / 2 + 1
}

impl HKPoly {
    pub fn new(degree: usize, coeffs: Vec<Rational>) -> Result<Self, HkError> {
        let expected = slots(degree);
        if coeffs.len() != expected {
            return Err(HkError::CoefficientCount { degree, expected, got: coeffs.len() });
        }
        Ok(Self { degree, coeffs })
    }

    /// Panics on a wrong coefficient count; meant for literals.
    pub fn from_ints(degree: usize, coeffs: &[i64]) -> Self {
        Self::new(degree, coeffs.iter().map(|&c| rational::int(c)).collect()).expect("coefficient count")
    }

    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: vec![Rational::zero(); slots(degree)] }
    }

    pub fn constant(c: Rational) -> Self {
        Self { degree: 0, coeffs: vec![c] }
    }

    pub fn h() -> Self {
        Self::from_ints(1, &[1])
    }

    pub fn k() -> Self {
        Self::from_ints(2, &[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * by).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Sum of two forms of equal degree. A zero summand takes on the degree
    /// of the other, so derivative results whose degree bookkeeping went
    /// negative can still be combined.
    pub fn add(&self, other: &Self) -> Self {
        if self.degree != other.degree {
            if self.is_zero() {
                return other.clone();
            }
            if other.is_zero() {
                return self.clone();
            }
            panic!("adding forms of degree {} and {}", self.degree, other.degree);
        }
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Zero of degree `d`, or of degree 0 when `d` is negative.
    fn vanishing(d: isize) -> Self {
        Self::zero(d.max(0) as usize)
    }

    pub fn partial_h(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let g = self.degree;
        let mut out = Self::zero(g - 1);
        for (i, slot) in out.coeffs.iter_mut().enumerate() {
            *slot = &self.coeffs[i] * rational::int((g - 2 * i) as i64);
        }
        out
    }

    pub fn partial_k(&self) -> Self {
        if self.degree < 2 {
            return Self::vanishing(self.degree as isize - 2);
        }
        let mut out = Self::zero(self.degree - 2);
        for (j, slot) in out.coeffs.iter_mut().enumerate() {
            let i = j + 1;
            *slot = &self.coeffs[i] * rational::int(i as i64);
        }
        out
    }

    /// `(p_HH, p_HK, p_KK)`
    pub fn second_partials(&self) -> (Self, Self, Self) {
        let ph = self.partial_h();
        let pk = self.partial_k();
        let g = self.degree as isize;
        let fix = |p: Self, d: isize| if p.is_zero() { Self::vanishing(d) } else { p };
        (
            fix(ph.partial_h(), g - 2),
            fix(ph.partial_k(), g - 3),
            fix(pk.partial_k(), g - 4),
        )
    }

    /// Restriction to `(λ1, λ2) = (ρ, 1)`: `H ↦ ρ + 1`, `K ↦ ρ`.
    pub fn dehomogenize(&self) -> RhoPoly {
        let mut acc = RhoPoly::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &RhoPoly::shifted_power(&Rational::one(), self.degree - 2 * i)
                * &RhoPoly::monomial(c.clone(), i);
            acc = &acc + &term;
        }
        acc.with_nominal(self.degree)
    }

    pub fn expand_lambda(&self) -> LambdaPoly {
        let h = LambdaPoly::from_terms([((1, 0), Rational::one()), ((0, 1), Rational::one())]);
        let k = LambdaPoly::from_terms([((1, 1), Rational::one())]);
        let mut acc = LambdaPoly::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = h.pow(self.degree - 2 * i).mul(&k.pow(i)).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// `Σ c_{i+1} 2^(g-2i)`, the value on the diagonal `λ1 = λ2 = 1`.
    pub fn diagonal_sum(&self) -> Rational {
        self.eval_hk(&rational::int(2), &Rational::one())
    }

    /// 1-based index of the first nonzero coefficient and its sign.
    pub fn first_positive_index(&self) -> Result<(usize, i8), HkError> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| (i + 1, rational::signum(&self.coeffs[i])))
            .ok_or(HkError::ZeroPolynomial)
    }

    pub fn eval_hk(&self, h: &Rational, k: &Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * rational::pow(h, (self.degree - 2 * i) as u32) * rational::pow(k, i as u32))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval(&self, l1: &Rational, l2: &Rational) -> Rational {
        self.eval_hk(&(l1 + l2), &(l1 * l2))
    }

    pub fn eval_hk_f64(&self, h: f64, k: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| rational::to_f64(c) * h.powi((self.degree - 2 * i) as i32) * k.powi(i as i32))
            .sum()
    }

    /// `λ1^n + λ2^n`
    pub fn power_sum(n: usize) -> Self {
        let mut prev = Self::constant(rational::int(2));
        if n == 0 {
            return prev;
        }
        let mut cur = Self::h();
        for _ in 1..n {
            let next = Self::h().mul(&cur).sub(&Self::k().mul(&prev));
            prev = cur;
            cur = next;
        }
        cur
    }
}

impl fmt::Display for HKPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (hp, kp) = (self.degree - 2 * i, i);
            let monomial = [("H", hp), ("K", kp)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<String>();
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            if monomial.is_empty() || !mag.is_one() {
                write!(f, "{}", rational::to_string(&mag))?;
            }
            write!(f, "{monomial}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Coefficient at the nominal degree together with the actual top term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub at_nominal: Rational,
    pub nominal: usize,
    pub actual: Option<(Rational, usize)>,
}

pub fn leading_term(p: &RhoPoly, nominal: usize) -> LeadingTerm {
    LeadingTerm {
        at_nominal: p.coeff(nominal),
        nominal,
        actual: p.degree().map(|d| (p.coeff(d), d)),
    }
}
