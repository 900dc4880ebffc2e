use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::rational::{self, Rational};
use crate::algebra::RhoPoly;

/// Bivariate polynomial in `(λ1, λ2)`, keyed by exponent pairs. Only used
/// as an independent expansion route when checking the `H, K` machinery.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl LambdaPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut out = Self::default();
        for (e, c) in terms {
            out.accumulate(e, c);
        }
        out
    }

    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rational::int(c))))
    }

    pub fn one() -> Self {
        Self::from_ints(&[((0, 0), 1)])
    }

    fn accumulate(&mut self, e: (u32, u32), c: Rational) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rational::int(-1)))
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * by)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                out.accumulate((a1 + b1, a2 + b2), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exchange the roles of `λ1` and `λ2`.
    pub fn swapped(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swapped()
    }

    pub fn partial_1(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c * rational::int(*a as i64))),
        )
    }

    pub fn partial_2(&self) -> Self {
        self.swapped().partial_1().swapped()
    }

    pub fn eval(&self, l1: &Rational, l2: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|((a, b), c)| c * rational::pow(l1, *a) * rational::pow(l2, *b))
            .fold(Rational::zero(), |x, y| x + y)
    }

    /// Restriction to `(λ1, λ2) = (ρ, 1)`.
    pub fn at_rho_one(&self) -> RhoPoly {
        let mut coeffs = Vec::new();
        for ((a, _), c) in &self.terms {
            let a = *a as usize;
            if coeffs.len() <= a {
                coeffs.resize(a + 1, Rational::zero());
            }
            coeffs[a] += c;
        }
        RhoPoly::from_coeffs(coeffs)
    }
}
