//! Derivative-free ("constant") and squared-gradient terms of the evolution
//! of `w = p/q` under `F = K^σ`, restricted to `(λ1, λ2) = (ρ, 1)`.

mod numeric;
mod velocity;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{RhoPoly, SigmaLinear};
use crate::hk::HKPoly;

pub use numeric::{numeric_terms, NumericError, NumericTerms, WDerivatives};
pub use velocity::{JetTerm, VelocityError, VelocitySpec};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CandidateError {
    #[error("numerator p is identically zero")]
    ZeroNumerator,
    #[error("denominator q is identically zero")]
    ZeroDenominator,
    #[error("σ must be positive, got {0}")]
    NonpositiveSigma(String),
}

/// A proposed quantity `w = p/q` together with the flow exponent σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCandidate")]
pub struct Candidate {
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
    pub p: HKPoly,
    pub q: HKPoly,
}

#[derive(Deserialize)]
struct RawCandidate {
    #[serde(with = "rational::serde_str")]
    sigma: Rational,
    p: HKPoly,
    q: HKPoly,
}

impl TryFrom<RawCandidate> for Candidate {
    type Error = CandidateError;
    fn try_from(raw: RawCandidate) -> Result<Self, CandidateError> {
        Candidate::new(raw.p, raw.q, raw.sigma)
    }
}

impl Candidate {
    pub fn new(p: HKPoly, q: HKPoly, sigma: Rational) -> Result<Self, CandidateError> {
        if p.is_zero() {
            return Err(CandidateError::ZeroNumerator);
        }
        if q.is_zero() {
            return Err(CandidateError::ZeroDenominator);
        }
        if rational::signum(&sigma) <= 0 {
            return Err(CandidateError::NonpositiveSigma(rational::to_string(&sigma)));
        }
        Ok(Self { sigma, p, q })
    }

    pub fn g(&self) -> usize {
        self.p.degree()
    }

    pub fn h(&self) -> usize {
        self.q.degree()
    }
}

/// `r_X = q ∂_X p − p ∂_X q` for the five derivatives that appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTerms {
    pub r_h: HKPoly,
    pub r_k: HKPoly,
    pub r_hh: HKPoly,
    pub r_hk: HKPoly,
    pub r_kk: HKPoly,
}

impl RTerms {
    fn dehomogenized(&self) -> [RhoPoly; 5] {
        [&self.r_h, &self.r_k, &self.r_hh, &self.r_hk, &self.r_kk].map(HKPoly::dehomogenize)
    }
}

pub fn compute_r_terms(p: &HKPoly, q: &HKPoly) -> RTerms {
    let n = (p.degree() + q.degree()) as isize;
    let cross = |dp: &HKPoly, dq: &HKPoly, drop: isize| {
        let r = q.mul(dp).sub(&p.mul(dq));
        if r.is_zero() {
            HKPoly::zero((n - drop).max(0) as usize)
        } else {
            r
        }
    };
    let (p_hh, p_hk, p_kk) = p.second_partials();
    let (q_hh, q_hk, q_kk) = q.second_partials();
    RTerms {
        r_h: cross(&p.partial_h(), &q.partial_h(), 1),
        r_k: cross(&p.partial_k(), &q.partial_k(), 2),
        r_hh: cross(&p_hh, &q_hh, 2),
        r_hk: cross(&p_hk, &q_hk, 3),
        r_kk: cross(&p_kk, &q_kk, 4),
    }
}

/// Cofactor `Σ (a_i σ + b_i) ρ^i` from `(a_i, b_i)` pairs.
fn cofactor(entries: &[(i64, i64)]) -> RhoPoly<SigmaLinear> {
    RhoPoly::from_coeffs(entries.iter().map(|&(a, b)| SigmaLinear::ints(a, b)).collect())
}

fn fixed(entries: &[i64]) -> RhoPoly<SigmaLinear> {
    RhoPoly::from_ints(entries).to_sigma()
}

/// `C`, `G1`, `G2` with σ left symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicTerms {
    pub c: RhoPoly<SigmaLinear>,
    pub g1: RhoPoly<SigmaLinear>,
    pub g2: RhoPoly<SigmaLinear>,
}

impl SymbolicTerms {
    pub fn new(p: &HKPoly, q: &HKPoly) -> Self {
        let n = p.degree() + q.degree();
        let [rh, rk, rhh, rhk, rkk] = compute_r_terms(p, q).dehomogenized();

        let c = &cofactor(&[(-1, 1), (2, 0), (-1, 1)]).mul_rational(&rh)
            + &fixed(&[0, 1, 1]).mul_rational(&rk);

        let rh2 = &rh * &rh;
        let rk2 = &rk * &rk;
        let products = [
            &rh2 * &rh,
            &rh2 * &rk,
            &rh * &rk2,
            &rk2 * &rhh,
            &(&rh * &rk) * &rhk,
            &rh2 * &rkk,
        ];
        let g1_cofactors = [
            cofactor(&[(1, -1), (-2, -2), (1, -1)]),
            cofactor(&[(1, -1), (-2, -4), (1, -3)]),
            fixed(&[0, -2, -2]),
            fixed(&[0, -1, 2, -1]),
            fixed(&[0, 2, -4, 2]),
            fixed(&[0, -1, 2, -1]),
        ];
        let g2_cofactors = [
            cofactor(&[(1, -1), (-2, -2), (1, -1)]),
            cofactor(&[(0, 0), (1, -3), (-2, -4), (1, -1)]),
            fixed(&[0, 0, -2, -2]),
            fixed(&[0, 0, -1, 2, -1]),
            fixed(&[0, 0, 2, -4, 2]),
            fixed(&[0, 0, -1, 2, -1]),
        ];
        let assemble = |cofs: &[RhoPoly<SigmaLinear>; 6]| {
            cofs.iter()
                .zip(&products)
                .fold(RhoPoly::zero(0), |acc, (cof, prod)| &acc + &cof.mul_rational(prod))
        };
        let g_nominal = (3 * n).saturating_sub(1);
        Self {
            c: c.with_nominal(n + 1),
            g1: assemble(&g1_cofactors).with_nominal(g_nominal),
            g2: assemble(&g2_cofactors).with_nominal(g_nominal),
        }
    }

    pub fn at(&self, sigma: &Rational) -> ConcreteTerms {
        ConcreteTerms {
            c: self.c.specialize(sigma),
            g1: self.g1.specialize(sigma),
            g2: self.g2.specialize(sigma),
        }
    }
}

/// `C`, `G1`, `G2` at a fixed σ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcreteTerms {
    pub c: RhoPoly,
    pub g1: RhoPoly,
    pub g2: RhoPoly,
}

impl ConcreteTerms {
    pub fn of(cand: &Candidate) -> Self {
        SymbolicTerms::new(&cand.p, &cand.q).at(&cand.sigma)
    }
}

pub fn constant_poly_c(cand: &Candidate) -> RhoPoly {
    ConcreteTerms::of(cand).c
}

pub fn gradient_poly_g1(cand: &Candidate) -> RhoPoly {
    ConcreteTerms::of(cand).g1
}

pub fn gradient_poly_g2(cand: &Candidate) -> RhoPoly {
    ConcreteTerms::of(cand).g2
}

/// `ρ^d · P(1/ρ)` expressed by coefficient reversal; `None` if `P` has
/// terms above degree `d`.
pub fn reflect(p: &RhoPoly, d: usize) -> Option<RhoPoly> {
    if p.degree().is_some_and(|deg| deg > d) {
        return None;
    }
    Some(p.reversed(d))
}

/// True when every coefficient of `p` vanishes.
pub fn vanishes(p: &RhoPoly) -> bool {
    p.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn hk(g: usize, c: &[i64]) -> HKPoly {
        HKPoly::from_ints(g, c)
    }

    fn cand(p: HKPoly, q: HKPoly, sigma: i64) -> Candidate {
        Candidate::new(p, q, int(sigma)).unwrap()
    }

    fn rho(c: &[i64]) -> RhoPoly {
        RhoPoly::from_ints(c)
    }

    #[test]
    fn r_terms_of_control() {
        let r = compute_r_terms(&hk(2, &[1, -4]), &hk(0, &[1]));
        assert_eq!(r.r_h, hk(1, &[2]));
        assert_eq!(r.r_k, hk(0, &[-4]));
        assert_eq!(r.r_hh, hk(0, &[2]));
        assert!(r.r_hk.is_zero() && r.r_kk.is_zero());
    }

    #[test]
    fn r_terms_vanish_for_equal_pair() {
        let p = hk(4, &[1, -3, 2]);
        let r = compute_r_terms(&p, &p);
        for t in [r.r_h, r.r_k, r.r_hh, r.r_hk, r.r_kk] {
            assert!(t.is_zero());
        }
    }

    #[test]
    fn r_terms_mixed_degree() {
        let r = compute_r_terms(&hk(3, &[1, -4]), &HKPoly::k());
        assert_eq!(r.r_h, hk(4, &[0, 3, -4]));
        assert_eq!(r.r_k, hk(3, &[-1, 0]));
        assert_eq!(r.r_hh, hk(3, &[0, 6]));
        assert_eq!(r.r_hk, hk(2, &[0, -4]));
        assert!(r.r_kk.is_zero());
        assert_eq!(r.r_h.degree(), 4);
        assert_eq!(r.r_kk.degree(), 1);
    }

    #[test]
    fn constant_terms_examples() {
        let control = |s| constant_poly_c(&cand(hk(2, &[1, -4]), hk(0, &[1]), s));
        assert!(control(1).is_zero());
        assert_eq!(control(2), rho(&[-2, 2, 2, -2]));
        assert_eq!(control(2).nominal_degree(), 3);
        let c = constant_poly_c(&cand(hk(3, &[1, -4]), HKPoly::k(), 1));
        assert_eq!(c, rho(&[0, -1, 2, -2, 2, -1]));
    }

    #[test]
    fn gradient_terms_examples() {
        let t = ConcreteTerms::of(&cand(hk(2, &[1, -4]), hk(0, &[1]), 1));
        assert_eq!(t.g1, rho(&[0, -32, 64, -32]));
        assert_eq!(t.g2, rho(&[0, 0, -32, 64, -32]));
        assert_eq!(t.g1.nominal_degree(), 5);
        let t = ConcreteTerms::of(&cand(hk(2, &[1, -4]), hk(0, &[1]), 2));
        assert_eq!(t.g1, rho(&[-8, -24, 80, -48, -8, 8]));
        let p = hk(3, &[2, -1]);
        let t = ConcreteTerms::of(&cand(p.clone(), p, 3));
        assert!(t.c.is_zero() && t.g1.is_zero() && t.g2.is_zero());
    }

    #[test]
    fn reciprocity_and_palindrome_on_example() {
        let c = cand(hk(4, &[1, -3, -4]), hk(1, &[2]), 2);
        let t = ConcreteTerms::of(&c);
        let n = c.g() + c.h();
        assert_eq!(reflect(&t.c, n + 1).unwrap(), t.c);
        assert_eq!(reflect(&t.g1, 3 * n - 1).unwrap(), t.g2);
    }

    #[test]
    fn candidate_json_round_trip() {
        let c = cand(hk(2, &[1, -4]), hk(0, &[1]), 2);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"sigma":"2","p":{"degree":2,"coeffs":["1","-4"]},"q":{"degree":0,"coeffs":["1"]}}"#);
        assert_eq!(serde_json::from_str::<Candidate>(&s).unwrap(), c);
        let zero_q = r#"{"sigma":"2","p":{"degree":2,"coeffs":["1","-4"]},"q":{"degree":0,"coeffs":["0"]}}"#;
        assert!(serde_json::from_str::<Candidate>(zero_q).is_err());
    }
}
