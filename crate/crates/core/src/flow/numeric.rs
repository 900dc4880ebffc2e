//! Critical-point decomposition `L(w) = C_w + G_w h_{11;1}² + G_w' h_{22;2}²`
//! for a general normal velocity, evaluated at a point.

use num_traits::{One, Zero};
use serde::Serialize;

use super::velocity::{JetTerm, VelocitySpec};
use super::Candidate;
use crate::algebra::rational::{self, Rational};
use crate::hk::HKPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("curvatures must be positive")]
    NonpositiveCurvature,
    #[error("point lies on the diagonal λ1 = λ2")]
    DiagonalPoint,
    #[error("w_H + λ w_K vanishes at the point")]
    CriticalDenominatorZero,
    #[error("denominator q vanishes at the point")]
    DenominatorVanishes,
}

/// Exact `H, K` derivatives of `w = p/q` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct WDerivatives {
    pub w_h: Rational,
    pub w_k: Rational,
    pub w_hh: Rational,
    pub w_hk: Rational,
    pub w_kk: Rational,
}

impl WDerivatives {
    pub fn at(p: &HKPoly, q: &HKPoly, l1: &Rational, l2: &Rational) -> Result<Self, NumericError> {
        let (h, k) = (l1 + l2, l1 * l2);
        let ev = |f: &HKPoly| f.eval_hk(&h, &k);
        let (p_hh, p_hk, p_kk) = p.second_partials();
        let (q_hh, q_hk, q_kk) = q.second_partials();
        let pv = ev(p);
        let qv = ev(q);
        if qv.is_zero() {
            return Err(NumericError::DenominatorVanishes);
        }
        let (p_h, p_k, q_h, q_k) = (ev(&p.partial_h()), ev(&p.partial_k()), ev(&q.partial_h()), ev(&q.partial_k()));
        let q2 = &qv * &qv;
        let q3 = &q2 * &qv;
        let two = rational::int(2);
        let first = |px: &Rational, qx: &Rational| (px * &qv - &pv * qx) / &q2;
        // (p/q)_xy = p_xy/q − (p_x q_y + p_y q_x)/q² − p q_xy/q² + 2 p q_x q_y/q³
        let second = |pxy: &Rational, px: &Rational, py: &Rational, qxy: &Rational, qx: &Rational, qy: &Rational| {
            pxy / &qv - (px * qy + py * qx) / &q2 - &pv * qxy / &q2 + &two * &pv * qx * qy / &q3
        };
        Ok(Self {
            w_h: first(&p_h, &q_h),
            w_k: first(&p_k, &q_k),
            w_hh: second(&ev(&p_hh), &p_h, &p_h, &ev(&q_hh), &q_h, &q_h),
            w_hk: second(&ev(&p_hk), &p_h, &p_k, &ev(&q_hk), &q_h, &q_k),
            w_kk: second(&ev(&p_kk), &p_k, &p_k, &ev(&q_kk), &q_k, &q_k),
        })
    }
}

impl WDerivatives {
    /// Every derivative vanishes, so each term is zero whatever the
    /// third derivatives of the surface are.
    pub fn is_constant(&self) -> bool {
        [&self.w_h, &self.w_k, &self.w_hh, &self.w_hk, &self.w_kk].iter().all(|d| d.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericTerms {
    pub c_w: f64,
    /// Coefficient of `h_{11;1}²`.
    pub g_w: f64,
    /// Coefficient of `h_{22;2}²`: the same expression with curvatures swapped.
    pub g_w_swapped: f64,
}

/// Constant term for one jet term, before scaling.
fn constant_term(j: &[Rational; 6], w: &WDerivatives, l1: &Rational, l2: &Rational) -> Rational {
    let [f, f1, f2, ..] = j;
    let k = l1 * l2;
    let diff = l1 - l2;
    let c_h = f * (l1 * l1 + l2 * l2) + (f1 - f2) * &diff * &k;
    let c_k = (f * (l1 + l2) + (f1 * l1 - f2 * l2) * &diff) * &k;
    c_h * &w.w_h + c_k * &w.w_k
}

/// Gradient coefficient of `h_{11;1}²` for one jet term, before scaling.
fn gradient_term(j: &[Rational; 6], w: &WDerivatives, l1: &Rational, l2: &Rational, a1: &Rational) -> Rational {
    let [_, f1, f2, f11, f12, f22] = j;
    let two = rational::int(2);
    let a1sq = a1 * a1;
    let dd = (f1 - f2) / (l1 - l2);
    let hess = f11 + &two * f12 * a1 + f22 * &a1sq;
    let g_h = &hess + &two * &dd * &a1sq;
    let g_k = &two * (-(f1 * a1) + f2 * &a1sq) + &hess * l2 + &two * &dd * &a1sq * l1;
    let u = Rational::one() + a1;
    let v = l2 + l1 * a1;
    let mixed = -(f1 * (&u * &u * &w.w_hh + &two * &u * &v * &w.w_hk + &v * &v * &w.w_kk));
    g_h * &w.w_h + g_k * &w.w_k + mixed
}

/// `a1 = h_{11;2}/h_{11;1}` forced by a critical point of `w`.
fn critical_ratio(w: &WDerivatives, l1: &Rational, l2: &Rational) -> Result<Rational, NumericError> {
    let den = &w.w_h + l1 * &w.w_k;
    if den.is_zero() {
        return Err(NumericError::CriticalDenominatorZero);
    }
    Ok(-(&w.w_h + l2 * &w.w_k) / den)
}

fn scaled_sum(terms: &[JetTerm], f: impl Fn(&[Rational; 6]) -> Rational) -> f64 {
    terms.iter().map(|t| t.scale * rational::to_f64(&f(&t.d))).sum()
}

pub fn numeric_terms(
    vel: &VelocitySpec,
    cand: &Candidate,
    l1: &Rational,
    l2: &Rational,
) -> Result<NumericTerms, NumericError> {
    if rational::signum(l1) <= 0 || rational::signum(l2) <= 0 {
        return Err(NumericError::NonpositiveCurvature);
    }
    if l1 == l2 {
        return Err(NumericError::DiagonalPoint);
    }
    let w = WDerivatives::at(&cand.p, &cand.q, l1, l2)?;
    if w.is_constant() {
        return Ok(NumericTerms { c_w: 0.0, g_w: 0.0, g_w_swapped: 0.0 });
    }
    let a1 = critical_ratio(&w, l1, l2)?;
    let a1_swapped = critical_ratio(&w, l2, l1)?;
    let jet = vel.jet(l1, l2);
    let jet_swapped = vel.jet(l2, l1);
    Ok(NumericTerms {
        c_w: scaled_sum(&jet, |d| constant_term(d, &w, l1, l2)),
        g_w: scaled_sum(&jet, |d| gradient_term(d, &w, l1, l2, &a1)),
        g_w_swapped: scaled_sum(&jet_swapped, |d| gradient_term(d, &w, l2, l1, &a1_swapped)),
    })
}
