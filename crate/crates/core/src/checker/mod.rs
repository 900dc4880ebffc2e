//! Verdicts for the four defining conditions of a maximum-principle function.

mod search;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::sign::{certify_sign, Region, SignCertificate, SignMode};
use crate::algebra::RhoPoly;
use crate::flow::{Candidate, ConcreteTerms};

pub use search::{canonicalize, enumerate, search, SearchConfig, SearchError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("q is not strictly positive on (0, ∞); the monotonicity condition is undefined")]
    ConditionIPrerequisiteFailed,
    #[error("G1 and G2 disagree on nonpositivity despite being reflections of each other")]
    ReciprocityMismatch,
}

/// Evidence attached to a failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Point {
        #[serde(with = "rational::serde_str")]
        rho: Rational,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    /// A root of even multiplicity without a rational representative,
    /// isolated in an open interval.
    RootBetween {
        #[serde(with = "rational::serde_vec")]
        root_between: Vec<Rational>,
    },
}

impl Witness {
    fn from_certificate(c: SignCertificate) -> Option<Self> {
        match c {
            SignCertificate::Pass => None,
            SignCertificate::Fail { witness, value, .. } => Some(Witness::Point { rho: witness, value }),
            SignCertificate::RootWitness { lo, hi } => Some(Witness::RootBetween { root_between: vec![lo, hi] }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Witness>,
    },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn fail(reason: impl Into<String>, witness: Option<Witness>) -> Self {
        Verdict::Fail { reason: reason.into(), witness }
    }

    fn from_sign(cert: SignCertificate, reason: &str) -> Self {
        if cert.passed() {
            Verdict::Pass
        } else {
            Verdict::fail(reason, Witness::from_certificate(cert))
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness, .. } => witness.as_ref(),
            Verdict::Pass => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPFReport {
    pub i_a: Verdict,
    pub i_b: Verdict,
    pub ii: Verdict,
    pub iii: Verdict,
    pub iv_c: Verdict,
    pub iv_g1: Verdict,
    pub iv_g2: Verdict,
    pub overall: bool,
}

impl MPFReport {
    /// Labels of the failed conditions, in checking order.
    pub fn failures(&self) -> Vec<&'static str> {
        self.labelled()
            .into_iter()
            .filter(|(_, v)| !v.passed())
            .map(|(l, _)| l)
            .collect()
    }

    pub fn labelled(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("I(a)", &self.i_a),
            ("I(b)", &self.i_b),
            ("II", &self.ii),
            ("III", &self.iii),
            ("IV-C", &self.iv_c),
            ("IV-G1", &self.iv_g1),
            ("IV-G2", &self.iv_g2),
        ]
    }

    pub fn passes_i_to_iii(&self) -> bool {
        self.i_a.passed() && self.i_b.passed() && self.ii.passed() && self.iii.passed()
    }
}

fn positive_ray() -> Region {
    Region::open_above(Rational::zero())
}

fn q_positive(cand: &Candidate) -> SignCertificate {
    certify_sign(&cand.q.dehomogenize(), SignMode::StrictlyPositive, &positive_ray())
}

/// `(I(a), I(b))`
pub fn check_condition_i(cand: &Candidate) -> (Verdict, Verdict) {
    let p_cert = certify_sign(&cand.p.dehomogenize(), SignMode::Nonnegative, &positive_ray());
    let i_a = if !p_cert.passed() {
        Verdict::from_sign(p_cert, "p takes negative values")
    } else {
        Verdict::from_sign(q_positive(cand), "q is not strictly positive")
    };
    let diag = cand.p.diagonal_sum();
    let i_b = if diag.is_zero() {
        Verdict::Pass
    } else {
        // at λ1 = λ2 = 1 the restriction ρ ↦ p(ρ, 1) is evaluated at ρ = 1
        Verdict::fail(
            "p does not vanish on the diagonal",
            Some(Witness::Point { rho: rational::one(), value: diag }),
        )
    };
    (i_a, i_b)
}

pub fn check_condition_ii(cand: &Candidate) -> Verdict {
    if cand.g() > cand.h() {
        Verdict::Pass
    } else {
        Verdict::fail(format!("deg p = {} does not exceed deg q = {}", cand.g(), cand.h()), None)
    }
}

/// Numerator `p'q − pq'` of `d/dρ (p/q)(ρ, 1)`.
pub fn monotonicity_numerator(cand: &Candidate) -> RhoPoly {
    let p = cand.p.dehomogenize();
    let q = cand.q.dehomogenize();
    &(&p.derivative() * &q) - &(&p * &q.derivative())
}

pub fn check_condition_iii(cand: &Candidate) -> Result<Verdict, CheckError> {
    if !q_positive(cand).passed() {
        return Err(CheckError::ConditionIPrerequisiteFailed);
    }
    let n = monotonicity_numerator(cand);
    let below = certify_sign(&n, SignMode::StrictlyNegative, &Region::open(rational::zero(), rational::one()));
    if !below.passed() {
        return Ok(Verdict::from_sign(below, "w(ρ, 1) is not decreasing on (0, 1)"));
    }
    let above = certify_sign(&n, SignMode::StrictlyPositive, &Region::open_above(rational::one()));
    Ok(Verdict::from_sign(above, "w(ρ, 1) is not increasing on (1, ∞)"))
}

/// `(IV-C, IV-G1, IV-G2)` from already computed polynomials.
pub fn check_terms(terms: &ConcreteTerms) -> Result<(Verdict, Verdict, Verdict), CheckError> {
    let nonpos = |p: &RhoPoly, label: &str| {
        let cert = certify_sign(p, SignMode::Nonpositive, &Region::halfline());
        Verdict::from_sign(cert, &format!("{label} takes positive values on [0, ∞)"))
    };
    let c = nonpos(&terms.c, "C");
    let g1 = nonpos(&terms.g1, "G1");
    let g2 = nonpos(&terms.g2, "G2");
    if g1.passed() != g2.passed() {
        return Err(CheckError::ReciprocityMismatch);
    }
    Ok((c, g1, g2))
}

pub fn check_condition_iv(cand: &Candidate) -> Result<(Verdict, Verdict, Verdict), CheckError> {
    check_terms(&ConcreteTerms::of(cand))
}

pub fn check_all(cand: &Candidate) -> Result<MPFReport, CheckError> {
    let (i_a, i_b) = check_condition_i(cand);
    let ii = check_condition_ii(cand);
    let iii = match check_condition_iii(cand) {
        Ok(v) => v,
        Err(e) => Verdict::fail(e.to_string(), None),
    };
    let (iv_c, iv_g1, iv_g2) = check_condition_iv(cand)?;
    let overall = [&i_a, &i_b, &ii, &iii, &iv_c, &iv_g1, &iv_g2].iter().all(|v| v.passed());
    Ok(MPFReport { i_a, i_b, ii, iii, iv_c, iv_g1, iv_g2, overall })
}
