//! Leading-term case analysis: every candidate satisfying the positivity
//! hypotheses falls into one of nine cases by the first nonzero indices
//! `(k, l)` of `p` and `q`, and in each case one of `C`, `G1`, `G2` has a
//! positive top coefficient for every σ > 1.

mod sweep;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::sign::{certify_sign, Bound, Region, SignCertificate, SignMode};
use crate::algebra::{Coeff, RhoPoly, SigmaLinear};
use crate::flow::{Candidate, ConcreteTerms};
use crate::hk::HKPoly;

pub use sweep::{theorem_sweep, SweepError, SweepSummary};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CaseError {
    #[error("first nonzero coefficient of {0} is negative; the candidate cannot be nonnegative")]
    NonPositiveLeadingCoefficient(&'static str),
    #[error("{0} is identically zero")]
    ZeroPolynomial(&'static str),
    #[error("invalid case parameters: {0}")]
    InvalidCaseParams(String),
    #[error("σ must exceed 1, got {0}")]
    SigmaNotAboveOne(String),
    #[error("predicted and computed leading coefficients differ")]
    Mismatch(Box<CrossCheckReport>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
        CaseId::VII,
        CaseId::VIII,
        CaseId::IX,
    ];

    /// Bucket of the first nonzero indices of `p` and `q`.
    pub fn from_indices(k: usize, l: usize) -> Self {
        match (k.min(3), l.min(3)) {
            (1, 1) => CaseId::I,
            (1, 2) => CaseId::II,
            (1, _) => CaseId::III,
            (2, 2) => CaseId::IV,
            (2, 1) => CaseId::VII,
            (2, _) => CaseId::V,
            (_, 1) => CaseId::VIII,
            (_, 2) => CaseId::IX,
            _ => CaseId::VI,
        }
    }

    /// Whether closed forms for `C` and `G2` are part of the case statement
    /// (only `G1` is for the first five cases).
    pub fn states_c_and_g2(self) -> bool {
        matches!(self, CaseId::VI | CaseId::VII | CaseId::VIII | CaseId::IX)
    }

    /// The forms the contradiction argument draws on, in priority order.
    pub fn forms(self) -> &'static [Form] {
        if self.states_c_and_g2() {
            &[Form::C, Form::G1, Form::G2]
        } else {
            &[Form::G1]
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Form {
    C,
    G1,
    G2,
}

impl Form {
    pub fn condition(self) -> &'static str {
        match self {
            Form::C => "IV-C",
            Form::G1 => "IV-G1",
            Form::G2 => "IV-G2",
        }
    }

    pub fn pick(self, terms: &ConcreteTerms) -> &RhoPoly {
        match self {
            Form::C => &terms.c,
            Form::G1 => &terms.g1,
            Form::G2 => &terms.g2,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub case_id: CaseId,
    pub g: usize,
    pub h: usize,
    pub k: usize,
    pub l: usize,
    #[serde(with = "rational::serde_str")]
    pub c_k: Rational,
    #[serde(with = "rational::serde_str")]
    pub d_l: Rational,
}

impl CaseParams {
    pub fn new(g: usize, h: usize, k: usize, l: usize, c_k: Rational, d_l: Rational) -> Self {
        Self { case_id: CaseId::from_indices(k, l), g, h, k, l, c_k, d_l }
    }

    pub fn validate(&self) -> Result<(), CaseError> {
        let bad = |msg: String| Err(CaseError::InvalidCaseParams(msg));
        if self.k == 0 || self.l == 0 {
            return bad("indices k, l start at 1".into());
        }
        if self.case_id != CaseId::from_indices(self.k, self.l) {
            return bad(format!("(k, l) = ({}, {}) does not belong to case {}", self.k, self.l, self.case_id));
        }
        if 2 * (self.k - 1) > self.g {
            return bad(format!("k = {} needs 2(k − 1) ≤ g = {}", self.k, self.g));
        }
        if 2 * (self.l - 1) > self.h {
            return bad(format!("l = {} needs 2(l − 1) ≤ h = {}", self.l, self.h));
        }
        if self.g <= self.h {
            return bad(format!("g = {} must exceed h = {}", self.g, self.h));
        }
        if rational::signum(&self.c_k) <= 0 || rational::signum(&self.d_l) <= 0 {
            return bad("leading coefficients c_k, d_l must be positive".into());
        }
        Ok(())
    }

    fn d(&self) -> i64 {
        self.g as i64 - self.h as i64
    }

    fn m(&self) -> i64 {
        self.l as i64 - self.k as i64
    }
}

pub fn classify(p: &HKPoly, q: &HKPoly) -> Result<CaseParams, CaseError> {
    let (k, sk) = p.first_positive_index().map_err(|_| CaseError::ZeroPolynomial("p"))?;
    let (l, sl) = q.first_positive_index().map_err(|_| CaseError::ZeroPolynomial("q"))?;
    if sk < 0 {
        return Err(CaseError::NonPositiveLeadingCoefficient("p"));
    }
    if sl < 0 {
        return Err(CaseError::NonPositiveLeadingCoefficient("q"));
    }
    Ok(CaseParams::new(
        p.degree(),
        q.degree(),
        k,
        l,
        p.coeffs()[k - 1].clone(),
        q.coeffs()[l - 1].clone(),
    ))
}

/// Predicted top coefficient of one form, as a function of σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub form: Form,
    pub exponent: usize,
    pub coefficient: SigmaLinear,
    /// False for forms whose closed form the case statement leaves out;
    /// such rows are still computed and reported, but never relied on.
    pub stated: bool,
}

/// Top coefficients of `C`, `G1`, `G2` for a case.
///
/// With `D = g − h` and `m = l − k`, all nine cases share
/// `C ~ cd·B(σ)`, `G1 ~ −c³d³(D + m)(D + 2m)·B(σ)`, and
/// `G2 ~ −c³d³·m(D + 2m)(m + (D + 2m)σ)`, where `B(σ) = D(1 − σ) + m(1 − 2σ)`.
pub fn predicted_leading(params: &CaseParams) -> Result<Vec<Prediction>, CaseError> {
    params.validate()?;
    let (d, m) = (params.d(), params.m());
    let cd = &params.c_k * &params.d_l;
    let cd3 = rational::pow(&cd, 3);
    let n = (params.g + params.h) as i64;
    let kl = (params.k + params.l) as i64;
    let bracket = SigmaLinear::ints(-(d + 2 * m), d + m);
    let g2_factor = SigmaLinear::ints(d + 2 * m, m);
    let exp = |e: i64| usize::try_from(e).expect("validated parameters give nonnegative exponents");
    let stated = params.case_id.states_c_and_g2();
    Ok(vec![
        Prediction {
            form: Form::C,
            exponent: exp(n - kl + 3),
            coefficient: bracket.scaled(&cd),
            stated,
        },
        Prediction {
            form: Form::G1,
            exponent: exp(3 * (n - kl) + 5),
            coefficient: bracket.scaled(&(&cd3 * rational::int(-(d + m) * (d + 2 * m)))),
            stated: true,
        },
        Prediction {
            form: Form::G2,
            exponent: exp(3 * (n - kl) + 6),
            coefficient: g2_factor.scaled(&(&cd3 * rational::int(-m * (d + 2 * m)))),
            stated,
        },
    ])
}

/// An interval of σ values, as used in the contradiction chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaRange {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    pub lo_closed: bool,
    /// `None` means unbounded above.
    #[serde(with = "rational::serde_opt")]
    pub hi: Option<Rational>,
    pub hi_closed: bool,
}

impl SigmaRange {
    fn point(s: Rational) -> Self {
        Self { lo: s.clone(), lo_closed: true, hi: Some(s), hi_closed: true }
    }

    fn open(lo: Rational, hi: Option<Rational>) -> Self {
        Self { lo, lo_closed: false, hi, hi_closed: false }
    }

    fn region(&self) -> Region {
        let lo = if self.lo_closed { Bound::Closed(self.lo.clone()) } else { Bound::Open(self.lo.clone()) };
        let hi = match &self.hi {
            None => Bound::Unbounded,
            Some(h) if self.hi_closed => Bound::Closed(h.clone()),
            Some(h) => Bound::Open(h.clone()),
        };
        Region::new(lo, hi)
    }

    pub fn contains(&self, s: &Rational) -> bool {
        self.region().contains(s)
    }

    /// Union with an adjacent range lying directly above.
    fn join(&self, above: &SigmaRange) -> SigmaRange {
        SigmaRange {
            lo: self.lo.clone(),
            lo_closed: self.lo_closed,
            hi: above.hi.clone(),
            hi_closed: above.hi_closed,
        }
    }
}

impl fmt::Display for SigmaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = rational::to_string(&self.lo);
        match &self.hi {
            Some(h) if self.lo_closed && self.hi_closed && &self.lo == h => write!(f, "σ = {lo}"),
            Some(h) => write!(
                f,
                "{lo} {} σ {} {}",
                if self.lo_closed { "≤" } else { "<" },
                if self.hi_closed { "≤" } else { "<" },
                rational::to_string(h)
            ),
            None => write!(f, "σ {} {lo}", if self.lo_closed { "≥" } else { ">" }),
        }
    }
}

/// One link of the contradiction: on `range`, the top coefficient of
/// `form` is positive, so that form is positive for large ρ and the
/// named condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub assumption: String,
    pub range: SigmaRange,
    pub form: Form,
    pub exponent: usize,
    pub coefficient: SigmaLinear,
    pub violated: String,
    pub certificate: SignCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
    pub form: Option<Form>,
    #[serde(with = "rational::serde_opt")]
    pub value: Option<Rational>,
    pub agrees_with_chain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub params: CaseParams,
    pub predictions: Vec<Prediction>,
    /// `None` when the chain covers every σ > 1.
    #[serde(with = "rational::serde_opt")]
    pub sigma: Option<Rational>,
    pub chain: Vec<ChainStep>,
    /// σ-ranges on which no form is certified positive; empty when the
    /// contradiction goes through.
    pub uncovered: Vec<SigmaRange>,
    pub contradiction: bool,
    pub spot_checks: Vec<SpotCheck>,
}

impl CaseVerdict {
    /// Form whose positivity the chain asserts at `sigma`.
    pub fn form_at(&self, sigma: &Rational) -> Option<&ChainStep> {
        self.chain.iter().find(|s| s.range.contains(sigma))
    }
}

fn linear_poly(s: &SigmaLinear) -> RhoPoly {
    RhoPoly::from_coeffs(vec![s.offset.clone(), s.slope.clone()])
}

fn reconstructed_note(params: &CaseParams, form: Form) -> Option<String> {
    (params.case_id == CaseId::VI && params.m() >= 0 && form == Form::G1).then(|| {
        "for l ≥ k the C form is negative for all σ > 1 and G1's bracket carries the opposite sign; \
         obtained by direct sign analysis of the G1 form"
            .to_string()
    })
}

fn step(params: &CaseParams, range: SigmaRange, pred: &Prediction, certificate: SignCertificate) -> ChainStep {
    ChainStep {
        assumption: range.to_string(),
        violated: format!(
            "{} > 0 for large ρ: top coefficient {} at ρ^{} is positive, contradicting {}",
            pred.form,
            pred.coefficient,
            pred.exponent,
            pred.form.condition()
        ),
        range,
        form: pred.form,
        exponent: pred.exponent,
        coefficient: pred.coefficient.clone(),
        certificate,
        note: reconstructed_note(params, pred.form),
    }
}

/// The σ values spot-checked against every chain.
pub fn spot_sigmas() -> Vec<Rational> {
    vec![
        rational::one() + rational::frac(1, 1_000_000),
        rational::frac(3, 2),
        rational::int(2),
        rational::int(10),
        rational::int(1000),
    ]
}

fn first_positive<'a>(preds: &'a [Prediction], forms: &[Form], sigma: &Rational) -> Option<&'a Prediction> {
    forms.iter().find_map(|f| {
        preds
            .iter()
            .find(|p| p.form == *f)
            .filter(|p| rational::signum(&p.coefficient.at(sigma)) > 0)
    })
}

/// Contradiction chain for `params`, either at one σ > 1 or for all σ > 1.
pub fn verdict(params: &CaseParams, sigma: Option<&Rational>) -> Result<CaseVerdict, CaseError> {
    let preds = predicted_leading(params)?;
    let forms = params.case_id.forms();
    let one = Rational::one();
    if let Some(s) = sigma {
        if s <= &one {
            return Err(CaseError::SigmaNotAboveOne(rational::to_string(s)));
        }
    }

    let ranges: Vec<SigmaRange> = match sigma {
        Some(s) => vec![SigmaRange::point(s.clone())],
        None => {
            let mut cuts: Vec<Rational> = forms
                .iter()
                .filter_map(|f| preds.iter().find(|p| p.form == *f))
                .filter_map(|p| p.coefficient.root())
                .filter(|r| r > &one)
                .collect();
            cuts.sort();
            cuts.dedup();
            let mut out = Vec::new();
            let mut lo = one.clone();
            for c in cuts {
                out.push(SigmaRange::open(lo, Some(c.clone())));
                out.push(SigmaRange::point(c.clone()));
                lo = c;
            }
            out.push(SigmaRange::open(lo, None));
            out
        }
    };

    let mut chain: Vec<ChainStep> = Vec::new();
    let mut uncovered = Vec::new();
    for range in ranges {
        let region = range.region();
        let found = forms.iter().find_map(|f| {
            let pred = preds.iter().find(|p| p.form == *f)?;
            let cert = certify_sign(&linear_poly(&pred.coefficient), SignMode::StrictlyPositive, &region);
            cert.passed().then_some((pred, cert))
        });
        match found {
            Some((pred, cert)) => match chain.last_mut() {
                Some(prev) if prev.form == pred.form => {
                    let joined = prev.range.join(&range);
                    // re-certify on the merged range so the certificate covers it
                    let cert = certify_sign(&linear_poly(&pred.coefficient), SignMode::StrictlyPositive, &joined.region());
                    *prev = step(params, joined, pred, cert);
                }
                _ => chain.push(step(params, range, pred, cert)),
            },
            None => uncovered.push(range),
        }
    }

    let spot = match sigma {
        Some(s) => vec![s.clone()],
        None => spot_sigmas(),
    };
    let spot_checks = spot
        .into_iter()
        .map(|s| {
            let hit = first_positive(&preds, forms, &s);
            let agrees = match (hit, chain.iter().find(|c| c.range.contains(&s))) {
                (Some(h), Some(c)) => h.form == c.form,
                (None, None) => true,
                _ => false,
            };
            SpotCheck {
                form: hit.map(|h| h.form),
                value: hit.map(|h| h.coefficient.at(&s)),
                sigma: s,
                agrees_with_chain: agrees,
            }
        })
        .collect();

    Ok(CaseVerdict {
        params: params.clone(),
        predictions: preds,
        sigma: sigma.cloned(),
        contradiction: uncovered.is_empty(),
        chain,
        uncovered,
        spot_checks,
    })
}

/// Sign facts the case argument leans on, each certified on σ > 1 after
/// clearing the positive denominator σ − 1.
pub fn auxiliary_inequalities(l_max: usize) -> Vec<(String, SignCertificate)> {
    let region = Region::open_above(Rational::one());
    let mut out = vec![(
        "(2σ − 1)/(σ − 1) > 2".to_string(),
        // (2σ − 1) − 2(σ − 1) = 1
        certify_sign(&RhoPoly::from_ints(&[1]), SignMode::StrictlyPositive, &region),
    )];
    for l in 3..=l_max as i64 {
        // (l − 1)(2σ − 1) − 4(σ − 1)
        let poly = RhoPoly::from_ints(&[4 - (l - 1), 2 * (l - 1) - 4]);
        out.push((
            format!("({l} − 1)(2σ − 1)/(σ − 1) > 4"),
            certify_sign(&poly, SignMode::StrictlyPositive, &region),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckRow {
    pub form: Form,
    pub exponent: usize,
    #[serde(with = "rational::serde_str")]
    pub predicted: Rational,
    #[serde(with = "rational::serde_str")]
    pub computed: Rational,
    pub matches: bool,
    pub stated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub params: CaseParams,
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
    pub rows: Vec<CrossCheckRow>,
    /// Every stated row matches.
    pub all_match: bool,
}

/// Compares predicted top coefficients with the brute-force expansion.
pub fn cross_check(cand: &Candidate) -> Result<CrossCheckReport, CaseError> {
    let params = classify(&cand.p, &cand.q)?;
    let preds = predicted_leading(&params)?;
    let terms = ConcreteTerms::of(cand);
    let rows: Vec<CrossCheckRow> = preds
        .iter()
        .map(|p| {
            let predicted = p.coefficient.at(&cand.sigma);
            let computed = p.form.pick(&terms).coeff(p.exponent);
            CrossCheckRow {
                form: p.form,
                exponent: p.exponent,
                matches: predicted == computed,
                predicted,
                computed,
                stated: p.stated,
            }
        })
        .collect();
    let all_match = rows.iter().filter(|r| r.stated).all(|r| r.matches);
    let report = CrossCheckReport { params, sigma: cand.sigma.clone(), rows, all_match };
    if all_match {
        Ok(report)
    } else {
        Err(CaseError::Mismatch(Box::new(report)))
    }
}

/// Whether everything above `exponent` in `p` vanishes.
pub fn is_top_exponent(p: &RhoPoly, exponent: usize) -> bool {
    p.degree().is_none_or(|d| d <= exponent) && !p.coeff(exponent).is_zero()
}
