//! Exhaustive confirmation that no bounded candidate survives, with each
//! failure traced back to the case argument.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{classify, is_top_exponent, verdict, CaseError, CaseId, Form};
use crate::algebra::rational::{self, Rational};
use crate::algebra::sign::{certify_sign_on_halfline, SignCertificate, SignMode};
use crate::checker::{check_condition_i, check_condition_ii, check_condition_iii, check_terms, enumerate, CheckError, MPFReport, SearchConfig, Verdict};
use crate::flow::{Candidate, ConcreteTerms};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("sweep needs σ > 1, got {0}")]
    SigmaNotAboveOne(String),
    #[error("candidate satisfies every condition: {}", serde_json::to_string(.0).unwrap_or_default())]
    TheoremViolationFound(Box<Candidate>, Box<MPFReport>),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// A candidate whose observed failure does not line up with the case
/// prediction. Never expected; reported rather than raised so a sweep
/// still produces its totals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inconsistency {
    pub candidate: Candidate,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
    pub enumerated: usize,
    pub passed_i_to_iii: usize,
    pub iv_failures: usize,
    pub consistent: usize,
    pub violations: usize,
    /// First failing condition among candidates rejected before IV.
    pub rejected_by: BTreeMap<String, usize>,
    pub by_case: BTreeMap<CaseId, usize>,
    /// Form named by the case argument, per case.
    pub by_form: BTreeMap<Form, usize>,
    pub inconsistencies: Vec<Inconsistency>,
}

enum Outcome {
    Rejected(&'static str),
    Explained(CaseId, Form),
    Inconsistent(Inconsistency),
}

fn first_failure(cand: &Candidate) -> Result<Option<&'static str>, CheckError> {
    let (i_a, i_b) = check_condition_i(cand);
    if !i_b.passed() {
        return Ok(Some("I(b)"));
    }
    if !i_a.passed() {
        return Ok(Some("I(a)"));
    }
    if !check_condition_ii(cand).passed() {
        return Ok(Some("II"));
    }
    if !check_condition_iii(cand)?.passed() {
        return Ok(Some("III"));
    }
    Ok(None)
}

fn examine(cand: Candidate) -> Result<Outcome, SweepError> {
    if let Some(label) = first_failure(&cand)? {
        return Ok(Outcome::Rejected(label));
    }
    let terms = ConcreteTerms::of(&cand);
    let (iv_c, iv_g1, iv_g2) = check_terms(&terms)?;
    if iv_c.passed() && iv_g1.passed() && iv_g2.passed() {
        let report = MPFReport {
            i_a: Verdict::Pass,
            i_b: Verdict::Pass,
            ii: Verdict::Pass,
            iii: Verdict::Pass,
            iv_c,
            iv_g1,
            iv_g2,
            overall: true,
        };
        return Err(SweepError::TheoremViolationFound(Box::new(cand), Box::new(report)));
    }
    let inconsistent = |reason: String| Ok(Outcome::Inconsistent(Inconsistency { candidate: cand.clone(), reason }));
    let params = match classify(&cand.p, &cand.q) {
        Ok(p) => p,
        Err(e) => return inconsistent(format!("classification failed: {e}")),
    };
    let v = match verdict(&params, Some(&cand.sigma)) {
        Ok(v) => v,
        Err(CaseError::InvalidCaseParams(msg)) => return inconsistent(format!("invalid case parameters: {msg}")),
        Err(e) => return inconsistent(e.to_string()),
    };
    let Some(step) = v.chain.first() else {
        return inconsistent("case argument names no positive form".into());
    };
    let poly = step.form.pick(&terms);
    let predicted = step.coefficient.at(&cand.sigma);
    if poly.coeff(step.exponent) != predicted {
        return inconsistent(format!(
            "{} coefficient at ρ^{}: predicted {}, computed {}",
            step.form,
            step.exponent,
            rational::to_string(&predicted),
            rational::to_string(&poly.coeff(step.exponent))
        ));
    }
    if !is_top_exponent(poly, step.exponent) {
        return inconsistent(format!("{} has terms above ρ^{}", step.form, step.exponent));
    }
    match certify_sign_on_halfline(poly, SignMode::Nonpositive) {
        SignCertificate::Fail { tail: Some(_), .. } => Ok(Outcome::Explained(params.case_id, step.form)),
        other => inconsistent(format!("{} certificate lacks a positive tail: {other:?}", step.form)),
    }
}

pub fn theorem_sweep(sigma: &Rational, bounds: &SearchConfig) -> Result<SweepSummary, SweepError> {
    if sigma <= &rational::one() {
        return Err(SweepError::SigmaNotAboveOne(rational::to_string(sigma)));
    }
    let config = SearchConfig { sigma: sigma.clone(), ..bounds.clone() };
    let candidates = enumerate(&config);
    let enumerated = candidates.len();
    let outcomes: Vec<Result<Outcome, SweepError>> = candidates.into_par_iter().map(examine).collect();

    let mut summary = SweepSummary {
        sigma: sigma.clone(),
        enumerated,
        passed_i_to_iii: 0,
        iv_failures: 0,
        consistent: 0,
        violations: 0,
        rejected_by: BTreeMap::new(),
        by_case: BTreeMap::new(),
        by_form: BTreeMap::new(),
        inconsistencies: Vec::new(),
    };
    for o in outcomes {
        match o? {
            Outcome::Rejected(label) => *summary.rejected_by.entry(label.to_string()).or_default() += 1,
            Outcome::Explained(case, form) => {
                summary.passed_i_to_iii += 1;
                summary.iv_failures += 1;
                summary.consistent += 1;
                *summary.by_case.entry(case).or_default() += 1;
                *summary.by_form.entry(form).or_default() += 1;
            }
            Outcome::Inconsistent(i) => {
                summary.passed_i_to_iii += 1;
                summary.iv_failures += 1;
                summary.inconsistencies.push(i);
            }
        }
    }
    Ok(summary)
}
