use std::collections::BTreeMap;

use mpflow::algebra::rational::{self, frac, int, Rational};
use mpflow::cases::{self, classify, theorem_sweep, CaseError, CaseId, CaseParams, SweepError};
use mpflow::checker::{self, check_all, enumerate, CheckError, SearchConfig, SearchError};
use mpflow::flow::{numeric_terms, Candidate, ConcreteTerms, VelocitySpec};
use mpflow::hk::HKPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{input, render, sample, Bounds, CrossCheckArgs, EvalArgs, Failure, Sink};

/// Values reported as nonpositive may exceed zero by at most this much.
const NUMERIC_TOL: f64 = 1e-12;

fn check_failure(e: CheckError, cand: &Candidate) -> Failure {
    match e {
        CheckError::ConditionIPrerequisiteFailed => Failure::Input(e.to_string()),
        CheckError::ReciprocityMismatch => Failure::Invariant { message: e.to_string(), dump: json!(cand) },
    }
}

fn case_failure(e: CaseError) -> Failure {
    match e {
        CaseError::Mismatch(report) => Failure::Invariant {
            message: "predicted and computed leading coefficients differ".into(),
            dump: json!(report),
        },
        other => Failure::Input(other.to_string()),
    }
}

fn sigma_str(s: &Rational) -> String {
    rational::to_string(s)
}

pub fn check(spec: &str, sigma: Option<&Rational>, sink: &mut Sink) -> Result<(), Failure> {
    let cands = input::candidates(spec, sigma)?;
    let rows: Vec<_> = cands
        .par_iter()
        .map(|c| check_all(c).map(|r| (r, ConcreteTerms::of(c))).map_err(|e| check_failure(e, c)))
        .collect();
    let mut passed = 0;
    for (cand, row) in cands.iter().zip(rows) {
        let (report, terms) = row?;
        passed += usize::from(report.overall);
        sink.emit(&json!({ "candidate": cand, "report": report, "terms": terms }))?;
    }
    sink.emit(&json!({ "summary": { "checked": cands.len(), "passed": passed } }))
}

fn config(b: &Bounds, sigma: &Rational) -> SearchConfig {
    SearchConfig {
        g_min: b.gmin,
        ..SearchConfig::with_range(sigma.clone(), b.gmax, b.hmax, b.coeff_range.0, b.coeff_range.1)
    }
}

fn bounds_json(b: &Bounds) -> Value {
    json!({ "g_min": b.gmin, "g_max": b.gmax, "h_max": b.hmax, "coeff_range": [b.coeff_range.0, b.coeff_range.1] })
}

fn validate_bounds(b: &Bounds) -> Result<(), Failure> {
    if b.coeff_range.0 > b.coeff_range.1 {
        return Err(Failure::Input(format!("empty coefficient range {}:{}", b.coeff_range.0, b.coeff_range.1)));
    }
    if b.gmin == 0 || b.gmin > b.gmax {
        return Err(Failure::Input(format!("degree bounds need 1 ≤ gmin ≤ gmax, got {}..{}", b.gmin, b.gmax)));
    }
    Ok(())
}

pub fn search(b: &Bounds, sink: &mut Sink) -> Result<(), Failure> {
    validate_bounds(b)?;
    let mut per_sigma = Vec::new();
    for sigma in &b.sigma {
        if rational::signum(sigma) <= 0 {
            return Err(Failure::Input(format!("σ must be positive, got {}", sigma_str(sigma))));
        }
        let config = config(b, sigma);
        let hits = checker::search(&config).map_err(|e| match e {
            SearchError::EmptyRange(..) => Failure::Input(e.to_string()),
            SearchError::Check(c) => Failure::Invariant { message: c.to_string(), dump: json!(sigma_str(sigma)) },
        })?;
        for (cand, report) in &hits {
            sink.emit(&json!({ "candidate": cand, "report": report }))?;
        }
        per_sigma.push(json!({
            "sigma": sigma_str(sigma),
            "enumerated": enumerate(&config).len(),
            "hits": hits.len(),
        }));
    }
    sink.emit(&json!({ "summary": { "bounds": bounds_json(b), "runs": per_sigma } }))
}

fn case_params(v: Value) -> Result<CaseParams, Failure> {
    if v.get("case_id").is_some() {
        let params: CaseParams =
            serde_json::from_value(v).map_err(|e| Failure::Input(format!("invalid case parameters: {e}")))?;
        params.validate().map_err(case_failure)?;
        return Ok(params);
    }
    let poly = |key: &str| -> Result<HKPoly, Failure> {
        let field = v.get(key).cloned().ok_or_else(|| Failure::Input(format!("missing field {key:?}")))?;
        serde_json::from_value(field).map_err(|e| Failure::Input(format!("invalid {key}: {e}")))
    };
    let (p, q) = (poly("p")?, poly("q")?);
    let params = classify(&p, &q).map_err(case_failure)?;
    params.validate().map_err(case_failure)?;
    Ok(params)
}

pub fn case(spec: &str, sigma: Option<&Rational>, text: bool, sink: &mut Sink) -> Result<(), Failure> {
    let mut values = input::values(spec)?;
    if values.len() != 1 {
        return Err(Failure::Input(format!("case takes exactly one input object, got {}", values.len())));
    }
    let params = case_params(values.remove(0))?;
    let verdict = cases::verdict(&params, sigma).map_err(case_failure)?;
    if text {
        sink.text(&render::verdict(&verdict))?;
    } else {
        sink.emit(&verdict)?;
    }
    if !verdict.contradiction || verdict.spot_checks.iter().any(|s| !s.agrees_with_chain) {
        return Err(Failure::Invariant { message: "contradiction chain does not close".into(), dump: json!(verdict) });
    }
    Ok(())
}

pub fn cross_check(a: &CrossCheckArgs, sink: &mut Sink) -> Result<(), Failure> {
    let cands: Vec<Candidate> = match &a.input {
        Some(spec) => {
            if a.sigma.len() > 1 {
                return Err(Failure::Input("with --input, give at most one --sigma".into()));
            }
            input::candidates(spec, a.sigma.first())?
        }
        None => {
            let sigmas = if a.sigma.is_empty() { vec![frac(3, 2), int(2), frac(5, 2)] } else { a.sigma.clone() };
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            CaseId::ALL
                .iter()
                .flat_map(|case| (0..a.samples).map(move |i| (*case, i)))
                .map(|(case, i)| sample::instance(&mut rng, case, sigmas[i % sigmas.len()].clone()))
                .collect()
        }
    };
    let results: Vec<_> = cands.par_iter().map(cases::cross_check).collect();
    let mut per_case: BTreeMap<CaseId, usize> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for (cand, r) in cands.iter().zip(results) {
        let report = match r {
            Ok(report) => report,
            Err(CaseError::Mismatch(report)) => {
                mismatches.push(json!(report));
                *report
            }
            Err(e) => return Err(Failure::Input(format!("{e}: {}", json!(cand)))),
        };
        *per_case.entry(report.params.case_id).or_default() += 1;
        sink.emit(&json!({ "candidate": cand, "cross_check": report }))?;
    }
    let all_match = mismatches.is_empty();
    sink.emit(&json!({ "summary": { "checked": cands.len(), "by_case": per_case, "all_match": all_match } }))?;
    if all_match {
        Ok(())
    } else {
        Err(Failure::Invariant { message: format!("{} stated predictions mismatch", mismatches.len()), dump: json!(mismatches) })
    }
}

pub fn sweep(b: &Bounds, sink: &mut Sink) -> Result<(), Failure> {
    validate_bounds(b)?;
    let mut totals = json!({ "enumerated": 0, "passed_i_to_iii": 0, "violations": 0, "inconsistencies": 0 });
    let mut broken = Vec::new();
    for sigma in &b.sigma {
        let summary = theorem_sweep(sigma, &config(b, sigma)).map_err(|e| match e {
            SweepError::SigmaNotAboveOne(_) => Failure::Input(e.to_string()),
            SweepError::TheoremViolationFound(cand, report) => Failure::Invariant {
                message: "a candidate satisfies every condition".into(),
                dump: json!({ "candidate": cand, "report": report }),
            },
            SweepError::Check(c) => Failure::Invariant { message: c.to_string(), dump: json!(sigma_str(sigma)) },
        })?;
        for (key, n) in [
            ("enumerated", summary.enumerated),
            ("passed_i_to_iii", summary.passed_i_to_iii),
            ("violations", summary.violations),
            ("inconsistencies", summary.inconsistencies.len()),
        ] {
            totals[key] = json!(totals[key].as_u64().unwrap_or(0) + n as u64);
        }
        if !summary.inconsistencies.is_empty() {
            broken.extend(summary.inconsistencies.iter().map(|i| json!(i)));
        }
        sink.emit(&json!({ "sweep": summary }))?;
    }
    sink.emit(&json!({ "summary": { "bounds": bounds_json(b), "sigmas": b.sigma.iter().map(sigma_str).collect::<Vec<_>>(), "totals": totals } }))?;
    if broken.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant { message: format!("{} failures disagree with their case", broken.len()), dump: json!(broken) })
    }
}

fn points(a: &EvalArgs) -> Result<Vec<(Rational, Rational)>, Failure> {
    if !a.point.is_empty() {
        return a
            .point
            .iter()
            .map(|s| {
                let parsed = s.split_once(',').and_then(|(x, y)| Some((rational::parse(x.trim())?, rational::parse(y.trim())?)));
                parsed.ok_or_else(|| Failure::Input(format!("point {s:?} is not `l1,l2`")))
            })
            .collect();
    }
    if a.grid == 0 {
        return Err(Failure::Input("grid resolution must be positive".into()));
    }
    let n = a.grid as i64;
    let at = |i: i64| frac(4 * i, n);
    Ok((1..=n).flat_map(|i| (1..=n).filter(move |j| *j != i).map(move |j| (at(i), at(j)))).collect())
}

pub fn eval(a: &EvalArgs, sink: &mut Sink) -> Result<(), Failure> {
    let mut values = input::values(&a.input)?;
    if values.len() != 1 {
        return Err(Failure::Input(format!("eval takes exactly one candidate, got {}", values.len())));
    }
    let mut v = values.remove(0);
    // σ on the candidate only matters for the symbolic route; default it
    if v.get("sigma").is_none() {
        let s = a.sigma.clone().unwrap_or_else(|| int(1));
        v["sigma"] = json!(sigma_str(&s));
    }
    let cand = input::candidate(v, None)?;
    let vel_sigma = a.sigma.clone().or_else(|| Some(cand.sigma.clone()));
    let vel = VelocitySpec::parse(&a.velocity, vel_sigma).map_err(|e| Failure::Input(e.to_string()))?;
    let pts = points(a)?;
    let results: Vec<_> = pts.par_iter().map(|(l1, l2)| numeric_terms(&vel, &cand, l1, l2)).collect();

    let (mut ok, mut skipped) = (0usize, 0usize);
    let mut worst = [f64::NEG_INFINITY; 3];
    for ((l1, l2), r) in pts.iter().zip(results) {
        let (l1, l2) = (sigma_str(l1), sigma_str(l2));
        match r {
            Ok(t) => {
                ok += 1;
                for (w, x) in worst.iter_mut().zip([t.c_w, t.g_w, t.g_w_swapped]) {
                    *w = w.max(x);
                }
                sink.emit(&json!({ "l1": l1, "l2": l2, "terms": t }))?;
            }
            Err(e) => {
                skipped += 1;
                sink.emit(&json!({ "l1": l1, "l2": l2, "error": e.to_string() }))?;
            }
        }
    }
    let max = |x: f64| if x.is_finite() { json!(x) } else { Value::Null };
    sink.emit(&json!({ "summary": {
        "velocity": a.velocity,
        "points": ok,
        "skipped": skipped,
        "max_c_w": max(worst[0]),
        "max_g_w": max(worst[1].max(worst[2])),
        "nonpositive": ok > 0 && worst.iter().all(|w| *w <= NUMERIC_TOL),
    } }))
}
