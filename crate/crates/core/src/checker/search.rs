//! Exhaustive search over integer-coefficient candidates.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_all, CheckError, MPFReport};
use crate::algebra::rational::{self, Rational};
use crate::flow::Candidate;
use crate::hk::HKPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("coefficient range {0}..={1} is empty")]
    EmptyRange(i64, i64),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Bounds for an exhaustive sweep. `p` has degree `g ∈ [g_min, g_max]`,
/// `q` degree `h ∈ [h_min, min(h_max, g − 1)]`, and every coefficient is
/// drawn from `coefficients`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
    #[serde(default = "one")]
    pub g_min: usize,
    pub g_max: usize,
    #[serde(default)]
    pub h_min: usize,
    pub h_max: usize,
    pub coefficients: Vec<i64>,
}

fn one() -> usize {
    1
}

impl SearchConfig {
    pub fn with_range(sigma: Rational, g_max: usize, h_max: usize, lo: i64, hi: i64) -> Self {
        Self { sigma, g_min: 1, g_max, h_min: 0, h_max, coefficients: (lo..=hi).collect() }
    }

    fn degree_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in self.g_min.max(1)..=self.g_max {
            for h in self.h_min..=self.h_max.min(g - 1) {
                out.push((g, h));
            }
        }
        out
    }
}

/// Canonical integer representative of the ray `{α·p/q : α > 0}`: `p` and
/// `q` each divided by their own content, then both negated if needed so
/// the first nonzero coefficient of `q` is positive. Every condition is
/// invariant under positive rescaling of `w`, so one representative per
/// ray suffices.
pub fn canonicalize(p: &[i64], q: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let primitive = |v: &[i64]| {
        let g = v.iter().fold(0i64, |acc, c| acc.gcd(c));
        if g == 0 {
            v.to_vec()
        } else {
            v.iter().map(|c| c / g).collect::<Vec<_>>()
        }
    };
    let (mut p, mut q) = (primitive(p), primitive(q));
    if q.iter().copied().find(|c| *c != 0).is_some_and(|c| c < 0) {
        p.iter_mut().for_each(|c| *c = -*c);
        q.iter_mut().for_each(|c| *c = -*c);
    }
    (p, q)
}

fn tuples(len: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut t = prefix.clone();
                    t.push(*v);
                    t
                })
            })
            .collect();
    }
    out.retain(|t| t.iter().any(|c| *c != 0));
    out
}

type Key = (usize, usize, Vec<i64>, Vec<i64>);

/// Every canonical candidate within the bounds, in lexicographic order of
/// `(g, h, p, q)`.
pub fn enumerate(config: &SearchConfig) -> Vec<Candidate> {
    let mut values: Vec<i64> = config.coefficients.clone();
    values.sort_unstable();
    values.dedup();
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    for (g, h) in config.degree_pairs() {
        let ps = tuples(g / 2 + 1, &values);
        let qs = tuples(h / 2 + 1, &values);
        for p in &ps {
            for q in &qs {
                let (cp, cq) = canonicalize(p, q);
                seen.insert((g, h, cp, cq));
            }
        }
    }
    seen.into_iter()
        .map(|(g, h, p, q)| {
            Candidate::new(HKPoly::from_ints(g, &p), HKPoly::from_ints(h, &q), config.sigma.clone())
                .expect("nonzero by construction")
        })
        .collect()
}

/// Candidates passing all four conditions, in canonical order, each with
/// its report.
pub fn search(config: &SearchConfig) -> Result<Vec<(Candidate, MPFReport)>, SearchError> {
    let results: Vec<Result<Option<(Candidate, MPFReport)>, CheckError>> = enumerate(config)
        .into_par_iter()
        .map(|cand| {
            let report = check_all(&cand)?;
            Ok(report.overall.then_some((cand, report)))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(hit) = r? {
            out.push(hit);
        }
    }
    Ok(out)
}
