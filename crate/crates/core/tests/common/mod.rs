#![allow(dead_code)]

use mpflow::algebra::rational::{self, Rational};
use mpflow::cases::CaseId;
use mpflow::flow::Candidate;
use mpflow::hk::HKPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn hk(g: usize, c: &[i64]) -> HKPoly {
    HKPoly::from_ints(g, c)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_hk(rng: &mut ChaCha8Rng, degree: usize, span: i64) -> HKPoly {
    loop {
        let c: Vec<i64> = (0..degree / 2 + 1).map(|_| rng.gen_range(-span..=span)).collect();
        let p = HKPoly::from_ints(degree, &c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random nonzero `(p, q)` with `deg p ≤ g_max`, `deg q < deg p`.
pub fn random_candidate(rng: &mut ChaCha8Rng, g_max: usize, span: i64, sigma: Rational) -> Candidate {
    let g = rng.gen_range(1..=g_max);
    let h = rng.gen_range(0..g);
    Candidate::new(random_hk(rng, g, span), random_hk(rng, h, span), sigma).unwrap()
}

/// Polynomial whose first nonzero coefficient sits at 1-based index `k`
/// and is positive.
pub fn with_first_index(rng: &mut ChaCha8Rng, degree: usize, k: usize, span: i64) -> HKPoly {
    let c: Vec<i64> = (1..=degree / 2 + 1)
        .map(|i| match i.cmp(&k) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => rng.gen_range(1..=span),
            std::cmp::Ordering::Greater => rng.gen_range(-span..=span),
        })
        .collect();
    HKPoly::from_ints(degree, &c)
}

/// Index pair `(k, l)` drawn from a case's bucket.
pub fn indices_for(rng: &mut ChaCha8Rng, case: CaseId) -> (usize, usize) {
    let big = |rng: &mut ChaCha8Rng| rng.gen_range(3..=5);
    match case {
        CaseId::I => (1, 1),
        CaseId::II => (1, 2),
        CaseId::III => (1, big(rng)),
        CaseId::IV => (2, 2),
        CaseId::V => (2, big(rng)),
        CaseId::VI => (big(rng), big(rng)),
        CaseId::VII => (2, 1),
        CaseId::VIII => (big(rng), 1),
        CaseId::IX => (big(rng), 2),
    }
}

/// A random candidate in the given case with `g > h`, respecting the
/// index bounds `2(k − 1) ≤ g`, `2(l − 1) ≤ h`.
pub fn random_case_instance(rng: &mut ChaCha8Rng, case: CaseId, sigma: Rational) -> Candidate {
    let (k, l) = indices_for(rng, case);
    let h = rng.gen_range(2 * (l - 1)..=2 * (l - 1) + 3);
    let g_lo = (2 * (k - 1)).max(h + 1);
    let g = rng.gen_range(g_lo..=g_lo + 4);
    let p = with_first_index(rng, g, k, 5);
    let q = with_first_index(rng, h, l, 5);
    Candidate::new(p, q, sigma).unwrap()
}

pub fn random_positive_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rational::frac(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}
