//! Seeded random instances of each case for the cross-check suite.

use mpflow::algebra::rational::Rational;
use mpflow::cases::CaseId;
use mpflow::flow::Candidate;
use mpflow::hk::HKPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SPAN: i64 = 5;

/// Zero below index `k`, positive at `k`, arbitrary above.
fn first_positive_at(rng: &mut ChaCha8Rng, degree: usize, k: usize) -> HKPoly {
    let coeffs: Vec<i64> = (1..=degree / 2 + 1)
        .map(|i| {
            if i < k {
                0
            } else if i == k {
                rng.gen_range(1..=SPAN)
            } else {
                rng.gen_range(-SPAN..=SPAN)
            }
        })
        .collect();
    HKPoly::from_ints(degree, &coeffs)
}

pub fn instance(rng: &mut ChaCha8Rng, case: CaseId, sigma: Rational) -> Candidate {
    let mut big = || rng.gen_range(3..=5);
    let (k, l) = match case {
        CaseId::I => (1, 1),
        CaseId::II => (1, 2),
        CaseId::III => (1, big()),
        CaseId::IV => (2, 2),
        CaseId::V => (2, big()),
        CaseId::VI => (big(), big()),
        CaseId::VII => (2, 1),
        CaseId::VIII => (big(), 1),
        CaseId::IX => (big(), 2),
    };
    let h = rng.gen_range(2 * (l - 1)..=2 * (l - 1) + 3);
    let g_lo = (2 * (k - 1)).max(h + 1);
    let g = rng.gen_range(g_lo..=g_lo + 4);
    let p = first_positive_at(rng, g, k);
    let q = first_positive_at(rng, h, l);
    Candidate::new(p, q, sigma).expect("nonzero by construction")
}
