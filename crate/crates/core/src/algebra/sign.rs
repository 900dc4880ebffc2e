//! Exact sign certificates on real intervals.
//!
//! Roots are isolated with Sturm sequences; between consecutive isolating
//! intervals the sign is constant, so evaluating at the interval endpoints
//! (which are never roots) decides the sign on the whole region.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use super::sturm::{Endpoint, IntPoly, SturmSequence};
use super::RhoPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Open(Rational),
    Closed(Rational),
    Unbounded,
}

impl Bound {
    fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Open(r) | Bound::Closed(r) => Some(r),
            Bound::Unbounded => None,
        }
    }
}

/// A real interval; an unbounded low end means −∞, an unbounded high end +∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub lo: Bound,
    pub hi: Bound,
}

impl Region {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Self { lo, hi }
    }

    /// `[0, ∞)`
    pub fn halfline() -> Self {
        Self::new(Bound::Closed(rational::zero()), Bound::Unbounded)
    }

    /// `(a, ∞)`
    pub fn open_above(a: Rational) -> Self {
        Self::new(Bound::Open(a), Bound::Unbounded)
    }

    /// `(a, b)`
    pub fn open(a: Rational, b: Rational) -> Self {
        Self::new(Bound::Open(a), Bound::Open(b))
    }

    /// `[a, a]`
    pub fn point(a: Rational) -> Self {
        Self::new(Bound::Closed(a.clone()), Bound::Closed(a))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            Bound::Open(a) => x > a,
            Bound::Closed(a) => x >= a,
            Bound::Unbounded => true,
        };
        let below = match &self.hi {
            Bound::Open(b) => x < b,
            Bound::Closed(b) => x <= b,
            Bound::Unbounded => true,
        };
        above && below
    }

    fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Bound::Closed(a), Bound::Closed(b)) => a > b,
            (lo, hi) => match (lo.value(), hi.value()) {
                (Some(a), Some(b)) => a >= b,
                _ => false,
            },
        }
    }

    /// Some rational strictly inside (or the single point of a degenerate region).
    fn interior_point(&self) -> Rational {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => (a + b) / rational::int(2),
            (Some(a), None) => a + rational::one(),
            (None, Some(b)) => b - rational::one(),
            (None, None) => rational::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMode {
    Nonpositive,
    Nonnegative,
    StrictlyNegative,
    StrictlyPositive,
}

impl SignMode {
    fn admits(self, sign: i8) -> bool {
        match self {
            SignMode::Nonpositive => sign <= 0,
            SignMode::Nonnegative => sign >= 0,
            SignMode::StrictlyNegative => sign < 0,
            SignMode::StrictlyPositive => sign > 0,
        }
    }

    fn is_strict(self) -> bool {
        matches!(self, SignMode::StrictlyNegative | SignMode::StrictlyPositive)
    }

    pub fn flipped(self) -> Self {
        match self {
            SignMode::Nonpositive => SignMode::Nonnegative,
            SignMode::Nonnegative => SignMode::Nonpositive,
            SignMode::StrictlyNegative => SignMode::StrictlyPositive,
            SignMode::StrictlyPositive => SignMode::StrictlyNegative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SignCertificate {
    Pass,
    /// `witness` violates the claim with exact value `value`. When the
    /// violation persists past every real root, `tail` is a point beyond
    /// all of them.
    Fail {
        #[serde(with = "rational::serde_str")]
        witness: Rational,
        #[serde(with = "rational::serde_str")]
        value: Rational,
        #[serde(with = "rational::serde_opt", default, skip_serializing_if = "Option::is_none")]
        tail: Option<Rational>,
    },
    /// Strict claim broken by an irrational root of even multiplicity,
    /// enclosed in `(lo, hi)`; the sign elsewhere is as claimed.
    RootWitness {
        #[serde(with = "rational::serde_str")]
        lo: Rational,
        #[serde(with = "rational::serde_str")]
        hi: Rational,
    },
}

impl SignCertificate {
    pub fn passed(&self) -> bool {
        matches!(self, SignCertificate::Pass)
    }

    pub fn witness(&self) -> Option<&Rational> {
        match self {
            SignCertificate::Fail { witness, .. } => Some(witness),
            _ => None,
        }
    }

    fn fail(p: &RhoPoly, at: Rational) -> Self {
        let value = p.eval(&at);
        SignCertificate::Fail { witness: at, value, tail: None }
    }
}

/// Sign claim on `[0, ∞)`.
pub fn certify_sign_on_halfline(p: &RhoPoly, mode: SignMode) -> SignCertificate {
    certify_sign(p, mode, &Region::halfline())
}

pub fn certify_sign(p: &RhoPoly, mode: SignMode, region: &Region) -> SignCertificate {
    if region.is_empty() {
        return SignCertificate::Pass;
    }
    if p.is_zero() {
        return if mode.is_strict() {
            SignCertificate::fail(p, region.interior_point())
        } else {
            SignCertificate::Pass
        };
    }
    for b in [&region.lo, &region.hi] {
        if let Bound::Closed(x) = b {
            if !mode.admits(rational::signum(&p.eval(x))) {
                return SignCertificate::fail(p, x.clone());
            }
        }
    }
    if let Some(cert) = quick_decision(p, mode, region) {
        return cert;
    }
    let seq = SturmSequence::new(p).expect("nonzero");
    if let (Bound::Closed(a), Bound::Closed(b)) = (&region.lo, &region.hi) {
        if a == b {
            return SignCertificate::Pass;
        }
    }

    let (lo, hi) = open_core(&seq, region);
    let intervals: Vec<_> = seq
        .isolate(&lo, &hi)
        .into_iter()
        .map(|iv| seq.pull_inside(iv, &lo, &hi))
        .collect();

    let mut samples: Vec<Rational> = Vec::new();
    if intervals.is_empty() {
        samples.push((&lo + &hi) / rational::int(2));
    }
    for (a, b) in &intervals {
        samples.push(a.clone());
        samples.push(b.clone());
    }
    // Points in the region but outside [lo, hi] carry the sign of the
    // nearest sample, since no root lies in between.
    let last = samples.last().cloned().expect("at least one sample");
    let tail_violates = region.hi == Bound::Unbounded && !mode.admits(rational::signum(&p.eval(&last)));
    for s in &samples {
        let v = p.eval(s);
        if !mode.admits(rational::signum(&v)) {
            return SignCertificate::Fail {
                witness: s.clone(),
                value: v,
                tail: tail_violates.then(|| last.clone()),
            };
        }
    }

    if mode.is_strict() {
        // Every sample has the right sign, so any interior root touches zero
        // without crossing.
        if let Some(iv) = intervals.into_iter().next() {
            return match rational_root_in(&seq, iv) {
                Ok(r) => SignCertificate::fail(p, r),
                Err((lo, hi)) => SignCertificate::RootWitness { lo, hi },
            };
        }
    }
    SignCertificate::Pass
}

/// Settles the cheap cases without a Sturm chain: a wrong sign past every
/// root refutes at once, and coefficients of uniform admissible sign leave
/// no positive root (Descartes) on a nonnegative region.
fn quick_decision(p: &RhoPoly, mode: SignMode, region: &Region) -> Option<SignCertificate> {
    if region.hi == Bound::Unbounded {
        let bound = IntPoly::from_rational(p).cauchy_bound().ceil();
        let far = match region.lo.value() {
            Some(a) if a >= &bound => a.floor() + Rational::one(),
            _ => bound,
        };
        let value = p.eval(&far);
        if !mode.admits(rational::signum(&value)) {
            return Some(SignCertificate::Fail { witness: far.clone(), value, tail: Some(far) });
        }
    }
    let nonnegative = region.lo.value().is_some_and(|a| !a.is_negative());
    let uniform = p.coeffs().iter().all(|c| c.is_zero() || mode.admits(rational::signum(c)));
    (nonnegative && !mode.is_strict() && uniform).then_some(SignCertificate::Pass)
}

/// A root-free-at-the-ends open interval `(lo, hi)` inside the region whose
/// complement in the region contains no roots.
fn open_core(seq: &SturmSequence, region: &Region) -> (Rational, Rational) {
    let base = seq.base();
    let bound = base.cauchy_bound();
    // stand-ins for infinite sides must also clear the finite endpoint
    let one = Rational::one();
    let lo_raw = match (region.lo.value(), region.hi.value()) {
        (Some(a), _) => a.clone(),
        (None, Some(b)) => (-&bound).min(b - &one),
        (None, None) => -&bound,
    };
    let hi_raw = match region.hi.value() {
        Some(b) => b.clone(),
        None => bound.max(&lo_raw + &one),
    };
    // an infinite side already sits beyond every root, so only finite
    // endpoints that happen to be roots need pulling inward
    let mut lo = lo_raw.clone();
    let mut hi = hi_raw.clone();
    // variations at a root endpoint need high derivatives, so take them once
    let at = |x: &Rational, side| seq.variations(&Endpoint::At(x.clone()), side);
    if base.sign_at(&lo) == 0 {
        let v_lo = at(&lo_raw, 1);
        let mut delta = (&hi_raw - &lo_raw) / rational::int(2);
        loop {
            let cand = &lo_raw + &delta;
            if base.sign_at(&cand) != 0 && v_lo == at(&cand, -1) {
                lo = cand;
                break;
            }
            delta /= rational::int(2);
        }
    }
    if base.sign_at(&hi) == 0 {
        let v_hi = at(&hi_raw, -1);
        let mut delta = (&hi_raw - &lo) / rational::int(2);
        loop {
            let cand = &hi_raw - &delta;
            if cand > lo && base.sign_at(&cand) != 0 && at(&cand, 1) == v_hi {
                hi = cand;
                break;
            }
            delta /= rational::int(2);
        }
    }
    (lo, hi)
}

/// Pins down the root isolated in `(a, b)` exactly when it is rational,
/// otherwise returns a (refined) isolating interval.
#[allow(clippy::result_large_err)]
fn rational_root_in(seq: &SturmSequence, (mut a, mut b): (Rational, Rational)) -> Result<Rational, (Rational, Rational)> {
    let base = seq.base();
    // A rational root n/d of a primitive integer polynomial has d | lead, and
    // distinct such fractions are at least 1/lead² apart.
    let lead = base.lead_abs();
    let gap = Rational::new(BigInt::one(), &lead * &lead);
    while &b - &a >= gap {
        let m = (&a + &b) / rational::int(2);
        if base.sign_at(&m) == 0 {
            return Ok(m);
        }
        if seq.count_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    let cand = simplest_between(&a, &b);
    if base.sign_at(&cand) == 0 {
        Ok(cand)
    } else {
        Err((a, b))
    }
}

/// The rational with the smallest denominator in the open interval `(a, b)`.
pub(crate) fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !b.is_positive() {
        return -simplest_between(&-b, &-a);
    }
    simplest_nonneg(a, Some(b))
}

fn simplest_nonneg(a: &Rational, b: Option<&Rational>) -> Rational {
    let fl = a.floor();
    let next = &fl + Rational::one();
    if b.is_none_or(|b| &next < b) {
        return next;
    }
    let b = b.unwrap();
    if &fl == a {
        // (fl, b) with b <= fl + 1: need fl + 1/x with x > 1/(b - fl)
        let inv = Rational::one() / (b - &fl);
        return fl + Rational::one() / simplest_nonneg(&inv, None);
    }
    // x = fl + 1/y maps (a, b) onto y in (1/(b - fl), 1/(a - fl)), and the
    // continued-fraction tree keeps the simplest y for the simplest x
    let inv_lo = Rational::one() / (b - &fl);
    let inv_hi = Rational::one() / (a - &fl);
    fl + Rational::one() / simplest_nonneg(&inv_lo, Some(&inv_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn p(c: &[i64]) -> RhoPoly {
        RhoPoly::from_ints(c)
    }

    #[test]
    fn double_root_cubic_is_nonpositive() {
        let c = p(&[-2, 2, 2, -2]);
        assert_eq!(certify_sign_on_halfline(&c, SignMode::Nonpositive), SignCertificate::Pass);
    }

    #[test]
    fn square_fails_at_origin() {
        let c = certify_sign_on_halfline(&p(&[1, -2, 1]), SignMode::Nonpositive);
        match c {
            SignCertificate::Fail { witness, value, .. } => {
                assert_eq!(witness, int(0));
                assert_eq!(value, int(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_polynomial() {
        let z = p(&[]);
        assert!(certify_sign_on_halfline(&z, SignMode::Nonpositive).passed());
        assert!(certify_sign_on_halfline(&z, SignMode::Nonnegative).passed());
        let strict = certify_sign(&z, SignMode::StrictlyPositive, &Region::open_above(int(0)));
        assert!(!strict.passed());
    }

    #[test]
    fn tail_witness_reported() {
        // positive beyond ρ = 3
        let c = certify_sign_on_halfline(&p(&[-3, 1]), SignMode::Nonpositive);
        match c {
            SignCertificate::Fail { witness, tail: Some(t), .. } => {
                assert!(witness > int(3));
                assert!(t > int(3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_mode_catches_touching_rational_root() {
        // (ρ - 1/2)² ρ is ≥ 0 on (0, ∞) but vanishes at 1/2
        let sq = &p(&[-1, 2]) * &p(&[-1, 2]);
        let c = certify_sign(&(&sq * &p(&[0, 1])), SignMode::StrictlyPositive, &Region::open_above(int(0)));
        match c {
            SignCertificate::Fail { witness, value, .. } => {
                assert_eq!(witness, frac(1, 2));
                assert_eq!(value, int(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_mode_catches_touching_irrational_root() {
        // (ρ² - 2)² > 0 except at √2
        let s = p(&[-2, 0, 1]);
        let c = certify_sign(&(&s * &s), SignMode::StrictlyPositive, &Region::open_above(int(0)));
        match c {
            SignCertificate::RootWitness { lo, hi } => {
                assert!(lo < frac(1415, 1000) && hi > frac(1414, 1000));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_endpoint_roots_are_fine() {
        // ρ(ρ - 1) < 0 on (0, 1)
        let c = certify_sign(&p(&[0, -1, 1]), SignMode::StrictlyNegative, &Region::open(int(0), int(1)));
        assert!(c.passed());
        let c = certify_sign(&p(&[0, -1, 1]), SignMode::StrictlyPositive, &Region::open_above(int(1)));
        assert!(c.passed());
    }

    #[test]
    fn closed_endpoint_root_fails_strict() {
        let r = Region::new(Bound::Closed(int(1)), Bound::Unbounded);
        let c = certify_sign(&p(&[-1, 1]), SignMode::StrictlyPositive, &r);
        assert_eq!(c.witness(), Some(&int(1)));
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(1, 2)), frac(2, 5));
        assert_eq!(simplest_between(&frac(-7, 3), &frac(-2, 1)), frac(-9, 4));
        assert_eq!(simplest_between(&frac(3, 1), &frac(7, 2)), frac(10, 3));
        assert_eq!(simplest_between(&frac(1, 2), &frac(5, 2)), int(1));
        assert_eq!(simplest_between(&frac(1, 2), &frac(1, 1)), frac(2, 3));
    }

    #[test]
    fn region_far_above_cauchy_bound() {
        // the stand-in for +∞ must lie past a finite lower endpoint
        let c = certify_sign(&p(&[-1]), SignMode::StrictlyPositive, &Region::open_above(int(5)));
        assert!(Region::open_above(int(5)).contains(c.witness().unwrap()));
        let r = Region::new(Bound::Unbounded, Bound::Open(int(-7)));
        let c = certify_sign(&p(&[0, 1]), SignMode::Nonnegative, &r);
        assert!(r.contains(c.witness().unwrap()));
        assert!(certify_sign(&p(&[-3, 1]), SignMode::StrictlyPositive, &Region::open_above(int(9))).passed());
    }

    proptest::proptest! {
        #[test]
        fn simplest_between_matches_brute_force(n in -60i64..60, d in 1i64..12, wn in 1i64..30, wd in 1i64..12) {
            let a = frac(n, d);
            let b = &a + frac(wn, wd);
            let s = simplest_between(&a, &b);
            proptest::prop_assert!(a < s && s < b);
            let best = (1i64..)
                .find(|den| {
                    let lo = (&a * int(*den)).floor() + Rational::one();
                    lo < &b * int(*den)
                })
                .unwrap();
            proptest::prop_assert_eq!(s.denom().clone(), best.into());
        }
    }
}
