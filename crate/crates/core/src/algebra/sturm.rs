//! Exact real-root counting and isolation via Sturm sequences.
//!
//! Polynomials are cleared to primitive integer form before the remainder
//! sequence is built; every normalization multiplies by a positive constant,
//! so sign patterns are untouched and no rational arithmetic is needed in
//! the inner loops.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::{AlgebraError, RhoPoly};

/// Interval endpoint: a finite rational or one of the infinities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    At(Rational),
    PosInf,
}

impl Endpoint {
    pub fn at_int(n: i64) -> Self {
        Endpoint::At(rational::int(n))
    }

    fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::At(r) => Some(r),
            _ => None,
        }
    }
}

/// Integer coefficients, lowest degree first, primitive with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    pub(crate) fn from_rational(p: &RhoPoly<Rational>) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Self::primitive(coeffs)
    }

    fn primitive(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let content = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in &mut coeffs {
                *c /= &content;
            }
        }
        IntPoly(coeffs)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub(crate) fn lead_abs(&self) -> BigInt {
        self.lead().abs()
    }

    fn derivative(&self) -> Self {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::primitive(coeffs)
    }

    /// Sign of the value at `x`, using the homogenized integer form
    /// `Σ c_i a^i b^(n-i)` for `x = a/b`, `b > 0`.
    pub(crate) fn sign_at(&self, x: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let (a, b) = (x.numer(), x.denom());
        let n = self.degree();
        let mut acc = self.0[n].clone();
        let mut bpow = BigInt::one();
        for k in 1..=n {
            bpow *= b;
            acc = acc * a + &self.0[n - k] * &bpow;
        }
        sign_of(&acc)
    }

    /// Sign of the polynomial on a small one-sided neighbourhood of `x`:
    /// the sign of the first nonvanishing derivative, flipped for odd order
    /// on the left.
    fn one_sided_sign(&self, x: &Rational, side: i8) -> i8 {
        let mut d = self.clone();
        let mut order = 0usize;
        while !d.is_zero() {
            let s = d.sign_at(x);
            if s != 0 {
                return if side < 0 && order % 2 == 1 { -s } else { s };
            }
            d = d.derivative();
            order += 1;
        }
        0
    }

    fn sign_at_endpoint(&self, e: &Endpoint) -> i8 {
        match e {
            Endpoint::At(x) => self.sign_at(x),
            Endpoint::PosInf => sign_of(self.lead()),
            Endpoint::NegInf => {
                let s = sign_of(self.lead());
                if self.degree().is_multiple_of(2) {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Positive multiple of the remainder of `self` by `d`.
    fn positive_remainder(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.0.clone();
        let dl = d.lead();
        let dl_abs = dl.abs();
        let dl_sign = sign_of(dl);
        let dd = d.degree();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let rl = r.last().unwrap().clone();
            let factor = if dl_sign > 0 { rl } else { -rl };
            for c in r.iter_mut() {
                *c *= &dl_abs;
            }
            for (i, dc) in d.0.iter().enumerate() {
                r[i + shift] -= &factor * dc;
            }
            debug_assert!(r.last().unwrap().is_zero());
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly::primitive(r)
    }

    /// Strict upper bound on the absolute value of every real root: a power
    /// of two past Fujiwara's bound `2·max |a_{n−k}/a_n|^{1/k}`.
    pub(crate) fn cauchy_bound(&self) -> Rational {
        let n = self.degree();
        let lead = self.lead().abs();
        // smallest e ≥ 0 with |a_n|·2^{ek} ≥ |a_{n−k}| for every k
        let mut e = 0u32;
        for k in 1..=n {
            let c = self.0[n - k].abs();
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            while (&lead << (e * k) as usize) < c {
                e += 1;
            }
        }
        Rational::from_integer(BigInt::one() << (e + 1) as usize) + Rational::one()
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// The signed remainder sequence of `p` and `p'`.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &RhoPoly<Rational>) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(Self::from_int(IntPoly::from_rational(p)))
    }

    pub(crate) fn from_int(p: IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        let mut prev = p;
        let mut cur = prev.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let rem = prev.positive_remainder(&cur);
            let next = IntPoly(rem.0.into_iter().map(|c| -c).collect());
            prev = cur;
            cur = next;
        }
        Self { chain }
    }

    pub(crate) fn base(&self) -> &IntPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign variations just to the right (`side = 1`) or left (`side = -1`)
    /// of `e`. One-sided signs stay meaningful at common roots of the whole
    /// chain, where plain evaluation would see only zeros.
    pub(crate) fn variations(&self, e: &Endpoint, side: i8) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = match e {
                Endpoint::At(x) => p.one_sided_sign(x, side),
                inf => p.sign_at_endpoint(inf),
            };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`; zero when the interval is empty.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        if !endpoint_lt(lo, hi) {
            return 0;
        }
        let open = self.variations(lo, 1).saturating_sub(self.variations(hi, -1));
        match hi {
            Endpoint::At(x) if self.base().sign_at(x) == 0 => open + 1,
            _ => open,
        }
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        let lo = Endpoint::At(lo.clone());
        let hi = Endpoint::At(hi.clone());
        self.variations(&lo, 1).saturating_sub(self.variations(&hi, -1))
    }

    /// Disjoint open intervals, each holding exactly one root of the
    /// underlying polynomial, covering every root in `(lo, hi)`.
    ///
    /// Requires `lo < hi` with neither endpoint a root. Returned endpoints
    /// are never roots and lie in `[lo, hi]`.
    pub fn isolate(&self, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
        debug_assert!(self.base().sign_at(lo) != 0 && self.base().sign_at(hi) != 0);
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = self.count_open(&a, &b);
            match n {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let m = self.non_root_split(&a, &b);
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// A point strictly between `a` and `b` that is not a root.
    pub(crate) fn non_root_split(&self, a: &Rational, b: &Rational) -> Rational {
        let width = b - a;
        // Try 1/2, then 1/3, 2/3, 1/4, 3/4, ...; only finitely many can be roots.
        for den in 2i64.. {
            for num in 1..den {
                if num * 2 == den && den != 2 {
                    continue;
                }
                let m = a + &width * rational::frac(num, den);
                if self.base().sign_at(&m) != 0 {
                    return m;
                }
            }
        }
        unreachable!()
    }

    /// Shrinks an isolating interval `(a, b)` until both endpoints lie strictly
    /// inside `(lo, hi)`.
    pub(crate) fn pull_inside(
        &self,
        (mut a, mut b): (Rational, Rational),
        lo: &Rational,
        hi: &Rational,
    ) -> (Rational, Rational) {
        while &a <= lo || &b >= hi {
            let m = self.non_root_split(&a, &b);
            if self.count_open(&a, &m) == 1 {
                b = m;
            } else {
                a = m;
            }
        }
        (a, b)
    }
}

fn endpoint_lt(a: &Endpoint, b: &Endpoint) -> bool {
    match (a, b) {
        (Endpoint::NegInf, Endpoint::NegInf) | (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => {
            false
        }
        (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
        (Endpoint::At(x), Endpoint::At(y)) => x < y,
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count_roots(
    p: &RhoPoly<Rational>,
    lo: &Endpoint,
    hi: &Endpoint,
) -> Result<usize, AlgebraError> {
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

/// Every real root of `p`, each either exact (rational and found on a split
/// point) or enclosed in an isolating open interval. Used by diagnostics.
pub fn real_root_intervals(p: &RhoPoly<Rational>) -> Result<Vec<(Rational, Rational)>, AlgebraError> {
    let seq = SturmSequence::new(p)?;
    let base = seq.base();
    if base.degree() == 0 {
        return Ok(Vec::new());
    }
    let m = base.cauchy_bound();
    let lo = -m.clone();
    Ok(seq.isolate(&lo, &m))
}

impl Endpoint {
    pub fn as_finite(&self) -> Option<&Rational> {
        self.finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn p(c: &[i64]) -> RhoPoly {
        RhoPoly::from_ints(c)
    }

    #[test]
    fn two_simple_roots() {
        let n = sturm_count_roots(&p(&[2, -3, 1]), &Endpoint::at_int(0), &Endpoint::at_int(3));
        assert_eq!(n.unwrap(), 2);
    }

    #[test]
    fn double_root_counts_once() {
        let n = sturm_count_roots(&p(&[1, -2, 1]), &Endpoint::at_int(0), &Endpoint::at_int(2));
        assert_eq!(n.unwrap(), 1);
    }

    #[test]
    fn no_real_roots() {
        let n = sturm_count_roots(&p(&[1, 0, 1]), &Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(n.unwrap(), 0);
    }

    #[test]
    fn half_open_convention() {
        // roots 1 and 2: (1, 2] holds only 2
        let q = p(&[2, -3, 1]);
        assert_eq!(sturm_count_roots(&q, &Endpoint::at_int(1), &Endpoint::at_int(2)).unwrap(), 1);
        assert_eq!(sturm_count_roots(&q, &Endpoint::at_int(0), &Endpoint::at_int(1)).unwrap(), 1);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let e = sturm_count_roots(&p(&[]), &Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(e, Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn constants_have_no_roots() {
        let n = sturm_count_roots(&p(&[-4]), &Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(n.unwrap(), 0);
    }

    #[test]
    fn isolation_separates_close_roots() {
        // (10ρ - 11)(10ρ - 12)(ρ + 3)
        let q = &(&p(&[-11, 10]) * &p(&[-12, 10])) * &p(&[3, 1]);
        let iv = real_root_intervals(&q).unwrap();
        assert_eq!(iv.len(), 3);
        let seq = SturmSequence::new(&q).unwrap();
        for (a, b) in &iv {
            assert_eq!(seq.count_open(a, b), 1);
        }
        assert!(iv[1].1 <= iv[2].0);
    }

    #[test]
    fn endpoint_at_multiple_root() {
        // ρ³(ρ - 2)(ρ - 3): the chain vanishes identically at 0
        let q = &p(&[0, 0, 0, 1]) * &(&p(&[-2, 1]) * &p(&[-3, 1]));
        let seq = SturmSequence::new(&q).unwrap();
        assert_eq!(seq.count(&Endpoint::at_int(0), &Endpoint::at_int(4)), 2);
        assert_eq!(seq.count(&Endpoint::at_int(-1), &Endpoint::at_int(0)), 1);
        assert_eq!(seq.count_open(&int(0), &int(3)), 1);
        assert_eq!(seq.count_open(&int(0), &frac(1, 1000)), 0);
    }

    #[test]
    fn sign_at_rational_points() {
        let q = IntPoly::from_rational(&p(&[-1, 0, 2]));
        assert_eq!(q.sign_at(&frac(1, 2)), -1);
        assert_eq!(q.sign_at(&frac(3, 4)), 1);
        assert_eq!(q.sign_at(&int(0)), -1);
    }

    #[test]
    fn cauchy_bound_is_strict() {
        let q = IntPoly::from_rational(&p(&[-6, 1, 1]));
        let m = q.cauchy_bound();
        assert!(m > int(2));
        assert_eq!(q.sign_at(&m), 1);
        assert_eq!(q.sign_at(&-m), 1);
    }
}
