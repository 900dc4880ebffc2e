//! Normal velocities `F(λ1, λ2)` with first and second partials.
//!
//! Fractional powers are irrational, so a jet is returned as a short sum of
//! terms `scale · (F, F1, F2, F11, F12, F22)` in which `scale > 0` is the
//! only floating-point quantity. Anything linear in the jet can then be
//! formed exactly per term and rounded once at the end.

use num_traits::{One, Zero};

use crate::algebra::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VelocityError {
    #[error("unknown velocity {0:?}; expected K^sigma, H^sigma, A2 or trA^sigma")]
    UnknownName(String),
    #[error("velocity {0} needs a σ parameter")]
    MissingSigma(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VelocitySpec {
    /// `K^σ`
    KPow(Rational),
    /// `H^σ`
    HPow(Rational),
    /// `|A|² = λ1² + λ2²`
    A2,
    /// `tr A^σ = λ1^σ + λ2^σ`
    TrAPow(Rational),
}

/// `scale · [F, F_1, F_2, F_11, F_12, F_22]`
#[derive(Clone, Debug, PartialEq)]
pub struct JetTerm {
    pub scale: f64,
    pub d: [Rational; 6],
}

/// `base^σ` as `(float part, exact part)`; integer exponents stay exact.
fn power(base: &Rational, sigma: &Rational) -> (f64, Rational) {
    if sigma.is_integer() {
        let n = sigma.to_integer();
        let e: i32 = n.try_into().expect("exponent fits in i32");
        let mag = rational::pow(base, e.unsigned_abs());
        let exact = if e < 0 { Rational::one() / mag } else { mag };
        (1.0, exact)
    } else {
        let f = rational::to_f64(base).powf(rational::to_f64(sigma));
        (f, Rational::one())
    }
}

impl VelocitySpec {
    pub fn parse(name: &str, sigma: Option<Rational>) -> Result<Self, VelocityError> {
        let need = |label| sigma.clone().ok_or(VelocityError::MissingSigma(label));
        match name {
            "K^sigma" => Ok(Self::KPow(need("K^sigma")?)),
            "H^sigma" => Ok(Self::HPow(need("H^sigma")?)),
            "trA^sigma" => Ok(Self::TrAPow(need("trA^sigma")?)),
            "A2" => Ok(Self::A2),
            other => Err(VelocityError::UnknownName(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::KPow(_) => "K^sigma",
            Self::HPow(_) => "H^sigma",
            Self::A2 => "A2",
            Self::TrAPow(_) => "trA^sigma",
        }
    }

    pub fn sigma(&self) -> Option<&Rational> {
        match self {
            Self::KPow(s) | Self::HPow(s) | Self::TrAPow(s) => Some(s),
            Self::A2 => None,
        }
    }

    pub fn jet(&self, l1: &Rational, l2: &Rational) -> Vec<JetTerm> {
        let two = rational::int(2);
        match self {
            Self::KPow(s) => {
                let k = l1 * l2;
                let (scale, exact) = power(&k, s);
                let s1 = s - Rational::one();
                let d = [
                    Rational::one(),
                    s / l1,
                    s / l2,
                    s * &s1 / (l1 * l1),
                    s * s / &k,
                    s * &s1 / (l2 * l2),
                ];
                vec![JetTerm { scale, d: d.map(|x| x * &exact) }]
            }
            Self::HPow(s) => {
                let h = l1 + l2;
                let (scale, exact) = power(&h, s);
                let first = s / &h;
                let second = s * (s - Rational::one()) / (&h * &h);
                let d = [
                    Rational::one(),
                    first.clone(),
                    first,
                    second.clone(),
                    second.clone(),
                    second,
                ];
                vec![JetTerm { scale, d: d.map(|x| x * &exact) }]
            }
            Self::A2 => vec![JetTerm {
                scale: 1.0,
                d: [
                    l1 * l1 + l2 * l2,
                    &two * l1,
                    &two * l2,
                    two.clone(),
                    Rational::zero(),
                    two,
                ],
            }],
            Self::TrAPow(s) => {
                let s1 = s - Rational::one();
                let single = |l: &Rational, slot: usize| {
                    let (scale, exact) = power(l, s);
                    let mut d: [Rational; 6] = Default::default();
                    d[0] = Rational::one();
                    d[slot] = s / l;
                    d[if slot == 1 { 3 } else { 5 }] = s * &s1 / (l * l);
                    JetTerm { scale, d: d.map(|x| x * &exact) }
                };
                vec![single(l1, 1), single(l2, 2)]
            }
        }
    }

    /// `[F, F_1, F_2, F_11, F_12, F_22]` in plain floating point.
    pub fn jet_f64(&self, l1: f64, l2: f64) -> [f64; 6] {
        match self {
            Self::KPow(s) => {
                let s = rational::to_f64(s);
                let f = (l1 * l2).powf(s);
                [
                    f,
                    s * f / l1,
                    s * f / l2,
                    s * (s - 1.0) * f / (l1 * l1),
                    s * s * f / (l1 * l2),
                    s * (s - 1.0) * f / (l2 * l2),
                ]
            }
            Self::HPow(s) => {
                let s = rational::to_f64(s);
                let h = l1 + l2;
                let f1 = s * h.powf(s - 1.0);
                let f11 = s * (s - 1.0) * h.powf(s - 2.0);
                [h.powf(s), f1, f1, f11, f11, f11]
            }
            Self::A2 => [l1 * l1 + l2 * l2, 2.0 * l1, 2.0 * l2, 2.0, 0.0, 2.0],
            Self::TrAPow(s) => {
                let s = rational::to_f64(s);
                [
                    l1.powf(s) + l2.powf(s),
                    s * l1.powf(s - 1.0),
                    s * l2.powf(s - 1.0),
                    s * (s - 1.0) * l1.powf(s - 2.0),
                    0.0,
                    s * (s - 1.0) * l2.powf(s - 2.0),
                ]
            }
        }
    }
}
