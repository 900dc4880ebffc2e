pub mod poly;
pub mod rational;
pub mod sigma;
pub mod sign;
pub mod sturm;

pub use poly::RhoPoly;
pub use rational::Rational;
pub use sigma::{Coeff, SigmaLinear};
pub use sign::{certify_sign, certify_sign_on_halfline, Bound, Region, SignCertificate, SignMode};
pub use sturm::{sturm_count_roots, Endpoint, SturmSequence};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("product of two σ-dependent coefficients leaves the σ-linear ring")]
    DegreeOverflowInSigma,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}
