//! Witnesses that `(M, nu)` is not an explicit maximal ideal, run outcomes,
//! and certificates.

mod certificate;
mod verify;

pub use certificate::{deserialize_certificate, serialize_certificate, CertError, Certificate, Row, TraceEntry};
pub use verify::{verify_certificate, CheckResult, VerifyReport};

use std::fmt;

use crate::algebra::{Integer, Poly};
use crate::oracle::Oracle;

/// One violated condition of the explicit-maximal-ideal definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Case 1: `0` is not a member.
    ZeroNotMember,
    /// Case 2: `a, b` are members but `a + b` is not.
    SumNotMember { a: Poly, b: Poly },
    /// Case 3: `a` is a member but `lambda * a` is not.
    MultipleNotMember { lambda: Poly, a: Poly },
    /// Case 4: `1` is a member.
    OneIsMember,
    /// Case 5: `a` is not a member and neither is `a * nu(a) - 1`.
    NoInverse { a: Poly },
}

impl Evidence {
    pub fn case_number(&self) -> u8 {
        match self {
            Evidence::ZeroNotMember => 1,
            Evidence::SumNotMember { .. } => 2,
            Evidence::MultipleNotMember { .. } => 3,
            Evidence::OneIsMember => 4,
            Evidence::NoInverse { .. } => 5,
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::ZeroNotMember | Evidence::OneIsMember => write!(f, "case{}", self.case_number()),
            Evidence::SumNotMember { a, b } => write!(f, "case2 a = {a}, b = {b}"),
            Evidence::MultipleNotMember { lambda, a } => write!(f, "case3 lambda = {lambda}, a = {a}"),
            Evidence::NoInverse { a } => write!(f, "case5 a = {a}"),
        }
    }
}

/// Replay the membership queries that define the case and return whether
/// they all come out as the case claims.
pub fn validate_evidence(o: &Oracle, e: &Evidence) -> bool {
    match e {
        Evidence::ZeroNotMember => !o.membership(&Poly::zero()),
        Evidence::SumNotMember { a, b } => {
            o.membership(a) && o.membership(b) && !o.membership(&(a + b))
        }
        Evidence::MultipleNotMember { lambda, a } => o.membership(a) && !o.membership(&(lambda * a)),
        Evidence::OneIsMember => o.membership(&Poly::one()),
        Evidence::NoInverse { a } => {
            !o.membership(a) && !o.membership(&(&(a * &o.nu_value(a)) - &Poly::one()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Prime(Integer),
    NotMaximal(Evidence),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Prime(p) => write!(f, "prime: {p}"),
            Verdict::NotMaximal(e) => write!(f, "not-maximal: {e}"),
        }
    }
}

/// Result of a full engine run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl Outcome {
    pub fn is_prime(&self) -> bool {
        matches!(self.verdict, Verdict::Prime(_))
    }
}
