//! Admissible monomial orderings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExponentVector;

/// An admissible ordering of `ℕ₀ⁿ`. Variables are ranked `x1 > x2 > … > xn`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// First differing exponent decides.
    Lex,
    /// Total degree, ties broken by lex.
    #[default]
    #[serde(rename = "grlex")]
    GrLex,
    /// Total degree; on ties the monomial whose *rightmost* differing
    /// exponent is smaller is the larger one. Worked example: `(1,2,0)`
    /// and `(2,0,1)` both have degree 3 and differ last at x3 where
    /// `0 < 1`, so `x1*x2^2 > x1^2*x3` under grevlex, while lex and grlex
    /// order them the other way round.
    #[serde(rename = "grevlex")]
    GrevLex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex];

    /// Compares two exponent vectors of the same arity.
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let lex = || a.entries().cmp(b.entries());
        match self {
            MonomialOrder::Lex => lex(),
            MonomialOrder::GrLex => a.total_degree().cmp(&b.total_degree()).then_with(lex),
            MonomialOrder::GrevLex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                for (x, y) in a.entries().iter().zip(b.entries()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// [`MonomialOrder::cmp`] with an arity check.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        check_arity(a, b)?;
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        }
    }

    /// Whether a smaller total degree always means a smaller monomial.
    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }
}

fn check_arity(a: &ExponentVector, b: &ExponentVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Whether `x^a` divides `x^b`.
pub fn divides(a: &ExponentVector, b: &ExponentVector) -> Result<bool> {
    check_arity(a, b)?;
    Ok(a.divides(b))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" | "deglex" => Ok(MonomialOrder::GrLex),
            "grevlex" | "degrevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(Error::Invalid(format!("unknown monomial order {other:?}"))),
        }
    }
}
