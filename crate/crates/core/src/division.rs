//! Multivariate division producing natural standard expressions
//!
//! `f = Σ_j c_j x^{δ_j} g_{i_j} + r`, recorded one term per step. Each step
//! cancels a monomial that is actually present in the running polynomial
//! (the leading monomial of `c_j x^{δ_j} g_{i_j}` is in the running
//! polynomial before the step and gone after it), and no monomial of `r` is
//! divisible by a leading monomial of a divisor.
//!
//! [`verify_natural`] replays a trace from scratch and does not share any
//! code path with [`divide`] beyond polynomial arithmetic.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::Scalar;

/// One reduction `running -= coefficient · x^shift · divisors[divisor]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionStep {
    pub coefficient: Scalar,
    pub shift: ExponentVector,
    pub divisor: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisionTrace {
    pub dividend: Polynomial,
    pub divisors: Vec<Polynomial>,
    pub steps: Vec<DivisionStep>,
    pub remainder: Polynomial,
    pub order: MonomialOrder,
}

/// Which reducible monomial a division step attacks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialChoice {
    #[default]
    Greatest,
    Least,
}

/// Which divisor is used when several leading monomials divide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DivisorChoice {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// Reduction strategy. The default reduces the greatest reducible monomial
/// using the lowest-index divisor; every strategy yields a natural
/// standard expression, possibly a different one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Strategy {
    pub monomial: MonomialChoice,
    pub divisor: DivisorChoice,
}

fn validate_divisors(f: &Polynomial, divisors: &[Polynomial]) -> Result<()> {
    if divisors.is_empty() {
        return Err(Error::EmptyDivisorList);
    }
    for g in divisors {
        if !g.same_ring(f) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
    }
    Ok(())
}

/// Divides `f` by the ordered list `divisors` with the default strategy.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Result<DivisionTrace> {
    divide_with(f, divisors, order, Strategy::default())
}

pub fn divide_with(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
    strategy: Strategy,
) -> Result<DivisionTrace> {
    validate_divisors(f, divisors)?;
    let leads: Vec<_> = divisors.iter().map(|g| g.leading(order)).collect::<Result<_>>()?;
    let lead_inv: Vec<Scalar> = leads.iter().map(|t| t.coefficient.inv()).collect::<Result<_>>()?;

    let mut running = f.clone();
    let mut steps = Vec::new();
    loop {
        let mut candidates: Vec<(&ExponentVector, &Scalar)> = running.terms().collect();
        candidates.sort_by(|a, b| match strategy.monomial {
            MonomialChoice::Greatest => order.cmp(b.0, a.0),
            MonomialChoice::Least => order.cmp(a.0, b.0),
        });
        let pick = candidates.into_iter().find_map(|(e, c)| {
            let mut hits = leads.iter().enumerate().filter(|(_, t)| t.exponent.divides(e));
            let hit = match strategy.divisor {
                DivisorChoice::LowestIndex => hits.next(),
                DivisorChoice::HighestIndex => hits.next_back(),
            };
            hit.map(|(i, t)| (i, t.exponent.quotient_of(e).expect("divides"), c.clone()))
        });
        let Some((index, shift, c)) = pick else { break };
        let coefficient = &c * &lead_inv[index];
        running.sub_scaled_shifted(&coefficient, &shift, &divisors[index]);
        steps.push(DivisionStep {
            coefficient,
            shift,
            divisor: index,
        });
    }

    Ok(DivisionTrace {
        dividend: f.clone(),
        divisors: divisors.to_vec(),
        steps,
        remainder: running,
        order,
    })
}

impl DivisionTrace {
    /// Collected quotients `h_i = Σ_{j : i_j = i} c_j x^{δ_j}`.
    pub fn quotients(&self) -> Vec<Polynomial> {
        let (field, n) = (self.dividend.field(), self.dividend.nvars());
        let mut out = vec![Polynomial::zero(field, n); self.divisors.len()];
        for s in &self.steps {
            let term = Polynomial::monomial(field, n, s.coefficient.clone(), s.shift.clone());
            out[s.divisor] = &out[s.divisor] + &term;
        }
        out
    }

    /// `Σ_j c_j x^{δ_j} g_{i_j} + r`.
    pub fn reconstruct(&self) -> Polynomial {
        let mut acc = self.remainder.clone();
        for s in &self.steps {
            acc = &acc + &self.divisors[s.divisor].mul_term(&s.coefficient, &s.shift);
        }
        acc
    }
}

/// The clause a trace violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaturalViolation {
    RingMismatch,
    EmptyDivisorList,
    ZeroDivisor {
        divisor: usize,
    },
    BadDivisorIndex {
        step: usize,
    },
    ZeroCoefficient {
        step: usize,
    },
    /// The leading monomial of the step is not in the running polynomial.
    LeadingNotPresent {
        step: usize,
    },
    /// The step does not remove its leading monomial.
    LeadingNotCancelled {
        step: usize,
    },
    /// `f ≠ Σ c_j x^{δ_j} g_j + r`.
    Reconstruction,
    /// A monomial of `r` is divisible by the leading monomial of a divisor.
    ReducibleRemainder {
        exponent: ExponentVector,
        divisor: usize,
    },
}

impl fmt::Display for NaturalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaturalViolation::RingMismatch => write!(f, "ring mismatch"),
            NaturalViolation::EmptyDivisorList => write!(f, "no divisors"),
            NaturalViolation::ZeroDivisor { divisor } => write!(f, "divisor {divisor} is zero"),
            NaturalViolation::BadDivisorIndex { step } => {
                write!(f, "step {step} names a missing divisor")
            }
            NaturalViolation::ZeroCoefficient { step } => {
                write!(f, "step {step} has a zero coefficient")
            }
            NaturalViolation::LeadingNotPresent { step } => {
                write!(f, "step {step}: leading monomial absent from the running polynomial")
            }
            NaturalViolation::LeadingNotCancelled { step } => {
                write!(f, "step {step}: leading monomial survives the subtraction")
            }
            NaturalViolation::Reconstruction => write!(f, "reconstruction identity fails"),
            NaturalViolation::ReducibleRemainder { exponent, divisor } => write!(
                f,
                "remainder monomial {exponent} is divisible by Lm of divisor {divisor}"
            ),
        }
    }
}

/// Replays `trace` and reports the first violated clause.
pub fn check_natural(trace: &DivisionTrace) -> std::result::Result<(), NaturalViolation> {
    let f = &trace.dividend;
    if trace.divisors.is_empty() {
        return Err(NaturalViolation::EmptyDivisorList);
    }
    if !trace.remainder.same_ring(f) || trace.divisors.iter().any(|g| !g.same_ring(f)) {
        return Err(NaturalViolation::RingMismatch);
    }
    if let Some(i) = trace.divisors.iter().position(Polynomial::is_zero) {
        return Err(NaturalViolation::ZeroDivisor { divisor: i });
    }
    let mut running = f.clone();
    for (j, step) in trace.steps.iter().enumerate() {
        let g = trace
            .divisors
            .get(step.divisor)
            .ok_or(NaturalViolation::BadDivisorIndex { step: j })?;
        if step.coefficient.is_zero() {
            return Err(NaturalViolation::ZeroCoefficient { step: j });
        }
        if step.shift.len() != f.nvars() {
            return Err(NaturalViolation::RingMismatch);
        }
        let product = g.mul_term(&step.coefficient, &step.shift);
        let lead = product.leading_exponent(trace.order).expect("nonzero product");
        if !running.contains(&lead) {
            return Err(NaturalViolation::LeadingNotPresent { step: j });
        }
        running = &running - &product;
        if running.contains(&lead) {
            return Err(NaturalViolation::LeadingNotCancelled { step: j });
        }
    }
    if running != trace.remainder {
        return Err(NaturalViolation::Reconstruction);
    }
    for e in trace.remainder.support() {
        for (i, g) in trace.divisors.iter().enumerate() {
            let lm = g.leading_exponent(trace.order).expect("nonzero divisor");
            if lm.divides(e) {
                return Err(NaturalViolation::ReducibleRemainder {
                    exponent: e.clone(),
                    divisor: i,
                });
            }
        }
    }
    Ok(())
}

/// True iff `trace` is a natural standard expression.
pub fn verify_natural(trace: &DivisionTrace) -> bool {
    check_natural(trace).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::scalar::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, field: Field, n: usize) -> Polynomial {
        parse_polynomial(text, field, n).unwrap()
    }

    #[test]
    fn worked_example_gives_one_step() {
        let q = Field::Rationals;
        let f = p("2*x1^2*x2 + x1", q, 2);
        let g = vec![p("x1*x2", q, 2), p("x1^2", q, 2)];
        let t = divide(&f, &g, MonomialOrder::GrLex).unwrap();
        assert_eq!(
            t.steps,
            vec![DivisionStep {
                coefficient: q.from_i64(2),
                shift: ExponentVector::new(&[1, 0]),
                divisor: 0,
            }]
        );
        assert_eq!(t.remainder, p("x1", q, 2));
        assert!(verify_natural(&t));
    }

    #[test]
    fn non_natural_representation_is_rejected() {
        // f = x*g1 + y*g2 + x is a standard representation, not a natural one
        let q = Field::Rationals;
        let f = p("2*x1^2*x2 + x1", q, 2);
        let trace = DivisionTrace {
            dividend: f.clone(),
            divisors: vec![p("x1*x2", q, 2), p("x1^2", q, 2)],
            steps: vec![
                DivisionStep {
                    coefficient: q.one(),
                    shift: ExponentVector::new(&[1, 0]),
                    divisor: 0,
                },
                DivisionStep {
                    coefficient: q.one(),
                    shift: ExponentVector::new(&[0, 1]),
                    divisor: 1,
                },
            ],
            remainder: p("x1", q, 2),
            order: MonomialOrder::GrLex,
        };
        assert_eq!(trace.reconstruct(), f);
        assert_eq!(
            check_natural(&trace),
            Err(NaturalViolation::LeadingNotCancelled { step: 0 })
        );
        assert!(!verify_natural(&trace));
    }

    #[test]
    fn corrupted_remainder_is_rejected() {
        let q = Field::Rationals;
        let mut t = divide(
            &p("2*x1^2*x2 + x1", q, 2),
            &[p("x1*x2", q, 2), p("x1^2", q, 2)],
            MonomialOrder::GrLex,
        )
        .unwrap();
        t.remainder = p("x1 + 1", q, 2);
        assert_eq!(check_natural(&t), Err(NaturalViolation::Reconstruction));
    }

    #[test]
    fn irreducible_dividend_is_untouched() {
        let q = Field::Rationals;
        let t = divide(&p("x1", q, 1), &[p("x1^2", q, 1)], MonomialOrder::GrLex).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.remainder, p("x1", q, 1));
    }

    #[test]
    fn grid_generator_reduces_to_zero() {
        let f2 = Field::prime(2).unwrap();
        let g = p("x1^2 + x1", f2, 1);
        let t = divide(&g, std::slice::from_ref(&g), MonomialOrder::GrLex).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(t.remainder.is_zero());
    }

    #[test]
    fn input_errors() {
        let q = Field::Rationals;
        let f = p("x1", q, 1);
        assert_eq!(
            divide(&f, &[Polynomial::zero(q, 1)], MonomialOrder::Lex),
            Err(Error::ZeroDivisor)
        );
        assert_eq!(
            divide(&f, &[p("x1", q, 2)], MonomialOrder::Lex),
            Err(Error::RingMismatch)
        );
        assert_eq!(divide(&f, &[], MonomialOrder::Lex), Err(Error::EmptyDivisorList));
    }

    fn random_poly(rng: &mut ChaCha8Rng, field: Field, n: usize, max_terms: usize) -> Polynomial {
        let k = rng.gen_range(1..=max_terms);
        Polynomial::from_terms(
            field,
            n,
            (0..k).map(|_| {
                (
                    field.from_i64(rng.gen_range(-5..=5)),
                    ExponentVector::from((0..n).map(|_| rng.gen_range(0..4)).collect::<Vec<_>>()),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn every_strategy_produces_natural_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let strategies = [
            Strategy::default(),
            Strategy {
                monomial: MonomialChoice::Least,
                divisor: DivisorChoice::HighestIndex,
            },
            Strategy {
                monomial: MonomialChoice::Greatest,
                divisor: DivisorChoice::HighestIndex,
            },
        ];
        for _ in 0..200 {
            let field = [Field::prime(5).unwrap(), Field::Rationals][rng.gen_range(0..2)];
            let n = rng.gen_range(1..=3);
            let f = random_poly(&mut rng, field, n, 8);
            let divisors: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| random_poly(&mut rng, field, n, 3))
                .filter(|g| !g.is_zero())
                .collect();
            if divisors.is_empty() {
                continue;
            }
            for order in MonomialOrder::ALL {
                for s in strategies {
                    let t = divide_with(&f, &divisors, order, s).unwrap();
                    assert_eq!(check_natural(&t), Ok(()), "{f:?} / {divisors:?} {s:?}");
                    assert_eq!(t.reconstruct(), f);
                    let again = divide(&t.remainder, &divisors, order).unwrap();
                    assert!(again.steps.is_empty());
                }
            }
        }
    }

    #[test]
    fn collected_quotients_reconstruct() {
        let q = Field::Rationals;
        let f = p("x1^3*x2 - 2*x1*x2^2 + 5", q, 2);
        let g = vec![p("x1^2 - x2", q, 2), p("x1*x2 - 1", q, 2)];
        let t = divide(&f, &g, MonomialOrder::Lex).unwrap();
        let h = t.quotients();
        let sum = &(&(&h[0] * &g[0]) + &(&h[1] * &g[1])) + &t.remainder;
        assert_eq!(sum, f);
    }
}
