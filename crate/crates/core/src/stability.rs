//! Shading and stable monomials with respect to a λ-lacunary divisor set.
//!
//! `x^γ` is (G, λ, α)-shading when
//! 1. `α ⊑ γ` and `α ≠ γ`,
//! 2. every `i` with `α_i < γ_i` has some `g ∈ G` with `Lm(g) | x^γ` and
//!    `deg_{x_i}(g) > 0`,
//! 3. every such `i` has `α_i + λ_i < γ_i`.
//!
//! `x^α` is (G, λ)-stable in `f` when `α ∈ Supp(f)`, no `Lm(g)` divides
//! `x^α`, and no monomial of `f` is (G, λ, α)-shading. Stable monomials
//! survive every natural division step with their coefficient intact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lacunary::{lacunary_witness, LacunarityVector};
use crate::order::MonomialOrder;
use crate::poly::{Degree, ExponentVector, Polynomial};

/// A λ-lacunary divisor set with its (order-independent) leading exponents.
#[derive(Clone, Debug)]
pub struct ShadingContext {
    divisors: Vec<Polynomial>,
    leads: Vec<ExponentVector>,
    lambda: LacunarityVector,
    order: MonomialOrder,
}

impl ShadingContext {
    pub fn new(divisors: Vec<Polynomial>, lambda: LacunarityVector, order: MonomialOrder) -> Result<Self> {
        let mut leads = Vec::with_capacity(divisors.len());
        for (index, g) in divisors.iter().enumerate() {
            match lacunary_witness(g, &lambda)? {
                Some(mu) => leads.push(mu),
                None => return Err(Error::DivisorNotLacunary { index }),
            }
        }
        if divisors.iter().any(|g| !g.same_ring(&divisors[0])) {
            return Err(Error::RingMismatch);
        }
        Ok(ShadingContext {
            divisors,
            leads,
            lambda,
            order,
        })
    }

    pub fn divisors(&self) -> &[Polynomial] {
        &self.divisors
    }

    pub fn lambda(&self) -> &LacunarityVector {
        &self.lambda
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leads(&self) -> &[ExponentVector] {
        &self.leads
    }

    fn check_arity(&self, v: &ExponentVector) -> Result<()> {
        if v.len() != self.lambda.len() {
            return Err(Error::ArityMismatch {
                expected: self.lambda.len(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Whether `x^γ` is (G, λ, α)-shading.
    pub fn is_shading(&self, gamma: &ExponentVector, alpha: &ExponentVector) -> Result<bool> {
        self.check_arity(gamma)?;
        self.check_arity(alpha)?;
        if !alpha.divides(gamma) || alpha == gamma {
            return Ok(false);
        }
        for i in 0..alpha.len() {
            let (a, c) = (alpha.get(i), gamma.get(i));
            if a >= c {
                continue;
            }
            let covered = self
                .divisors
                .iter()
                .zip(&self.leads)
                .any(|(g, mu)| mu.divides(gamma) && matches!(g.degree_in(i), Degree::Finite(d) if d > 0));
            if !covered || a as u64 + self.lambda.get(i) as u64 >= c as u64 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Stability of `x^α` in `f`; the report names the first failed clause.
    pub fn is_stable(&self, alpha: &ExponentVector, f: &Polynomial) -> Result<StabilityReport> {
        self.check_arity(alpha)?;
        if f.nvars() != alpha.len() {
            return Err(Error::ArityMismatch {
                expected: alpha.len(),
                found: f.nvars(),
            });
        }
        let violation = if !f.contains(alpha) {
            Some(StabilityViolation::NotInSupport)
        } else if let Some(divisor) = self.leads.iter().position(|mu| mu.divides(alpha)) {
            Some(StabilityViolation::LeadingMonomialDivides { divisor })
        } else {
            let mut found = None;
            for gamma in f.support() {
                if self.is_shading(gamma, alpha)? {
                    found = Some(StabilityViolation::ShadingMonomial { gamma: gamma.clone() });
                    break;
                }
            }
            found
        };
        Ok(StabilityReport {
            alpha: alpha.clone(),
            verdict: violation.is_none(),
            violation,
        })
    }

    /// All stable monomials of `f`.
    pub fn stable_monomials(&self, f: &Polynomial) -> Result<Vec<ExponentVector>> {
        let mut out = Vec::new();
        for alpha in f.support() {
            if self.is_stable(alpha, f)?.verdict {
                out.push(alpha.clone());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StabilityViolation {
    NotInSupport,
    LeadingMonomialDivides { divisor: usize },
    ShadingMonomial { gamma: ExponentVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub alpha: ExponentVector,
    pub verdict: bool,
    pub violation: Option<StabilityViolation>,
}

impl StabilityReport {
    /// Re-derives the recorded violation from raw data.
    pub fn recheck(&self, f: &Polynomial, ctx: &ShadingContext) -> Result<bool> {
        Ok(match &self.violation {
            None => ctx.is_stable(&self.alpha, f)?.verdict,
            Some(StabilityViolation::NotInSupport) => !f.contains(&self.alpha),
            Some(StabilityViolation::LeadingMonomialDivides { divisor }) => {
                ctx.leads.get(*divisor).is_some_and(|mu| mu.divides(&self.alpha))
            }
            Some(StabilityViolation::ShadingMonomial { gamma }) => {
                f.contains(gamma) && ctx.is_shading(gamma, &self.alpha)?
            }
        })
    }
}

/// Free-function form of [`ShadingContext::is_shading`].
pub fn is_shading(
    gamma: &ExponentVector,
    alpha: &ExponentVector,
    lambda: &LacunarityVector,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<bool> {
    ShadingContext::new(divisors.to_vec(), lambda.clone(), order)?.is_shading(gamma, alpha)
}

/// Free-function form of [`ShadingContext::is_stable`].
pub fn is_stable(
    alpha: &ExponentVector,
    f: &Polynomial,
    lambda: &LacunarityVector,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<StabilityReport> {
    ShadingContext::new(divisors.to_vec(), lambda.clone(), order)?.is_stable(alpha, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::{divide_with, DivisorChoice, MonomialChoice, Strategy};
    use crate::grid::EdgeSet;
    use crate::lacunary::{random_lacunary, vanishing_poly};
    use crate::scalar::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v)
    }

    fn roots_context() -> (Field, ShadingContext) {
        let f11 = Field::prime(11).unwrap();
        let e = EdgeSet::from_i64(f11, &[1, 3, 4, 5, 9]).unwrap();
        let g = vec![vanishing_poly(&e, 2, 0).unwrap(), vanishing_poly(&e, 2, 1).unwrap()];
        let ctx = ShadingContext::new(g, LacunarityVector::new(vec![4, 4]), MonomialOrder::GrLex).unwrap();
        (f11, ctx)
    }

    #[test]
    fn shading_examples() {
        let (_, ctx) = roots_context();
        let alpha = ev(&[2, 3]);
        assert!(!ctx.is_shading(&alpha, &alpha).unwrap());
        assert!(ctx.is_shading(&ev(&[7, 3]), &alpha).unwrap());
        assert!(!ctx.is_shading(&ev(&[6, 3]), &alpha).unwrap());
        // x1 raised but no divisor's Lm divides x^γ
        assert!(!ctx.is_shading(&ev(&[4, 3]), &ev(&[0, 3])).unwrap());
    }

    #[test]
    fn stability_examples() {
        let (f11, ctx) = roots_context();
        let f = crate::parse::parse_polynomial("x1^2*x2^3", f11, 2).unwrap();
        assert!(ctx.is_stable(&ev(&[2, 3]), &f).unwrap().verdict);
        let f = crate::parse::parse_polynomial("x1^2*x2^3 + x1^7*x2^3", f11, 2).unwrap();
        let r = ctx.is_stable(&ev(&[2, 3]), &f).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.violation,
            Some(StabilityViolation::ShadingMonomial { gamma: ev(&[7, 3]) })
        );
        assert!(r.recheck(&f, &ctx).unwrap());
        let r = ctx.is_stable(&ev(&[1, 1]), &f).unwrap();
        assert_eq!(r.violation, Some(StabilityViolation::NotInSupport));
        let f = crate::parse::parse_polynomial("x1^5*x2", f11, 2).unwrap();
        let r = ctx.is_stable(&ev(&[5, 1]), &f).unwrap();
        assert_eq!(
            r.violation,
            Some(StabilityViolation::LeadingMonomialDivides { divisor: 0 })
        );
        assert!(r.recheck(&f, &ctx).unwrap());
    }

    #[test]
    fn rejects_non_lacunary_divisors() {
        let q = Field::Rationals;
        let g = crate::parse::parse_polynomial("x1^2 + x1", q, 1).unwrap();
        assert_eq!(
            ShadingContext::new(vec![g], LacunarityVector::new(vec![1]), MonomialOrder::GrLex).err(),
            Some(Error::DivisorNotLacunary { index: 0 })
        );
    }

    #[test]
    fn stability_survives_arbitrary_steps_and_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f7 = Field::prime(7).unwrap();
        let mut checked = 0;
        while checked < 150 {
            let n = rng.gen_range(1..=2);
            let lambda = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..2)).collect());
            let g: Vec<_> = (0..rng.gen_range(1..=2))
                .map(|_| random_lacunary(&mut rng, f7, &lambda, 3, 3))
                .filter(|g| !g.degree().finite().is_some_and(|d| d == 0))
                .collect();
            if g.is_empty() {
                continue;
            }
            let ctx = ShadingContext::new(g.clone(), lambda.clone(), MonomialOrder::GrLex).unwrap();
            let f = random_lacunary(&mut rng, f7, &LacunarityVector::zeros(n), 6, 6);
            let Some(alpha) = ctx.stable_monomials(&f).unwrap().into_iter().next() else {
                continue;
            };
            checked += 1;
            // one arbitrary step with a random nonzero coefficient
            for (m, _) in f.terms() {
                for (k, mu) in ctx.leads().iter().enumerate() {
                    if let Some(delta) = mu.quotient_of(m) {
                        let c = f7.from_i64(rng.gen_range(1..7));
                        let h = &f - &g[k].mul_term(&c, &delta);
                        assert!(ctx.is_stable(&alpha, &h).unwrap().verdict);
                        assert_eq!(h.coefficient(&alpha), f.coefficient(&alpha));
                    }
                }
            }
            let strategy = Strategy {
                monomial: MonomialChoice::Least,
                divisor: DivisorChoice::HighestIndex,
            };
            let t = divide_with(&f, &g, MonomialOrder::GrLex, strategy).unwrap();
            assert_eq!(t.remainder.coefficient(&alpha), f.coefficient(&alpha));
        }
    }
}
