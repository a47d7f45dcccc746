//! Sparse multivariate polynomials over a [`Field`].
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients. The
//! map never stores zero coefficients, so the stored keys are exactly
//! `Supp(f)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::scalar::{Field, Scalar};

/// Exponent vector `α ∈ ℕ₀ⁿ` of the monomial `x^α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(SmallVec<[u32; 4]>);

impl ExponentVector {
    pub fn new(entries: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(entries))
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, n))
    }

    /// `x_var^power`.
    pub fn unit(n: usize, var: usize, power: u32) -> Self {
        let mut e = Self::zeros(n);
        e.0[var] = power;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self ⊑ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other - self` when `self ⊑ other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector(
            other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// No variable occurs in both monomials.
    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is `x_i^k` with `k > 0`, returns `(i, k)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(ExponentVector::from)
    }
}

/// Total degree with `deg(0) = −∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `c · x^α` with `c ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Scalar,
    pub exponent: ExponentVector,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, nvars, c, ExponentVector::zeros(nvars))
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn monomial(field: Field, nvars: usize, c: Scalar, exponent: ExponentVector) -> Self {
        assert_eq!(exponent.len(), nvars, "exponent arity");
        assert_eq!(c.field(), field, "coefficient field");
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The variable `x_var` (0-based).
    pub fn variable(field: Field, nvars: usize, var: usize) -> Self {
        Self::monomial(field, nvars, field.one(), ExponentVector::unit(nvars, var, 1))
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(field: Field, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, ExponentVector)>,
    {
        let mut p = Self::zero(field, nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(field: Field, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(c, e)| (field.from_i64(*c), ExponentVector::new(e))),
        )
        .expect("well-formed terms")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    /// `Supp(f)`.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn contains(&self, exponent: &ExponentVector) -> bool {
        self.terms.contains_key(exponent)
    }

    /// Coefficient of `x^exponent`, zero when absent.
    pub fn coefficient(&self, exponent: &ExponentVector) -> Scalar {
        self.terms.get(exponent).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars
    }

    fn add_term(&mut self, c: Scalar, e: ExponentVector) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(-c, e.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(c1 * c2, e1.add(e2));
            }
        }
        Ok(out)
    }

    /// `c · x^shift · self`.
    pub fn mul_term(&self, c: &Scalar, shift: &ExponentVector) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, coeff) in &self.terms {
            out.terms.insert(e.add(shift), coeff * c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_term(c, &ExponentVector::zeros(self.nvars))
    }

    /// `self -= c · x^shift · g`, in place.
    pub(crate) fn sub_scaled_shifted(&mut self, c: &Scalar, shift: &ExponentVector, g: &Self) {
        for (e, coeff) in &g.terms {
            self.add_term(-(coeff * c), e.add(shift));
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the leading coefficient's inverse.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            Ok(t) => self.scale(&t.coefficient.inv().expect("nonzero leading coefficient")),
            Err(_) => self.clone(),
        }
    }

    /// The leading term with respect to `order`.
    pub fn leading(&self, order: MonomialOrder) -> Result<Term> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(e, c)| Term {
                coefficient: c.clone(),
                exponent: e.clone(),
            })
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_exponent(&self, order: MonomialOrder) -> Result<ExponentVector> {
        self.leading(order).map(|t| t.exponent)
    }

    /// Total degree, `−∞` for zero.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// `deg_{x_var}(f)`.
    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|e| e.get(var))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Total degree followed by the degree in each variable.
    pub fn degrees(&self) -> (Degree, Vec<Degree>) {
        (self.degree(), (0..self.nvars).map(|i| self.degree_in(i)).collect())
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::total_degree).min()
    }

    fn check_point(&self, point: &[Scalar]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if point.iter().any(|c| c.field() != self.field) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// `f(point)`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point)?;
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                if k > 0 {
                    v = &v * &x.pow(k);
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// `f(x + c)`, substituting `x_i ↦ x_i + c_i` one variable at a time by
    /// Horner's scheme in that variable.
    pub fn taylor_shift(&self, c: &[Scalar]) -> Result<Self> {
        self.check_point(c)?;
        let mut current = self.clone();
        for (var, ci) in c.iter().enumerate() {
            if ci.is_zero() || current.is_zero() {
                continue;
            }
            // group by the power of x_var: f = Σ_k f_k x_var^k
            let mut slices: BTreeMap<u32, Polynomial> = BTreeMap::new();
            for (e, coeff) in &current.terms {
                let k = e.get(var);
                let mut rest = e.clone();
                rest.0[var] = 0;
                slices
                    .entry(k)
                    .or_insert_with(|| Polynomial::zero(self.field, self.nvars))
                    .add_term(coeff.clone(), rest);
            }
            let top = *slices.keys().next_back().expect("nonzero");
            let shifted_var = &Polynomial::variable(self.field, self.nvars, var)
                + &Polynomial::constant(self.field, self.nvars, ci.clone());
            let mut acc = Polynomial::zero(self.field, self.nvars);
            for k in (0..=top).rev() {
                acc = &acc * &shifted_var;
                if let Some(s) = slices.get(&k) {
                    acc = &acc + s;
                }
            }
            current = acc;
        }
        Ok(current)
    }

    /// True when only `x_var` occurs.
    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.entries().iter().enumerate().all(|(i, &k)| i == var || k == 0))
    }

    /// Exact quotient `self / g` of two polynomials in `x_var` alone.
    pub fn exact_quotient_univariate(&self, g: &Self, var: usize) -> Result<Self> {
        self.check_ring(g)?;
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if !self.is_univariate_in(var) || !g.is_univariate_in(var) {
            return Err(Error::NotUnivariate(var));
        }
        let lead_g = g.leading(MonomialOrder::Lex)?;
        let lead_inv = lead_g.coefficient.inv()?;
        let dg = lead_g.exponent.get(var);
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.field, self.nvars);
        while let Ok(lead) = rem.leading(MonomialOrder::Lex) {
            let dr = lead.exponent.get(var);
            if dr < dg {
                return Err(Error::InexactDivision);
            }
            let c = &lead.coefficient * &lead_inv;
            let shift = ExponentVector::unit(self.nvars, var, dr - dg);
            rem.sub_scaled_shifted(&c, &shift, g);
            quotient.add_term(c, shift);
        }
        Ok(quotient)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&ExponentVector, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }
}

impl fmt::Display for Polynomial {
    /// Writes the text grammar accepted by [`crate::parse::parse_polynomial`],
    /// terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms(MonomialOrder::GrLex).into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{} | {}]({})", self.field, self.nvars, self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::prime(5).unwrap()),
            Just(Field::prime(11).unwrap()),
            Just(Field::Rationals),
        ]
    }

    fn poly_in(field: Field, n: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-6i64..6, prop::collection::vec(0u32..4, n)), 0..6).prop_map(move |terms| {
            Polynomial::from_terms(
                field,
                n,
                terms
                    .into_iter()
                    .map(|(c, e)| (field.from_i64(c), ExponentVector::from(e))),
            )
            .unwrap()
        })
    }

    fn point_in(field: Field, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
        prop::collection::vec(-7i64..7, n).prop_map(move |v| v.into_iter().map(|x| field.from_i64(x)).collect())
    }

    fn setup() -> impl Strategy<Value = (Polynomial, Polynomial, Vec<Scalar>)> {
        (field_strategy(), 1usize..4)
            .prop_flat_map(|(field, n)| (poly_in(field, n), poly_in(field, n), point_in(field, n)))
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative((f, g, pt) in setup()) {
            let fg = &f * &g;
            prop_assert_eq!(
                fg.evaluate(&pt).unwrap(),
                &f.evaluate(&pt).unwrap() * &g.evaluate(&pt).unwrap()
            );
        }

        #[test]
        fn shift_round_trip((f, _g, c) in setup()) {
            let back: Vec<Scalar> = c.iter().map(|x| -x).collect();
            let shifted = f.taylor_shift(&c).unwrap();
            prop_assert_eq!(shifted.taylor_shift(&back).unwrap(), f.clone());
            // f(x + c) at 0 is f(c)
            let zero = vec![f.field().zero(); f.nvars()];
            prop_assert_eq!(shifted.evaluate(&zero).unwrap(), f.evaluate(&c).unwrap());
        }

        #[test]
        fn support_of_sum((f, g, _pt) in setup()) {
            let s = &f + &g;
            for e in s.support() {
                prop_assert!(f.contains(e) || g.contains(e));
            }
        }
    }
}
