//! Vanishing ideals of grids, grid powers, punctured grids and multigrids,
//! together with S-polynomials, the Buchberger criterion, completion and
//! normal forms.

use std::collections::VecDeque;

use serde::Serialize;

use crate::division::divide;
use crate::error::{Error, Result};
use crate::grid::{GridSpec, MultisetGridSpec, PuncturedGridSpec};
use crate::lacunary::{edge_product, vanishing_poly};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Grid,
    GridPower { t: u32 },
    Punctured,
    Multigrid,
    Completed,
    Given,
}

/// A generating set, remembering which orders it has been certified to be
/// a Gröbner basis for.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    generators: Vec<Polynomial>,
    provenance: Provenance,
    verified_for: Vec<MonomialOrder>,
}

impl IdealBasis {
    pub fn new(generators: Vec<Polynomial>, provenance: Provenance) -> Self {
        IdealBasis {
            generators,
            provenance,
            verified_for: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_verified(&self, order: MonomialOrder) -> bool {
        self.verified_for.contains(&order)
    }

    pub fn verified_orders(&self) -> &[MonomialOrder] {
        &self.verified_for
    }

    /// Runs the Buchberger criterion and records a pass.
    pub fn verify(&mut self, order: MonomialOrder) -> Result<bool> {
        let ok = buchberger_criterion(&self.generators, order)?;
        if ok && !self.is_verified(order) {
            self.verified_for.push(order);
        }
        Ok(ok)
    }

    /// [`IdealBasis::verify`], failing with `BasisNotVerified` on a miss.
    pub fn verified(mut self, order: MonomialOrder) -> Result<Self> {
        if self.verify(order)? {
            Ok(self)
        } else {
            Err(Error::BasisNotVerified(format!("criterion fails under {order}")))
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        self.generators.first().map(Polynomial::nvars)
    }
}

/// `{g_1, …, g_n}` with `g_i = ∏_{a ∈ S_i} (x_i − a)`.
pub fn grid_basis(x: &GridSpec) -> Result<IdealBasis> {
    let n = x.nvars();
    let gens = x
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| vanishing_poly(e, n, i))
        .collect::<Result<_>>()?;
    Ok(IdealBasis::new(gens, Provenance::Grid))
}

/// All `β ∈ ℕ₀ⁿ` with `Σ β_i = t`, first coordinate descending:
/// for n = 2, t = 2 this is (2,0), (1,1), (0,2).
pub fn compositions(t: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(left - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(t, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `G^t = {g_1^{β_1} ⋯ g_n^{β_n} : Σ β_i = t}`.
pub fn grid_power_basis(x: &GridSpec, t: u32) -> Result<IdealBasis> {
    if t == 0 {
        return Err(Error::Invalid("grid power needs t ≥ 1".into()));
    }
    let base = grid_basis(x)?;
    let (field, n) = (x.field(), x.nvars());
    let gens = compositions(t, n)
        .into_iter()
        .map(|beta| {
            beta.iter()
                .zip(base.generators())
                .fold(Polynomial::one(field, n), |acc, (&b, g)| &acc * &g.pow(b))
        })
        .collect();
    Ok(IdealBasis::new(gens, Provenance::GridPower { t }))
}

/// `{g_1, …, g_n, ∏ g_i / l_i}` where `l_i` vanishes on `Y_i`.
pub fn punctured_basis(p: &PuncturedGridSpec) -> Result<IdealBasis> {
    let n = p.nvars();
    let mut gens = grid_basis(p.x())?.generators;
    let mut prod = Polynomial::one(p.field(), n);
    for (i, y) in p.y().iter().enumerate() {
        let l = edge_product(y, n, i)?;
        prod = &prod * &gens[i].exact_quotient_univariate(&l, i)?;
    }
    gens.push(prod);
    Ok(IdealBasis::new(gens, Provenance::Punctured))
}

/// `{g_i = ∏_u (x_i − u)^{S_i(u)}}`.
pub fn multigrid_basis(s: &MultisetGridSpec) -> Result<IdealBasis> {
    let n = s.nvars();
    let gens = s
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| vanishing_poly(e, n, i))
        .collect::<Result<_>>()?;
    Ok(IdealBasis::new(gens, Provenance::Multigrid))
}

/// `S(f, g) = (L / Lt(f))·f − (L / Lt(g))·g` with `L = lcm(Lm f, Lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
    if !f.same_ring(g) {
        return Err(Error::RingMismatch);
    }
    let lf = f.leading(order)?;
    let lg = g.leading(order)?;
    let l = lf.exponent.lcm(&lg.exponent);
    let a = f.mul_term(&lf.coefficient.inv()?, &lf.exponent.quotient_of(&l).expect("lcm"));
    let b = g.mul_term(&lg.coefficient.inv()?, &lg.exponent.quotient_of(&l).expect("lcm"));
    Ok(&a - &b)
}

/// True iff every pairwise S-polynomial reduces to zero by `gens`. All pairs
/// are reduced, including those with coprime leading monomials.
pub fn buchberger_criterion(gens: &[Polynomial], order: MonomialOrder) -> Result<bool> {
    if gens.is_empty() {
        return Err(Error::EmptyDivisorList);
    }
    if gens.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroDivisor);
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let s = s_polynomial(&gens[i], &gens[j], order)?;
            if !divide(&s, gens, order)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Buchberger's algorithm with the coprime-lead skip. The result is monic
/// and minimal (no leading monomial divides another).
pub fn buchberger_complete(input: &[Polynomial], order: MonomialOrder) -> Result<IdealBasis> {
    let first = input.first().ok_or(Error::EmptyDivisorList)?;
    if input.iter().any(|f| !f.same_ring(first)) {
        return Err(Error::RingMismatch);
    }
    let mut basis: Vec<Polynomial> = input.iter().filter(|f| !f.is_zero()).map(|f| f.monic(order)).collect();
    if basis.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let (field, n) = (first.field(), first.nvars());
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let li = basis[i].leading_exponent(order)?;
        let lj = basis[j].leading_exponent(order)?;
        if li.is_coprime(&lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = divide(&s, &basis, order)?.remainder;
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        if r.degree().finite() == Some(0) {
            let mut one = IdealBasis::new(vec![Polynomial::one(field, n)], Provenance::Completed);
            one.verified_for = MonomialOrder::ALL.to_vec();
            return Ok(one);
        }
        let k = basis.len();
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    // drop generators whose leading monomial is divisible by another's
    let leads: Vec<_> = basis.iter().map(|g| g.leading_exponent(order)).collect::<Result<_>>()?;
    let mut keep = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && lj.divides(&leads[i]) && (lj != &leads[i] || j < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    if keep.iter().any(|g| g.degree().finite() == Some(0)) {
        keep = vec![Polynomial::one(field, n)];
    }
    let mut out = IdealBasis::new(keep, Provenance::Completed);
    out.verified_for.push(order);
    Ok(out)
}

/// Remainder of `f` modulo a basis certified for `order`; zero iff `f` lies
/// in the ideal.
pub fn normal_form(f: &Polynomial, basis: &IdealBasis, order: MonomialOrder) -> Result<Polynomial> {
    if !basis.is_verified(order) {
        return Err(Error::BasisNotVerified(format!(
            "basis has not been checked under {order}"
        )));
    }
    Ok(divide(f, &basis.generators, order)?.remainder)
}
