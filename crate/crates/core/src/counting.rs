//! Staircases of vanishing ideals and nonzero counting: Clark's formula,
//! the monomial Alon–Füredi bound, the punctured-grid bounds from the sets
//! `A` and `B`, and polynomials attaining the punctured bound.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::division::divide;
use crate::error::{Error, Result};
use crate::grid::{decode_index, GridSpec, PuncturedGridSpec};
use crate::ideals::{buchberger_complete, grid_basis, normal_form, punctured_basis, IdealBasis};
use crate::order::MonomialOrder;
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::{Field, Scalar};

/// `⨉[0, a_i) ∖ ⨉[a_i − b_i, a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxDifference {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl BoxDifference {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if let Some(i) = (0..a.len()).find(|&i| b[i] > a[i]) {
            return Err(Error::Invalid(format!(
                "puncture side {} exceeds box side {} in x{}",
                b[i],
                a[i],
                i + 1
            )));
        }
        Ok(BoxDifference { a, b })
    }

    pub fn len(&self) -> u64 {
        let outer: u64 = self.a.iter().map(|&x| x as u64).product();
        let inner: u64 = self.b.iter().map(|&x| x as u64).product();
        outer - inner
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, alpha: &ExponentVector) -> bool {
        alpha.len() == self.a.len()
            && (0..self.a.len()).all(|i| alpha.get(i) < self.a[i])
            && (0..self.a.len()).any(|i| alpha.get(i) < self.a[i] - self.b[i])
    }

    pub fn enumerate(&self) -> BTreeSet<ExponentVector> {
        box_points(&self.a).filter(|v| self.contains(v)).collect()
    }
}

fn box_points(sides: &[u32]) -> impl Iterator<Item = ExponentVector> + '_ {
    let sizes: Vec<usize> = sides.iter().map(|&s| s as usize).collect();
    let total: usize = if sizes.is_empty() { 0 } else { sizes.iter().product() };
    (0..total).map(move |idx| {
        ExponentVector::from(
            decode_index(idx, &sizes)
                .into_iter()
                .map(|k| k as u32)
                .collect::<Vec<_>>(),
        )
    })
}

/// A finite set of exponents, held explicitly, symbolically, or both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseRegion {
    explicit: Option<BTreeSet<ExponentVector>>,
    symbolic: Option<BoxDifference>,
}

impl StaircaseRegion {
    pub fn explicit(set: BTreeSet<ExponentVector>) -> Self {
        StaircaseRegion {
            explicit: Some(set),
            symbolic: None,
        }
    }

    pub fn symbolic(region: BoxDifference) -> Self {
        StaircaseRegion {
            explicit: None,
            symbolic: Some(region),
        }
    }

    /// Attaches a symbolic form, failing if it describes a different set.
    pub fn with_symbolic(mut self, region: BoxDifference) -> Result<Self> {
        if let Some(set) = &self.explicit {
            if *set != region.enumerate() {
                return Err(Error::Invalid("explicit and symbolic staircase forms disagree".into()));
            }
        }
        self.symbolic = Some(region);
        Ok(self)
    }

    pub fn explicit_set(&self) -> Option<&BTreeSet<ExponentVector>> {
        self.explicit.as_ref()
    }

    pub fn symbolic_form(&self) -> Option<&BoxDifference> {
        self.symbolic.as_ref()
    }

    pub fn len(&self) -> u64 {
        match (&self.explicit, &self.symbolic) {
            (Some(set), _) => set.len() as u64,
            (None, Some(b)) => b.len(),
            (None, None) => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, alpha: &ExponentVector) -> bool {
        match (&self.explicit, &self.symbolic) {
            (Some(set), _) => set.contains(alpha),
            (None, Some(b)) => b.contains(alpha),
            (None, None) => false,
        }
    }

    pub fn elements(&self) -> BTreeSet<ExponentVector> {
        match (&self.explicit, &self.symbolic) {
            (Some(set), _) => set.clone(),
            (None, Some(b)) => b.enumerate(),
            (None, None) => BTreeSet::new(),
        }
    }
}

/// Exponents in the box `⨉[0, a_i)` divisible by no leading monomial of
/// `basis` under `order`.
pub fn cofilter(basis: &IdealBasis, order: MonomialOrder, sides: &[u32]) -> Result<StaircaseRegion> {
    if !basis.is_verified(order) {
        return Err(Error::BasisNotVerified(format!(
            "basis has not been checked under {order}"
        )));
    }
    let leads: Vec<ExponentVector> = basis
        .generators()
        .iter()
        .map(|g| g.leading_exponent(order))
        .collect::<Result<_>>()?;
    if let Some(n) = basis.nvars() {
        if n != sides.len() {
            return Err(Error::ArityMismatch {
                expected: n,
                found: sides.len(),
            });
        }
    }
    for (i, &side) in sides.iter().enumerate() {
        let pure = leads
            .iter()
            .filter(|mu| (0..mu.len()).all(|j| j == i || mu.get(j) == 0))
            .map(|mu| mu.get(i))
            .min();
        match pure {
            None => return Err(Error::UnboundedStaircase { var: i + 1 }),
            Some(k) if k > side => return Err(Error::BoxTooSmall { var: i + 1, side }),
            Some(_) => {}
        }
    }
    Ok(StaircaseRegion::explicit(
        box_points(sides)
            .filter(|alpha| !leads.iter().any(|mu| mu.divides(alpha)))
            .collect(),
    ))
}

/// An explicit finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    nvars: usize,
    points: Vec<Vec<Scalar>>,
}

impl PointSet {
    /// Duplicates are dropped; order of first appearance is kept.
    pub fn new(field: Field, nvars: usize, points: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: p.len(),
                });
            }
            if p.iter().any(|c| c.field() != field) {
                return Err(Error::MixedFields);
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(PointSet {
            field,
            nvars,
            points: out,
        })
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    /// The smallest grid containing the set.
    pub fn bounding_grid(&self) -> Result<GridSpec> {
        let edges = (0..self.nvars)
            .map(|i| {
                let mut coords: Vec<Scalar> = Vec::new();
                for p in &self.points {
                    if !coords.contains(&p[i]) {
                        coords.push(p[i].clone());
                    }
                }
                crate::grid::EdgeSet::new(self.field, coords)
            })
            .collect::<Result<_>>()?;
        GridSpec::new(self.field, edges)
    }
}

/// A finite set to count nonzeros on.
#[derive(Clone, Copy, Debug)]
pub enum CountDomain<'a> {
    Grid(&'a GridSpec),
    Punctured(&'a PuncturedGridSpec),
    Points(&'a PointSet),
}

impl CountDomain<'_> {
    pub fn field(&self) -> Field {
        match self {
            CountDomain::Grid(g) => g.field(),
            CountDomain::Punctured(p) => p.field(),
            CountDomain::Points(s) => s.field,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            CountDomain::Grid(g) => g.nvars(),
            CountDomain::Punctured(p) => p.nvars(),
            CountDomain::Points(s) => s.nvars,
        }
    }

    /// Box sides containing the staircase of the vanishing ideal.
    fn sides(&self) -> Result<Vec<u32>> {
        let sizes = match self {
            CountDomain::Grid(g) => g.sizes(),
            CountDomain::Punctured(p) => p.a(),
            CountDomain::Points(s) => s.bounding_grid()?.sizes(),
        };
        Ok(sizes.into_iter().map(|s| s as u32).collect())
    }

    fn for_each_point(&self, mut visit: impl FnMut(&[Scalar]) -> Result<()>) -> Result<()> {
        match self {
            CountDomain::Grid(g) => g.points().try_for_each(|p| visit(&p)),
            CountDomain::Punctured(p) => p.points().try_for_each(|q| visit(&q)),
            CountDomain::Points(s) => s.points.iter().try_for_each(|p| visit(p)),
        }
    }
}

fn indicator(grid: &GridSpec, q: &[Scalar]) -> Polynomial {
    let n = grid.nvars();
    let mut f = Polynomial::one(grid.field(), n);
    for (i, edge) in grid.edges().iter().enumerate() {
        for a in edge.elements().iter().filter(|a| *a != &q[i]) {
            let lin = &Polynomial::variable(grid.field(), n, i) - &Polynomial::constant(grid.field(), n, a.clone());
            f = &f * &lin;
        }
    }
    f
}

/// A basis of `I(X)` certified for `order`. Explicit point sets use the
/// bounding grid's generators plus the grid indicators of the missing
/// points, completed; the ideal contains separable univariate polynomials
/// in every variable, so it is radical and equals `I(X)`.
pub fn vanishing_ideal(domain: CountDomain<'_>, order: MonomialOrder) -> Result<IdealBasis> {
    match domain {
        CountDomain::Grid(g) => grid_basis(g)?.verified(order),
        CountDomain::Punctured(p) => punctured_basis(p)?.verified(order),
        CountDomain::Points(s) => {
            let grid = s.bounding_grid()?;
            let mut gens = grid_basis(&grid)?.generators().to_vec();
            gens.extend(
                grid.points()
                    .filter(|q| !s.points.contains(q))
                    .map(|q| indicator(&grid, &q)),
            );
            buchberger_complete(&gens, order)
        }
    }
}

fn check_ring(domain: &CountDomain<'_>, f: &Polynomial) -> Result<()> {
    if f.field() != domain.field() {
        return Err(Error::MixedFields);
    }
    if f.nvars() != domain.nvars() {
        return Err(Error::ArityMismatch {
            expected: domain.nvars(),
            found: f.nvars(),
        });
    }
    Ok(())
}

/// `|X ∖ V(f)|` by exhaustive evaluation.
pub fn count_nonzeros(domain: CountDomain<'_>, f: &Polynomial) -> Result<u64> {
    check_ring(&domain, f)?;
    let mut count = 0;
    domain.for_each_point(|p| {
        if !f.evaluate(p)?.is_zero() {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// `|X ∖ V(f)| = |∇(I(X))| − |∇(I(X) + ⟨f⟩)|`, both staircases read off
/// Gröbner bases. Members of `I(X)` short-circuit to 0.
pub fn clark_count(domain: CountDomain<'_>, f: &Polynomial) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_ring(&domain, f)?;
    let order = MonomialOrder::GrLex;
    let ideal = vanishing_ideal(domain, order)?;
    if normal_form(f, &ideal, order)?.is_zero() {
        return Ok(0);
    }
    let sides = domain.sides()?;
    let whole = cofilter(&ideal, order, &sides)?.len();
    let mut gens = ideal.generators().to_vec();
    gens.push(f.clone());
    let with_f = buchberger_complete(&gens, order)?;
    Ok(whole - cofilter(&with_f, order, &sides)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialBound {
    pub bound: u64,
    pub lead: ExponentVector,
    /// Whether `g ∈ I(X) + ⟨f⟩`, when `f` was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
}

/// `|∇(I(X)) ∩ Δ({Lm g})|`, a lower bound on `|X ∖ V(f)|` whenever
/// `g ∈ I(X) + ⟨f⟩`. Membership is only checked when `f` is given.
pub fn af_monomial_bound(
    domain: CountDomain<'_>,
    g: &Polynomial,
    order: MonomialOrder,
    f: Option<&Polynomial>,
) -> Result<MonomialBound> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_ring(&domain, g)?;
    let ideal = vanishing_ideal(domain, order)?;
    let lead = g.leading_exponent(order)?;
    let region = cofilter(&ideal, order, &domain.sides()?)?;
    let bound = region.elements().iter().filter(|a| lead.divides(a)).count() as u64;
    let member = match f {
        None => None,
        Some(f) => {
            check_ring(&domain, f)?;
            let mut gens = ideal.generators().to_vec();
            gens.push(f.clone());
            let sum = buchberger_complete(&gens, order)?;
            Some(normal_form(g, &sum, order)?.is_zero())
        }
    };
    Ok(MonomialBound { bound, lead, member })
}

/// `∏(a_i − e_i) − ∏ min(b_i, a_i − e_i)` for `e_i < a_i`.
pub fn afcp_closed_form(a: &[u32], b: &[u32], e: &[u32]) -> Result<u64> {
    if a.len() != b.len() || a.len() != e.len() {
        return Err(Error::ArityMismatch {
            expected: a.len(),
            found: if a.len() != b.len() { b.len() } else { e.len() },
        });
    }
    if let Some(i) = (0..a.len()).find(|&i| e[i] >= a[i]) {
        return Err(Error::InfeasibleE {
            var: i + 1,
            e: e[i],
            limit: a[i] as usize,
        });
    }
    Ok(y_value(
        &a.iter().zip(e).map(|(&ai, &ei)| ai - ei).collect::<Vec<_>>(),
        b,
    ))
}

/// `∏ y_i − ∏ min(y_i, b_i)`.
fn y_value(y: &[u32], b: &[u32]) -> u64 {
    let outer: u64 = y.iter().map(|&v| v as u64).product();
    let inner: u64 = y.iter().zip(b).map(|(&v, &bi)| v.min(bi) as u64).product();
    outer - inner
}

/// One of the candidate sets `A`, `B` together with its minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    /// Leading exponent the bound is derived from (of the remainder for `A`,
    /// of `f` for `B`); absent when the remainder is zero.
    pub e: Option<Vec<u32>>,
    pub candidates: Vec<Vec<u32>>,
    pub minimizer: Option<Vec<u32>>,
    pub bound: Option<u64>,
}

impl BoundSpec {
    fn from_candidates(a: Vec<u32>, b: Vec<u32>, e: Option<Vec<u32>>, candidates: Vec<Vec<u32>>) -> Self {
        let minimizer = candidates.iter().min_by_key(|y| y_value(y, &b)).cloned();
        let bound = minimizer.as_ref().map(|y| y_value(y, &b));
        BoundSpec {
            a,
            b,
            e,
            candidates,
            minimizer,
            bound,
        }
    }
}

fn sides_u32(p: &PuncturedGridSpec) -> (Vec<u32>, Vec<u32>) {
    (
        p.a().into_iter().map(|s| s as u32).collect(),
        p.b().into_iter().map(|s| s as u32).collect(),
    )
}

/// `y ∈ ⨉[lo_i, a_i]` in enumeration order.
fn y_box(lo: &[u32], a: &[u32]) -> Vec<Vec<u32>> {
    let sides: Vec<u32> = lo.iter().zip(a).map(|(&l, &h)| (h + 1).saturating_sub(l)).collect();
    box_points(&sides)
        .map(|v| v.entries().iter().zip(lo).map(|(&k, &l)| k + l).collect())
        .collect()
}

fn check_punctured_ring(p: &PuncturedGridSpec, f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_ring(&CountDomain::Punctured(p), f)
}

/// The set `A = {y : 1 ≤ y_i ≤ a_i, ∃i y_i > b_i, Σy_i ≥ Σa_i − deg f}`
/// and its minimum.
pub fn bound_a(p: &PuncturedGridSpec, f: &Polynomial) -> Result<BoundSpec> {
    check_punctured_ring(p, f)?;
    let (a, b) = sides_u32(p);
    let deg = f.degree().finite().unwrap_or(0) as i64;
    let target = a.iter().map(|&x| x as i64).sum::<i64>() - deg;
    let candidates = y_box(&vec![1; a.len()], &a)
        .into_iter()
        .filter(|y| (0..a.len()).any(|i| y[i] > b[i]))
        .filter(|y| y.iter().map(|&v| v as i64).sum::<i64>() >= target)
        .collect();
    let order = MonomialOrder::GrLex;
    let basis = punctured_basis(p)?;
    let r = divide(f, basis.generators(), order)?.remainder;
    let e = if r.is_zero() {
        None
    } else {
        Some(r.leading_exponent(order)?.entries().to_vec())
    };
    Ok(BoundSpec::from_candidates(a, b, e, candidates))
}

/// The set `B = {y : a_i − deg_{x_i} f ≤ y_i ≤ a_i, Σy_i = Σa_i − deg f}`
/// and its minimum; needs `deg_{x_i} f < a_i` for every `i`.
pub fn bound_b(p: &PuncturedGridSpec, f: &Polynomial) -> Result<BoundSpec> {
    check_punctured_ring(p, f)?;
    let (a, b) = sides_u32(p);
    let mut lo = Vec::with_capacity(a.len());
    for (i, &ai) in a.iter().enumerate() {
        let d = f.degree_in(i).finite().unwrap_or(0);
        if d >= ai {
            return Err(Error::DegreeTooLarge {
                var: i + 1,
                degree: d,
                side: ai as usize,
            });
        }
        lo.push(ai - d);
    }
    let deg = f.degree().finite().unwrap_or(0) as i64;
    let target = a.iter().map(|&x| x as i64).sum::<i64>() - deg;
    let candidates = y_box(&lo, &a)
        .into_iter()
        .filter(|y| y.iter().map(|&v| v as i64).sum::<i64>() == target)
        .collect();
    let e = f.leading_exponent(MonomialOrder::GrLex)?.entries().to_vec();
    Ok(BoundSpec::from_candidates(a, b, Some(e), candidates))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuncturedBounds {
    pub bound_a: Option<u64>,
    pub bound_b: Option<u64>,
    /// Whether `deg_{x_i} f < a_i` holds for all `i`.
    pub part2_applicable: bool,
    /// `P ∖ V(f) = ∅`, i.e. `f` reduces to zero modulo `I(P)`. The bounds
    /// are only claimed when this is false.
    pub empty: bool,
    pub a_set: BoundSpec,
    pub b_set: Option<BoundSpec>,
}

/// Both punctured-grid bounds. `bound_b` is `None` (with
/// `part2_applicable = false`) when some `deg_{x_i} f ≥ a_i`.
pub fn af_punctured_bounds(p: &PuncturedGridSpec, f: &Polynomial) -> Result<PuncturedBounds> {
    let a_set = bound_a(p, f)?;
    let b_set = match bound_b(p, f) {
        Ok(spec) => Some(spec),
        Err(Error::DegreeTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PuncturedBounds {
        bound_a: a_set.bound,
        bound_b: b_set.as_ref().and_then(|s| s.bound),
        part2_applicable: b_set.is_some(),
        empty: a_set.e.is_none(),
        a_set,
        b_set,
    })
}

/// A polynomial attaining the punctured bound for a given leading exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpInstance {
    pub polynomial: Polynomial,
    /// Root sets `E_i`, as strings.
    pub roots: Vec<Vec<String>>,
    pub expected: u64,
}

/// `f = ∏_i ∏_{c ∈ E_i} (x_i − c)` with `|E_i| = e_i`, taking `E_i` inside
/// `X_i ∖ Y_i` when `e_i ≤ a_i − b_i` and otherwise all of `X_i ∖ Y_i`
/// filled up from `Y_i`. Requires `e_i ∈ [0, a_i − 1)`.
pub fn sharpness_construction(p: &PuncturedGridSpec, e: &[u32]) -> Result<SharpInstance> {
    if e.len() != p.nvars() {
        return Err(Error::ArityMismatch {
            expected: p.nvars(),
            found: e.len(),
        });
    }
    let a = p.a();
    if let Some(i) = (0..a.len()).find(|&i| e[i] as usize + 1 >= a[i]) {
        return Err(Error::InfeasibleE {
            var: i + 1,
            e: e[i],
            limit: a[i] - 1,
        });
    }
    build_sharp(p, e)
}

fn build_sharp(p: &PuncturedGridSpec, e: &[u32]) -> Result<SharpInstance> {
    let (field, n) = (p.field(), p.nvars());
    let mut f = Polynomial::one(field, n);
    let mut roots = Vec::with_capacity(n);
    for (i, x) in p.x().edges().iter().enumerate() {
        let y = &p.y()[i];
        let mut pool: Vec<&Scalar> = x.elements().iter().filter(|c| !y.contains(c)).collect();
        pool.extend(y.elements());
        let chosen = &pool[..e[i] as usize];
        for c in chosen {
            let lin = &Polynomial::variable(field, n, i) - &Polynomial::constant(field, n, (*c).clone());
            f = &f * &lin;
        }
        roots.push(chosen.iter().map(|c| c.to_string()).collect());
    }
    let (a, b) = sides_u32(p);
    Ok(SharpInstance {
        polynomial: f,
        roots,
        expected: afcp_closed_form(&a, &b, e)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, field: Field, n: usize, max_exp: u32, terms: usize) -> Polynomial {
        let p = field.modulus().map_or(7, |m| m as i64);
        Polynomial::from_terms(
            field,
            n,
            (0..rng.gen_range(1..=terms)).map(|_| {
                (
                    field.from_i64(rng.gen_range(1..p)),
                    ExponentVector::from((0..n).map(|_| rng.gen_range(0..=max_exp)).collect::<Vec<_>>()),
                )
            }),
        )
        .unwrap()
    }

    fn random_nonzero(rng: &mut ChaCha8Rng, field: Field, n: usize, max_exp: u32, terms: usize) -> Polynomial {
        loop {
            let f = random_poly(rng, field, n, max_exp, terms);
            if !f.is_zero() {
                return f;
            }
        }
    }

    fn random_punctured(rng: &mut ChaCha8Rng, field: Field, n: usize, max_side: usize) -> PuncturedGridSpec {
        let p = field.modulus().unwrap() as i64;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for _ in 0..n {
            let mut all: Vec<i64> = (0..p).collect();
            for k in (1..all.len()).rev() {
                all.swap(k, rng.gen_range(0..=k));
            }
            let a = rng.gen_range(1..=max_side.min(p as usize));
            let b = rng.gen_range(0..=a);
            xs.push(all[..a].to_vec());
            ys.push(all[..b].to_vec());
        }
        let xr: Vec<&[i64]> = xs.iter().map(Vec::as_slice).collect();
        let yr: Vec<&[i64]> = ys.iter().map(Vec::as_slice).collect();
        PuncturedGridSpec::from_i64(field, &xr, &yr).unwrap()
    }

    #[test]
    fn cofilter_examples() {
        let q = Field::Rationals;
        let grid = GridSpec::from_i64(q, &[&[0, 1], &[0, 1, 2]]).unwrap();
        let basis = grid_basis(&grid).unwrap().verified(MonomialOrder::GrLex).unwrap();
        assert_eq!(cofilter(&basis, MonomialOrder::GrLex, &[2, 3]).unwrap().len(), 6);
        assert_eq!(
            cofilter(&basis, MonomialOrder::GrLex, &[1, 3]),
            Err(Error::BoxTooSmall { var: 1, side: 1 })
        );
        let unverified = grid_basis(&grid).unwrap();
        assert!(matches!(
            cofilter(&unverified, MonomialOrder::GrLex, &[2, 3]),
            Err(Error::BasisNotVerified(_))
        ));

        let f5 = gf(5);
        let p = PuncturedGridSpec::from_i64(f5, &[&[0, 1, 2], &[0, 1, 2]], &[&[0], &[0]]).unwrap();
        let basis = punctured_basis(&p).unwrap().verified(MonomialOrder::GrLex).unwrap();
        let region = cofilter(&basis, MonomialOrder::GrLex, &[3, 3]).unwrap();
        assert_eq!(region.len(), 8);
        let region = region
            .with_symbolic(BoxDifference::new(vec![3, 3], vec![1, 1]).unwrap())
            .unwrap();
        assert!(region.contains(&ExponentVector::new(&[2, 1])));
        assert!(!region.contains(&ExponentVector::new(&[2, 2])));

        let one = IdealBasis::new(vec![Polynomial::one(f5, 2)], crate::ideals::Provenance::Given)
            .verified(MonomialOrder::GrLex)
            .unwrap();
        assert!(cofilter(&one, MonomialOrder::GrLex, &[3, 3]).unwrap().is_empty());

        let x1 = IdealBasis::new(
            vec![parse_polynomial("x1^2", f5, 2).unwrap()],
            crate::ideals::Provenance::Given,
        )
        .verified(MonomialOrder::GrLex)
        .unwrap();
        assert_eq!(
            cofilter(&x1, MonomialOrder::GrLex, &[3, 3]),
            Err(Error::UnboundedStaircase { var: 2 })
        );
    }

    #[test]
    fn punctured_cofilter_is_a_box_difference() {
        let f = gf(7);
        let values: Vec<i64> = (0..5).collect();
        for n in 1..=3usize {
            let sides: Vec<usize> = vec![6; n];
            let total: usize = sides.iter().product();
            for idx in 0..total {
                let a: Vec<usize> = decode_index(idx, &sides);
                if a.contains(&0) {
                    continue;
                }
                let bsides: Vec<usize> = a.iter().map(|&x| x + 1).collect();
                for bidx in 0..bsides.iter().product::<usize>() {
                    let b = decode_index(bidx, &bsides);
                    let xs: Vec<&[i64]> = a.iter().map(|&k| &values[..k]).collect();
                    let ys: Vec<&[i64]> = b.iter().map(|&k| &values[..k]).collect();
                    let p = PuncturedGridSpec::from_i64(f, &xs, &ys).unwrap();
                    let basis = punctured_basis(&p).unwrap().verified(MonomialOrder::GrLex).unwrap();
                    let au: Vec<u32> = a.iter().map(|&k| k as u32).collect();
                    let bu: Vec<u32> = b.iter().map(|&k| k as u32).collect();
                    let region = cofilter(&basis, MonomialOrder::GrLex, &au).unwrap();
                    let sym = BoxDifference::new(au, bu).unwrap();
                    assert_eq!(region.elements(), sym.enumerate());
                    assert_eq!(region.len(), p.len() as u64);
                }
            }
            if n == 2 {
                // n = 3 with a_i ≤ 5 is covered by the acceptance suite
                break;
            }
        }
    }

    #[test]
    fn clark_examples() {
        let f2 = gf(2);
        let grid = GridSpec::from_i64(f2, &[&[0, 1], &[0, 1]]).unwrap();
        let x1 = parse_polynomial("x1", f2, 2).unwrap();
        assert_eq!(clark_count(CountDomain::Grid(&grid), &x1).unwrap(), 2);
        let one = Polynomial::one(f2, 2);
        assert_eq!(clark_count(CountDomain::Grid(&grid), &one).unwrap(), 4);
        let prod = &parse_polynomial("x1^2 + x1", f2, 2).unwrap() * &parse_polynomial("x2^2 + x2", f2, 2).unwrap();
        assert_eq!(clark_count(CountDomain::Grid(&grid), &prod).unwrap(), 0);
        assert_eq!(
            clark_count(CountDomain::Grid(&grid), &Polynomial::zero(f2, 2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn clark_matches_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for k in 0..120 {
            let field = gf([2, 3, 5, 7][rng.gen_range(0..4)]);
            let n = rng.gen_range(1..=3);
            let p = random_punctured(&mut rng, field, n, 3);
            let f = random_nonzero(&mut rng, field, n, 3, 4);
            let domain = if k % 3 == 0 {
                CountDomain::Grid(p.x())
            } else {
                CountDomain::Punctured(&p)
            };
            if domain.nvars() > 0 && matches!(domain, CountDomain::Punctured(q) if q.is_empty()) {
                continue;
            }
            assert_eq!(
                clark_count(domain, &f).unwrap(),
                count_nonzeros(domain, &f).unwrap(),
                "{f:?}"
            );
        }
    }

    #[test]
    fn clark_on_point_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..40 {
            let field = gf(5);
            let n = rng.gen_range(1..=2);
            let pts: Vec<Vec<Scalar>> = (0..rng.gen_range(1..6))
                .map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(0..5))).collect())
                .collect();
            let set = PointSet::new(field, n, pts).unwrap();
            let f = random_nonzero(&mut rng, field, n, 3, 3);
            let ideal = vanishing_ideal(CountDomain::Points(&set), MonomialOrder::GrLex).unwrap();
            let sides: Vec<u32> = set.bounding_grid().unwrap().sizes().iter().map(|&s| s as u32).collect();
            assert_eq!(
                cofilter(&ideal, MonomialOrder::GrLex, &sides).unwrap().len(),
                set.points().len() as u64
            );
            assert_eq!(
                clark_count(CountDomain::Points(&set), &f).unwrap(),
                count_nonzeros(CountDomain::Points(&set), &f).unwrap()
            );
        }
    }

    #[test]
    fn monomial_bound_examples() {
        let f5 = gf(5);
        let p = PuncturedGridSpec::from_i64(f5, &[&[0, 1, 2, 3], &[0, 1, 2, 3]], &[&[0, 1], &[0, 1]]).unwrap();
        let one = Polynomial::one(f5, 2);
        let b = af_monomial_bound(CountDomain::Punctured(&p), &one, MonomialOrder::GrLex, None).unwrap();
        assert_eq!(b.bound, 12);
        let g = parse_polynomial("x1*x2 + 3", f5, 2).unwrap();
        let b = af_monomial_bound(CountDomain::Punctured(&p), &g, MonomialOrder::GrLex, Some(&g)).unwrap();
        assert_eq!(b.bound, 5);
        assert_eq!(b.bound, afcp_closed_form(&[4, 4], &[2, 2], &[1, 1]).unwrap());
        assert_eq!(b.member, Some(true));
        assert!(b.bound <= count_nonzeros(CountDomain::Punctured(&p), &g).unwrap());
    }

    #[test]
    fn monomial_bound_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let n = rng.gen_range(1..=2);
            let p = random_punctured(&mut rng, gf(7), n, 5);
            let a: Vec<u32> = p.a().iter().map(|&s| s as u32).collect();
            let b: Vec<u32> = p.b().iter().map(|&s| s as u32).collect();
            let e: Vec<u32> = a.iter().map(|&ai| rng.gen_range(0..ai)).collect();
            let g = Polynomial::monomial(gf(7), n, gf(7).one(), ExponentVector::from(e.clone()));
            let bound = af_monomial_bound(CountDomain::Punctured(&p), &g, MonomialOrder::GrLex, None).unwrap();
            assert_eq!(bound.bound, afcp_closed_form(&a, &b, &e).unwrap());
        }
    }

    #[test]
    fn punctured_bound_examples() {
        let f5 = gf(5);
        let all: &[i64] = &[0, 1, 2, 3, 4];
        let p = PuncturedGridSpec::from_i64(f5, &[all, all], &[&[0, 1], &[0, 1]]).unwrap();
        let f = parse_polynomial("x1*x2", f5, 2).unwrap();
        let bounds = af_punctured_bounds(&p, &f).unwrap();
        let b = bounds.b_set.as_ref().unwrap();
        assert_eq!(b.candidates, vec![vec![4, 4]]);
        assert_eq!(bounds.bound_b, Some(12));
        assert_eq!(count_nonzeros(CountDomain::Punctured(&p), &f).unwrap(), 15);
        assert!(bounds.bound_a.unwrap() <= 15);
        assert!(!bounds.empty);

        // no puncture: min ∏ y_i, over Σy ≥ 8 for A and y = (4,4) for B
        let q = PuncturedGridSpec::from_i64(f5, &[all, all], &[&[], &[]]).unwrap();
        let bounds = af_punctured_bounds(&q, &f).unwrap();
        assert_eq!(bounds.bound_a, Some(15));
        assert_eq!(bounds.a_set.minimizer, Some(vec![3, 5]));
        assert_eq!(bounds.bound_b, Some(16));

        let big = parse_polynomial("x1^5 + 1", f5, 2).unwrap();
        let bounds = af_punctured_bounds(&p, &big).unwrap();
        assert!(!bounds.part2_applicable);
        assert_eq!(bounds.bound_b, None);
        assert!(matches!(
            bound_b(&p, &big),
            Err(Error::DegreeTooLarge {
                var: 1,
                degree: 5,
                side: 5
            })
        ));

        let member = parse_polynomial("x1^5 - x1", f5, 2).unwrap();
        assert!(af_punctured_bounds(&p, &member).unwrap().empty);
    }

    #[test]
    fn punctured_bounds_are_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let mut checked = 0;
        while checked < 150 {
            let field = gf([3, 5, 7][rng.gen_range(0..3)]);
            let n = rng.gen_range(1..=3);
            let p = random_punctured(&mut rng, field, n, 4);
            if p.is_empty() {
                continue;
            }
            let f = random_nonzero(&mut rng, field, n, 3, 4);
            let actual = count_nonzeros(CountDomain::Punctured(&p), &f).unwrap();
            let bounds = af_punctured_bounds(&p, &f).unwrap();
            assert_eq!(bounds.empty, actual == 0);
            if actual == 0 {
                continue;
            }
            checked += 1;
            assert!(bounds.bound_a.unwrap() <= actual);
            if let Some(b) = bounds.bound_b {
                assert!(b <= actual);
            }
            // the remainder's exponent yields a member of A
            let (a, _) = sides_u32(&p);
            let e = bounds.a_set.e.clone().unwrap();
            let y: Vec<u32> = (0..n).map(|i| a[i] - e[i]).collect();
            assert!(bounds.a_set.candidates.contains(&y));
        }
    }

    #[test]
    fn sharpness_examples() {
        let f5 = gf(5);
        let x: &[i64] = &[0, 1, 2, 3];
        let p = PuncturedGridSpec::from_i64(f5, &[x, x], &[&[0, 1], &[0, 1]]).unwrap();
        let s = sharpness_construction(&p, &[1, 1]).unwrap();
        assert_eq!(
            s.polynomial,
            parse_polynomial("x1*x2 - 2*x1 - 2*x2 + 4", f5, 2).unwrap()
        );
        assert_eq!(s.expected, 5);
        assert_eq!(count_nonzeros(CountDomain::Punctured(&p), &s.polynomial).unwrap(), 5);
        let s = sharpness_construction(&p, &[0, 0]).unwrap();
        assert_eq!(s.polynomial, Polynomial::one(f5, 2));
        assert_eq!(s.expected, p.len() as u64);
        assert_eq!(
            sharpness_construction(&p, &[3, 0]),
            Err(Error::InfeasibleE { var: 1, e: 3, limit: 3 })
        );
        let open = PuncturedGridSpec::from_i64(f5, &[x, x], &[&[], &[]]).unwrap();
        let s = sharpness_construction(&open, &[2, 1]).unwrap();
        assert_eq!(s.expected, 2 * 3);
    }

    #[test]
    fn sharpness_holds_up_to_the_last_exponent() {
        // the construction also attains the bound at e_i = a_i − 1
        let f7 = gf(7);
        let x: &[i64] = &[0, 1, 2, 3];
        for b in 0..=4usize {
            let p = PuncturedGridSpec::from_i64(f7, &[x], &[&x[..b]]).unwrap();
            for e in 0..4 {
                let s = build_sharp(&p, &[e]).unwrap();
                assert_eq!(
                    s.polynomial.leading_exponent(MonomialOrder::Lex).unwrap(),
                    ExponentVector::new(&[e])
                );
                assert_eq!(
                    count_nonzeros(CountDomain::Punctured(&p), &s.polynomial).unwrap(),
                    s.expected
                );
            }
        }
    }
}
