//! Random generators for λ-null grids and the twelve invariant suites run by
//! `nullgrid selftest` and the acceptance tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counting::{
    af_punctured_bounds, afcp_closed_form, clark_count, cofilter, count_nonzeros, sharpness_construction,
    BoxDifference, CountDomain,
};
use crate::division::{
    check_natural, divide, divide_with, DivisionStep, DivisionTrace, DivisorChoice, MonomialChoice, Strategy,
};
use crate::grid::{EdgeSet, GridSpec, MultisetEdge, MultisetGridSpec, PuncturedGridSpec};
use crate::ideals::{
    buchberger_criterion, grid_basis, grid_power_basis, multigrid_basis, normal_form, punctured_basis, IdealBasis,
};
use crate::lacunary::{is_lacunary, max_null_index, random_lacunary, LacunarityVector};
use crate::nullsatz::{
    check_cnv, check_cnv_mult, check_multiset, check_nica_mult, check_punctured, find_witness_with, tfold_multiplicity,
    CnvMode, Criterion, Domain, Multiplicity, NullCertificate, PuncturedMode,
};
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::{Field, Scalar};
use crate::stability::ShadingContext;

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn gf(p: u64) -> Field {
    Field::prime(p).expect("small prime")
}

fn primitive_root(field: Field) -> Scalar {
    let p = field.modulus().expect("prime field");
    (2..p as i64)
        .map(|g| field.from_i64(g))
        .find(|g| (1..p as u32 - 1).all(|k| g.pow(k) != field.one()))
        .unwrap_or_else(|| field.one())
}

/// The coset `a·H` of the subgroup of order `d` (which must divide p − 1).
pub fn coset(field: Field, a: &Scalar, d: u32) -> EdgeSet {
    let p = field.modulus().expect("prime field") as u32;
    let h = primitive_root(field).pow((p - 1) / d);
    EdgeSet::new(field, (0..d).map(|k| a * &h.pow(k)).collect()).expect("distinct coset elements")
}

fn nonzero(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    let p = field.modulus().expect("prime field") as i64;
    field.from_i64(rng.gen_range(1..p))
}

fn subgroup_orders(p: u64, max: usize) -> Vec<u32> {
    (1..p as u32)
        .filter(|d| (p as u32 - 1).is_multiple_of(*d) && *d as usize <= max)
        .collect()
}

/// A random edge of size at most `max`, built as a subgroup coset, a zero-sum
/// set or an arbitrary set, together with its largest null index.
pub fn random_null_edge(rng: &mut ChaCha8Rng, field: Field, max: usize) -> (EdgeSet, u32) {
    let p = field.modulus().expect("prime field") as i64;
    let edge = match rng.gen_range(0..3) {
        0 => {
            let orders = subgroup_orders(p as u64, max);
            let d = *orders.choose(rng).expect("order 1 always divides");
            coset(field, &nonzero(rng, field), d)
        }
        1 if max >= 2 && p >= 3 => loop {
            let k = rng.gen_range(2..=max.min(p as usize - 1));
            let mut vals: Vec<i64> = (0..p).collect();
            vals.shuffle(rng);
            let mut set: Vec<i64> = vals[..k - 1].to_vec();
            let last = (-set.iter().sum::<i64>()).rem_euclid(p);
            if !set.contains(&last) {
                set.push(last);
                break EdgeSet::from_i64(field, &set).expect("distinct");
            }
        },
        _ => {
            let k = rng.gen_range(1..=max.min(p as usize));
            let mut vals: Vec<i64> = (0..p).collect();
            vals.shuffle(rng);
            EdgeSet::from_i64(field, &vals[..k]).expect("distinct")
        }
    };
    let lambda = max_null_index(&edge).expect("nonempty edge");
    (edge, lambda)
}

/// A λ used for an edge with largest null index `max`: usually `max`
/// itself so the widest intervals are exercised.
fn pick_lambda(rng: &mut ChaCha8Rng, max: u32) -> u32 {
    if rng.gen_bool(0.7) {
        max
    } else {
        rng.gen_range(0..=max)
    }
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    gf(*PRIMES.choose(rng).expect("nonempty"))
}

/// A random grid with λ-null edges and the λ it was built for.
pub fn random_null_grid(rng: &mut ChaCha8Rng, field: Field, n: usize, max: usize) -> (GridSpec, LacunarityVector) {
    let mut edges = Vec::with_capacity(n);
    let mut lambda = Vec::with_capacity(n);
    for _ in 0..n {
        let (e, l) = random_null_edge(rng, field, max);
        edges.push(e);
        lambda.push(pick_lambda(rng, l));
    }
    (
        GridSpec::new(field, edges).expect("nonempty edges"),
        LacunarityVector::new(lambda),
    )
}

/// A punctured grid with `X_i`, `Y_i` both λ_i-null. `Y_i` is empty, a
/// coset of a smaller subgroup inside a coset `X_i`, or a random subset.
pub fn random_null_punctured(
    rng: &mut ChaCha8Rng,
    field: Field,
    n: usize,
    max: usize,
) -> (PuncturedGridSpec, LacunarityVector) {
    let p = field.modulus().expect("prime field");
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    let mut lambda = Vec::with_capacity(n);
    for _ in 0..n {
        let (x, y) = match rng.gen_range(0..3) {
            0 => {
                let (x, _) = random_null_edge(rng, field, max);
                (x, EdgeSet::new(field, vec![]).expect("empty"))
            }
            1 => {
                let orders = subgroup_orders(p, max);
                let d = *orders.choose(rng).expect("nonempty");
                let a = nonzero(rng, field);
                let x = coset(field, &a, d);
                let sub: Vec<u32> = (1..=d).filter(|k| d.is_multiple_of(*k)).collect();
                let k = *sub.choose(rng).expect("nonempty");
                let shift = x.elements()[rng.gen_range(0..x.len())].clone();
                (x, coset(field, &shift, k))
            }
            _ => {
                let (x, _) = random_null_edge(rng, field, max);
                let mut elems = x.elements().to_vec();
                elems.shuffle(rng);
                let b = rng.gen_range(0..=elems.len());
                elems.truncate(b);
                (x, EdgeSet::new(field, elems).expect("distinct"))
            }
        };
        let lx = max_null_index(&x).expect("nonempty");
        let ly = if y.is_empty() {
            lx
        } else {
            max_null_index(&y).expect("nonempty")
        };
        lambda.push(pick_lambda(rng, lx.min(ly)));
        xs.push(x);
        ys.push(y);
    }
    let x = GridSpec::new(field, xs).expect("nonempty edges");
    (
        PuncturedGridSpec::new(x, ys).expect("Y inside X"),
        LacunarityVector::new(lambda),
    )
}

/// A multigrid whose edges are null edges with random multiplicities.
pub fn random_null_multigrid(
    rng: &mut ChaCha8Rng,
    field: Field,
    n: usize,
    max: usize,
) -> (MultisetGridSpec, LacunarityVector) {
    let mut edges = Vec::with_capacity(n);
    let mut lambda = Vec::with_capacity(n);
    for _ in 0..n {
        let (e, _) = random_null_edge(rng, field, max);
        let uniform = rng.gen_bool(0.5);
        let m0 = rng.gen_range(1..=2);
        let entries = e
            .elements()
            .iter()
            .map(|c| (c.clone(), if uniform { m0 } else { rng.gen_range(1..=2) }))
            .collect();
        let edge = MultisetEdge::new(field, entries).expect("distinct");
        lambda.push(pick_lambda(rng, max_null_index(&edge).expect("nonempty")));
        edges.push(edge);
    }
    (
        MultisetGridSpec::new(field, edges).expect("nonempty"),
        LacunarityVector::new(lambda),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, field: Field, n: usize, max_exp: u32, terms: usize) -> Polynomial {
    loop {
        let f = Polynomial::from_terms(
            field,
            n,
            (0..rng.gen_range(1..=terms)).map(|_| {
                let c = match field.modulus() {
                    Some(_) => nonzero(rng, field),
                    None => field.from_i64(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }),
                };
                (
                    c,
                    ExponentVector::from((0..n).map(|_| rng.gen_range(0..=max_exp)).collect::<Vec<_>>()),
                )
            }),
        )
        .expect("same field");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

pub const TITLES: [&str; 12] = [
    "worked division example and non-natural rejection",
    "division soundness on random inputs",
    "Gröbner verification of grid, punctured and grid-power bases",
    "ideal membership agrees with vanishing",
    "nonvanishing theorems are sound",
    "structured grid theorem beats the interval and degree variants",
    "lacunary products and cofactors",
    "stable monomials survive division",
    "Clark's formula agrees with evaluation",
    "punctured staircase is a box difference",
    "punctured Alon-Füredi bounds",
    "sharpness construction attains the bound",
];

type Outcome = std::result::Result<(usize, String), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: crate::error::Error) -> String {
    format!("unexpected error: {e}")
}

fn c1_worked_example() -> Outcome {
    let q = Field::Rationals;
    let p = |s: &str| parse_polynomial(s, q, 2).map_err(err);
    let f = p("2*x1^2*x2 + x1")?;
    let g = vec![p("x1*x2")?, p("x1^2")?];
    let t = divide(&f, &g, MonomialOrder::GrLex).map_err(err)?;
    let expected = vec![DivisionStep {
        coefficient: q.from_i64(2),
        shift: ExponentVector::new(&[1, 0]),
        divisor: 0,
    }];
    ensure!(t.steps == expected, "steps {:?}", t.steps);
    ensure!(t.remainder == p("x1")?, "remainder {}", t.remainder);
    ensure!(check_natural(&t).is_ok(), "trace not natural");
    // f = x1·g1 + x2·g2 + x1 reconstructs f but is not natural
    let other = DivisionTrace {
        dividend: f.clone(),
        divisors: g,
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
        remainder: p("x1")?,
        order: MonomialOrder::GrLex,
    };
    ensure!(other.reconstruct() == f, "alternative does not reconstruct");
    ensure!(check_natural(&other).is_err(), "alternative accepted as natural");
    Ok((2, "f = 2*x1*(x1*x2) + x1; alternative rejected".into()))
}

fn c2_division(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [gf(5), gf(11), Field::Rationals];
    let strategies = [
        Strategy::default(),
        Strategy {
            monomial: MonomialChoice::Least,
            divisor: DivisorChoice::HighestIndex,
        },
    ];
    for k in 0..1000 {
        let field = fields[k % 3];
        let n = rng.gen_range(1..=3);
        let order = MonomialOrder::ALL[rng.gen_range(0..3)];
        let f = random_poly(&mut rng, field, n, 5, 8);
        let g: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(&mut rng, field, n, 3, 3))
            .collect();
        let t = divide_with(&f, &g, order, strategies[k % 2]).map_err(err)?;
        ensure!(t.reconstruct() == f, "reconstruction fails for {f} by {g:?}");
        for e in t.remainder.support() {
            for gi in &g {
                let lm = gi.leading_exponent(order).map_err(err)?;
                ensure!(!lm.divides(e), "remainder monomial {e} divisible by {lm}");
            }
        }
        ensure!(check_natural(&t).is_ok(), "trace not natural for {f}");
    }
    Ok((1000, "reconstruction exact, remainders irreducible".into()))
}

fn c3_groebner(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..25 {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (grid, _) = random_null_grid(&mut rng, field, n, 4);
        let (punct, _) = random_null_punctured(&mut rng, field, n, 4);
        let mut bases = vec![grid_basis(&grid).map_err(err)?, punctured_basis(&punct).map_err(err)?];
        for t in 1..=3 {
            let small = random_null_grid(&mut rng, field, n, 3).0;
            bases.push(grid_power_basis(&small, t).map_err(err)?);
        }
        for b in &bases {
            for order in MonomialOrder::ALL {
                ensure!(
                    buchberger_criterion(b.generators(), order).map_err(err)?,
                    "{:?} basis fails under {order}: {:?}",
                    b.provenance(),
                    b.generators()
                );
                checked += 1;
            }
        }
    }
    Ok((checked, "all bases pass under lex, grlex and grevlex".into()))
}

/// A polynomial in the ideal plus, half the time, a small perturbation.
fn near_member(rng: &mut ChaCha8Rng, basis: &IdealBasis, field: Field, n: usize) -> Polynomial {
    let mut f = Polynomial::zero(field, n);
    for g in basis.generators() {
        if rng.gen_bool(0.6) {
            f = &f + &(&random_poly(rng, field, n, 2, 2) * g);
        }
    }
    if rng.gen_bool(0.5) {
        f = &f + &random_poly(rng, field, n, 2, 2);
    }
    f
}

fn shifted_has_mvec(f: &Polynomial, c: &[Scalar], m: &[u32]) -> bool {
    let shifted = f.taylor_shift(c).expect("arity");
    let ok = shifted
        .support()
        .all(|kappa| (0..m.len()).any(|i| kappa.get(i) >= m[i]));
    ok
}

fn c4_membership(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = MonomialOrder::GrLex;
    let mut members = [0usize; 4];
    for k in 0..800 {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let kind = k % 4;
        let (in_ideal, vanishes) = match kind {
            0 => {
                let (grid, _) = random_null_grid(&mut rng, field, n, 4);
                let basis = grid_basis(&grid).map_err(err)?.verified(order).map_err(err)?;
                let f = near_member(&mut rng, &basis, field, n);
                let nf = normal_form(&f, &basis, order).map_err(err)?;
                let v = grid
                    .points()
                    .all(|s| f.evaluate(&s).map(|x| x.is_zero()).unwrap_or(false));
                (nf.is_zero(), v)
            }
            1 => {
                let (p, _) = random_null_punctured(&mut rng, field, n, 4);
                let basis = punctured_basis(&p).map_err(err)?.verified(order).map_err(err)?;
                let f = near_member(&mut rng, &basis, field, n);
                let nf = normal_form(&f, &basis, order).map_err(err)?;
                let v = p.points().all(|s| f.evaluate(&s).map(|x| x.is_zero()).unwrap_or(false));
                (nf.is_zero(), v)
            }
            2 => {
                let (s, _) = random_null_multigrid(&mut rng, field, n, 3);
                let basis = multigrid_basis(&s).map_err(err)?.verified(order).map_err(err)?;
                let f = near_member(&mut rng, &basis, field, n);
                let nf = normal_form(&f, &basis, order).map_err(err)?;
                let v = s.points().all(|(c, m)| shifted_has_mvec(&f, &c, &m));
                (nf.is_zero(), v)
            }
            _ => {
                let t = rng.gen_range(1..=3);
                let n = n.min(2);
                let (grid, _) = random_null_grid(&mut rng, field, n, 3);
                let basis = grid_power_basis(&grid, t).map_err(err)?.verified(order).map_err(err)?;
                let f = near_member(&mut rng, &basis, field, n);
                let nf = normal_form(&f, &basis, order).map_err(err)?;
                let v = grid.points().all(|s| {
                    tfold_multiplicity(&f, &s)
                        .map(|m| m >= Multiplicity::Finite(t))
                        .unwrap_or(false)
                });
                (nf.is_zero(), v)
            }
        };
        ensure!(
            in_ideal == vanishes,
            "setting {kind}: normal form zero = {in_ideal}, vanishing = {vanishes}"
        );
        members[kind] += in_ideal as usize;
    }
    Ok((
        800,
        format!(
            "200 each of grid/punctured/multigrid/grid-power; members {}/{}/{}/{}",
            members[0], members[1], members[2], members[3]
        ),
    ))
}

/// Adds to `x^α` random terms that individually pass `covered`.
fn grow<F>(rng: &mut ChaCha8Rng, field: Field, alpha: &ExponentVector, span: &[u32], mut covered: F) -> Polynomial
where
    F: FnMut(&Polynomial) -> bool,
{
    let n = alpha.len();
    let mut f = Polynomial::monomial(field, n, nonzero(rng, field), alpha.clone());
    for _ in 0..rng.gen_range(0..=6) {
        let gamma = ExponentVector::from((0..n).map(|i| rng.gen_range(0..=span[i])).collect::<Vec<_>>());
        if &gamma == alpha || f.contains(&gamma) {
            continue;
        }
        let term = Polynomial::monomial(field, n, nonzero(rng, field), gamma);
        let pair = &Polynomial::monomial(field, n, field.one(), alpha.clone()) + &term;
        if covered(&pair) {
            f = &f + &term;
        }
    }
    f
}

fn accepted(c: crate::error::Result<NullCertificate>) -> bool {
    c.map(|c| c.accepted).unwrap_or(false)
}

fn witness_ok(
    f: &Polynomial,
    domain: Domain<'_>,
    criterion: Criterion,
    cert: &NullCertificate,
) -> std::result::Result<(), String> {
    ensure!(cert.accepted, "certificate not accepted");
    ensure!(f.contains(&cert.alpha), "alpha missing from {f}");
    ensure!(cert.revalidate(f), "certificate fails revalidation for {f}");
    let w = find_witness_with(f, domain, criterion, 1).map_err(err)?;
    ensure!(w.is_some(), "no witness for accepted {f} ({:?})", cert.theorem);
    Ok(())
}

fn c5_soundness(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const PER: usize = 1000;
    let mut counts = [0usize; 6];
    let mut several = 0;
    // structured grids
    while counts[0] < PER {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (grid, lam) = random_null_grid(&mut rng, field, n, if n == 3 { 5 } else { 6 });
        let sizes = grid.sizes();
        let alpha = ExponentVector::from((0..n).map(|i| rng.gen_range(0..sizes[i] as u32)).collect::<Vec<_>>());
        let span: Vec<u32> = (0..n).map(|i| alpha.get(i) + lam.get(i) + 2).collect();
        let f = grow(&mut rng, field, &alpha, &span, |g| {
            accepted(check_cnv(g, &alpha, &grid, &lam, CnvMode::Aich3))
        });
        let cert = check_cnv(&f, &alpha, &grid, &lam, CnvMode::Aich3).map_err(err)?;
        witness_ok(&f, Domain::Grid(&grid), Criterion::Nonzero, &cert)?;
        counts[0] += 1;
        several += (f.num_terms() > 1) as usize;
    }
    // multiplicities and the degree form
    while counts[1] < PER || counts[2] < PER {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (grid, lam) = random_null_grid(&mut rng, field, n, if n == 3 { 4 } else { 5 });
        let sizes = grid.sizes();
        let t = rng.gen_range(1..=3);
        let alpha = ExponentVector::from(
            (0..n)
                .map(|i| rng.gen_range(0..(t as usize * sizes[i]).min(sizes[i] + 3) as u32))
                .collect::<Vec<_>>(),
        );
        if counts[1] < PER {
            let span: Vec<u32> = (0..n).map(|i| alpha.get(i) + lam.get(i) + 2).collect();
            let f = grow(&mut rng, field, &alpha, &span, |g| {
                accepted(check_cnv_mult(g, &alpha, &grid, &lam, t))
            });
            match check_cnv_mult(&f, &alpha, &grid, &lam, t) {
                Ok(cert) => {
                    witness_ok(&f, Domain::Grid(&grid), Criterion::NotTFold(t), &cert)?;
                    counts[1] += 1;
                    several += (f.num_terms() > 1) as usize;
                }
                Err(crate::error::Error::BetatViolated(_)) => {}
                Err(e) => return Err(err(e)),
            }
        }
        if counts[2] < PER {
            let l = lam.entries().iter().copied().min().unwrap_or(0);
            let bound = alpha.total_degree() + l;
            let span: Vec<u32> = (0..n).map(|_| bound).collect();
            let f = grow(&mut rng, field, &alpha, &span, |g| {
                g.degree().finite().unwrap_or(0) <= bound
            });
            match check_nica_mult(&f, &alpha, &grid, l, t) {
                Ok(cert) => {
                    witness_ok(&f, Domain::Grid(&grid), Criterion::NotTFold(t), &cert)?;
                    counts[2] += 1;
                    several += (f.num_terms() > 1) as usize;
                }
                Err(crate::error::Error::BetatViolated(_)) => {}
                Err(e) => return Err(err(e)),
            }
        }
    }
    // punctured grids, per-monomial and degree forms
    while counts[3] < PER || counts[4] < PER {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (p, lam) = random_null_punctured(&mut rng, field, n, if n == 3 { 5 } else { 6 });
        if p.is_empty() {
            continue;
        }
        let (a, b) = (p.a(), p.b());
        let alpha = ExponentVector::from((0..n).map(|i| rng.gen_range(0..a[i] as u32)).collect::<Vec<_>>());
        if !(0..n).any(|i| (alpha.get(i) as usize) < a[i] - b[i]) {
            continue;
        }
        if counts[3] < PER {
            let span: Vec<u32> = (0..n)
                .map(|i| (alpha.get(i) + lam.get(i)).max(a[i] as u32) + 1)
                .collect();
            let f = grow(&mut rng, field, &alpha, &span, |g| {
                accepted(check_punctured(g, &alpha, &p, &lam, PuncturedMode::Full))
            });
            let cert = check_punctured(&f, &alpha, &p, &lam, PuncturedMode::Full).map_err(err)?;
            witness_ok(&f, Domain::Punctured(&p), Criterion::Nonzero, &cert)?;
            counts[3] += 1;
            several += (f.num_terms() > 1) as usize;
        }
        if counts[4] < PER {
            let l = lam.entries().iter().copied().min().unwrap_or(0);
            let uniform = LacunarityVector::uniform(n, l);
            let bound = alpha.total_degree() + l;
            let span: Vec<u32> = (0..n).map(|_| bound).collect();
            let f = grow(&mut rng, field, &alpha, &span, |g| {
                g.degree().finite().unwrap_or(0) <= bound
            });
            let cert = check_punctured(&f, &alpha, &p, &uniform, PuncturedMode::Corollary).map_err(err)?;
            witness_ok(&f, Domain::Punctured(&p), Criterion::Nonzero, &cert)?;
            counts[4] += 1;
            several += (f.num_terms() > 1) as usize;
        }
    }
    // multigrids
    while counts[5] < PER {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (s, lam) = random_null_multigrid(&mut rng, field, n, if n == 3 { 3 } else { 4 });
        let w = s.weights();
        let alpha = ExponentVector::from((0..n).map(|i| rng.gen_range(0..w[i])).collect::<Vec<_>>());
        let span: Vec<u32> = (0..n).map(|i| alpha.get(i) + lam.get(i) + 2).collect();
        let f = grow(&mut rng, field, &alpha, &span, |g| {
            accepted(check_multiset(g, &alpha, &s, &lam))
        });
        let cert = check_multiset(&f, &alpha, &s, &lam).map_err(err)?;
        witness_ok(&f, Domain::Multigrid(&s), Criterion::FailsMvec, &cert)?;
        counts[5] += 1;
        several += (f.num_terms() > 1) as usize;
    }
    Ok((
        counts.iter().sum(),
        format!(
            "1000 accepted certificates each for grid, grid multiplicity, degree multiplicity, punctured, \
             punctured degree, multigrid ({several} with several terms); every one has a witness"
        ),
    ))
}

fn c6_generalization() -> Outcome {
    let f11 = gf(11);
    let roots: &[i64] = &[1, 3, 4, 5, 9];
    let grid = GridSpec::from_i64(f11, &[roots, roots]).map_err(err)?;
    let f = parse_polynomial("x1^2*x2^3 + x1^6*x2^6", f11, 2).map_err(err)?;
    let alpha = ExponentVector::new(&[2, 3]);
    let lam = LacunarityVector::new(vec![4, 4]);
    let verdict = |m| check_cnv(&f, &alpha, &grid, &lam, m).map(|c| c.accepted).map_err(err);
    ensure!(verdict(CnvMode::Aich3)?, "structured grid mode rejects");
    ensure!(!verdict(CnvMode::Schauz)?, "schauz mode accepts");
    ensure!(!verdict(CnvMode::Lason)?, "lason mode accepts");
    let degree = check_nica_mult(&f, &alpha, &grid, 4, 1).map_err(err)?.accepted;
    ensure!(!degree, "degree condition accepts");
    // 6 ∈ [α_1 + 1, α_1 + λ_1] = [3, 6], so the interval form of the nica
    // mode covers x1^6*x2^6 and accepts
    ensure!(verdict(CnvMode::Nica)?, "interval nica mode rejects");
    let w = find_witness_with(&f, Domain::Grid(&grid), Criterion::Nonzero, 1).map_err(err)?;
    ensure!(w.is_some(), "no nonzero found");
    Ok((
        1,
        "aich3 accepts; schauz, lason and the degree condition (5 < 12 - 4) reject; interval nica mode accepts".into(),
    ))
}

fn c7_lacunary(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let field = [gf(7), gf(13), Field::Rationals][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let lam = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..=3)).collect());
        let g = random_lacunary(&mut rng, field, &lam, 6, 4);
        let h = random_lacunary(&mut rng, field, &lam, 6, 4);
        ensure!(
            is_lacunary(&(&g * &h), &lam).map_err(err)?,
            "product of {g} and {h} not lacunary"
        );
    }
    let mut cofactors = 0;
    let mut nontrivial = 0;
    let mut attempts = 0;
    while cofactors < 1000 {
        attempts += 1;
        ensure!(attempts < 200_000, "too few lacunary products generated");
        let field = [gf(7), gf(13), Field::Rationals][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=2);
        let lam = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..=2)).collect());
        let weaker = LacunarityVector::new(lam.entries().iter().map(|&l| rng.gen_range(0..=l)).collect());
        let g = random_lacunary(&mut rng, field, &lam, 5, 3);
        let h = if rng.gen_bool(0.5) {
            random_lacunary(&mut rng, field, &weaker, 4, 3)
        } else {
            random_poly(&mut rng, field, n, 3, 3)
        };
        let f = &g * &h;
        if !is_lacunary(&f, &lam).map_err(err)? {
            continue;
        }
        let t = divide(&f, std::slice::from_ref(&g), MonomialOrder::GrLex).map_err(err)?;
        ensure!(t.remainder.is_zero(), "{f} not divisible by {g}");
        let q = t.quotients().remove(0);
        ensure!(q == h, "quotient {q} differs from {h}");
        ensure!(
            is_lacunary(&q, &lam).map_err(err)?,
            "cofactor {q} of {f} by {g} not lacunary"
        );
        nontrivial += (h.num_terms() > 1) as usize;
        cofactors += 1;
    }
    Ok((
        2000,
        format!("1000 products, 1000 cofactors ({nontrivial} with several terms)"),
    ))
}

fn c8_stability(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut steps = 0;
    while checked < 1000 {
        let field = [gf(5), gf(11), Field::Rationals][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let lam = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..=2)).collect());
        let g: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| random_lacunary(&mut rng, field, &lam, 4, 3))
            .filter(|g| g.degree().finite() != Some(0))
            .collect();
        if g.is_empty() {
            continue;
        }
        let order = MonomialOrder::ALL[rng.gen_range(0..3)];
        let ctx = ShadingContext::new(g.clone(), lam.clone(), order).map_err(err)?;
        let f = random_poly(&mut rng, field, n, 7, 8);
        let stable = ctx.stable_monomials(&f).map_err(err)?;
        let Some(alpha) = stable.choose(&mut rng).cloned() else {
            continue;
        };
        let strategy = Strategy {
            monomial: [MonomialChoice::Greatest, MonomialChoice::Least][rng.gen_range(0..2)],
            divisor: [DivisorChoice::LowestIndex, DivisorChoice::HighestIndex][rng.gen_range(0..2)],
        };
        let t = divide_with(&f, &g, order, strategy).map_err(err)?;
        let coeff = f.coefficient(&alpha);
        let mut running = f.clone();
        for step in &t.steps {
            running = &running - &g[step.divisor].mul_term(&step.coefficient, &step.shift);
            steps += 1;
            ensure!(
                ctx.is_stable(&alpha, &running).map_err(err)?.verdict,
                "x^{alpha} lost stability in dividing {f}"
            );
            ensure!(running.coefficient(&alpha) == coeff, "coefficient of x^{alpha} changed");
        }
        ensure!(
            t.remainder.coefficient(&alpha) == coeff,
            "remainder coefficient of x^{alpha} changed"
        );
        checked += 1;
    }
    Ok((checked, format!("{steps} division steps replayed")))
}

fn c9_clark(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 200 {
        let field = gf([2, 3, 5, 7][rng.gen_range(0..4)]);
        let n = rng.gen_range(1..=3);
        let (p, _) = random_null_punctured(&mut rng, field, n, 3);
        let f = random_poly(&mut rng, field, n, 3, 4);
        let domain = if checked % 2 == 0 {
            CountDomain::Grid(p.x())
        } else {
            if p.is_empty() {
                continue;
            }
            CountDomain::Punctured(&p)
        };
        let exact = clark_count(domain, &f).map_err(err)?;
        let direct = count_nonzeros(domain, &f).map_err(err)?;
        ensure!(exact == direct, "clark {exact} vs evaluation {direct} for {f}");
        checked += 1;
    }
    Ok((checked, "exact equality on grids and punctured grids".into()))
}

fn c10_box_difference() -> Outcome {
    let field = gf(7);
    let values: Vec<i64> = (0..5).collect();
    let order = MonomialOrder::GrLex;
    let mut checked = 0;
    for n in 1..=3usize {
        let mut a = vec![1u32; n];
        loop {
            let mut b = vec![0u32; n];
            loop {
                let xs: Vec<&[i64]> = a.iter().map(|&k| &values[..k as usize]).collect();
                let ys: Vec<&[i64]> = (0..n).map(|i| &values[(a[i] - b[i]) as usize..a[i] as usize]).collect();
                let p = PuncturedGridSpec::from_i64(field, &xs, &ys).map_err(err)?;
                let basis = punctured_basis(&p).map_err(err)?.verified(order).map_err(err)?;
                let region = cofilter(&basis, order, &a).map_err(err)?;
                let sym = BoxDifference::new(a.clone(), b.clone()).map_err(err)?;
                ensure!(region.elements() == sym.enumerate(), "a={a:?} b={b:?}");
                ensure!(region.len() == p.len() as u64, "size mismatch a={a:?} b={b:?}");
                checked += 1;
                if !odometer(&mut b, |i| a[i]) {
                    break;
                }
            }
            if !advance_positive(&mut a, 5) {
                break;
            }
        }
    }
    Ok((checked, "every (a, b) with n <= 3, a_i <= 5".into()))
}

/// Advances `v` through `⨉[0, hi(i)]`, last coordinate fastest; false after
/// the last vector (which resets to zeros).
fn odometer(v: &mut [u32], hi: impl Fn(usize) -> u32) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < hi(i) {
            v[i] += 1;
            return true;
        }
        v[i] = 0;
    }
    false
}

fn c11_bounds(seed: u64) -> Outcome {
    let f5 = gf(5);
    let all: &[i64] = &[0, 1, 2, 3, 4];
    let p = PuncturedGridSpec::from_i64(f5, &[all, all], &[&[0, 1], &[0, 1]]).map_err(err)?;
    let f = parse_polynomial("x1*x2", f5, 2).map_err(err)?;
    let bounds = af_punctured_bounds(&p, &f).map_err(err)?;
    let actual = count_nonzeros(CountDomain::Punctured(&p), &f).map_err(err)?;
    ensure!(bounds.bound_b == Some(12), "stored boundB {:?}", bounds.bound_b);
    ensure!(actual == 15, "stored count {actual}");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut with_b = 0;
    while checked < 200 {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=3);
        let (p, _) = random_null_punctured(&mut rng, field, n, 4);
        if p.is_empty() {
            continue;
        }
        let f = random_poly(&mut rng, field, n, 3, 4);
        let actual = count_nonzeros(CountDomain::Punctured(&p), &f).map_err(err)?;
        let bounds = af_punctured_bounds(&p, &f).map_err(err)?;
        ensure!(bounds.empty == (actual == 0), "emptiness flag wrong for {f}");
        if actual == 0 {
            continue;
        }
        let a = bounds.bound_a.ok_or("set A empty on a nonempty instance")?;
        ensure!(a <= actual, "boundA {a} > {actual} for {f}");
        if let Some(b) = bounds.bound_b {
            ensure!(b <= actual, "boundB {b} > {actual} for {f}");
            with_b += 1;
        }
        checked += 1;
    }
    Ok((
        checked + 1,
        format!("stored boundB = 12 <= 15; 200 random instances ({with_b} with part 2)"),
    ))
}

fn c12_sharpness(seed: u64) -> Outcome {
    let f5 = gf(5);
    let x: &[i64] = &[0, 1, 2, 3];
    let p = PuncturedGridSpec::from_i64(f5, &[x, x], &[&[0, 1], &[0, 1]]).map_err(err)?;
    let s = sharpness_construction(&p, &[1, 1]).map_err(err)?;
    let got = count_nonzeros(CountDomain::Punctured(&p), &s.polynomial).map_err(err)?;
    ensure!(s.expected == 5 && got == 5, "stored instance gives {got}");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = gf(7);
    let mut checked = 0;
    for n in 1..=2usize {
        let mut a = vec![1u32; n];
        loop {
            let mut b = vec![0u32; n];
            loop {
                let mut xs = Vec::with_capacity(n);
                let mut ys = Vec::with_capacity(n);
                for i in 0..n {
                    let mut vals: Vec<i64> = (0..7).collect();
                    vals.shuffle(&mut rng);
                    let xi = vals[..a[i] as usize].to_vec();
                    let mut yi = xi.clone();
                    yi.shuffle(&mut rng);
                    yi.truncate(b[i] as usize);
                    xs.push(xi);
                    ys.push(yi);
                }
                let xr: Vec<&[i64]> = xs.iter().map(Vec::as_slice).collect();
                let yr: Vec<&[i64]> = ys.iter().map(Vec::as_slice).collect();
                let p = PuncturedGridSpec::from_i64(field, &xr, &yr).map_err(err)?;
                // e_i ∈ [0, a_i − 1)
                if a.iter().all(|&ai| ai >= 2) {
                    let mut e = vec![0u32; n];
                    loop {
                        let s = sharpness_construction(&p, &e).map_err(err)?;
                        let lead = s.polynomial.leading_exponent(MonomialOrder::GrLex).map_err(err)?;
                        ensure!(lead.entries() == e.as_slice(), "Lm {lead} for e={e:?}");
                        let got = count_nonzeros(CountDomain::Punctured(&p), &s.polynomial).map_err(err)?;
                        let want = afcp_closed_form(&a, &b, &e).map_err(err)?;
                        ensure!(got == want, "a={a:?} b={b:?} e={e:?}: {got} != {want}");
                        checked += 1;
                        if !odometer(&mut e, |i| a[i] - 2) {
                            break;
                        }
                    }
                }
                if !odometer(&mut b, |i| a[i]) {
                    break;
                }
            }
            if !advance_positive(&mut a, 5) {
                break;
            }
        }
    }
    Ok((
        checked + 1,
        "stored instance gives 5; every feasible (a, b, e) attains the bound".into(),
    ))
}

/// Next vector in `⨉[1, hi]`, last coordinate fastest.
fn advance_positive(v: &mut [u32], hi: u32) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < hi {
            v[i] += 1;
            return true;
        }
        v[i] = 1;
    }
    false
}

/// Runs criterion `id` (1–12) from `seed`.
pub fn run_criterion(id: u8, seed: u64) -> CriterionReport {
    let s = seed.wrapping_mul(0x9E37_79B9).wrapping_add(id as u64);
    let outcome = match id {
        1 => c1_worked_example(),
        2 => c2_division(s),
        3 => c3_groebner(s),
        4 => c4_membership(s),
        5 => c5_soundness(s),
        6 => c6_generalization(),
        7 => c7_lacunary(s),
        8 => c8_stability(s),
        9 => c9_clark(s),
        10 => c10_box_difference(),
        11 => c11_bounds(s),
        12 => c12_sharpness(s),
        _ => Err(format!("no criterion {id}")),
    };
    let title = TITLES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    match outcome {
        Ok((checked, detail)) => CriterionReport {
            id,
            title,
            passed: true,
            checked,
            detail,
        },
        Err(detail) => CriterionReport {
            id,
            title,
            passed: false,
            checked: 0,
            detail,
        },
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=12).map(|id| run_criterion(id, seed)).collect()
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2}: {} [{} check{}] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            if self.checked == 1 { "" } else { "s" },
            self.detail
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lacunary::is_null;

    #[test]
    fn generated_edges_are_null() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let field = random_field(&mut rng);
            let (e, l) = random_null_edge(&mut rng, field, 6);
            assert!(is_null(&e, l).unwrap());
            let (p, lam) = random_null_punctured(&mut rng, field, 2, 6);
            for i in 0..2 {
                assert!(is_null(&p.x().edges()[i], lam.get(i)).unwrap());
                assert!(is_null(&p.y()[i], lam.get(i)).unwrap());
            }
        }
    }

    #[test]
    fn cosets_have_the_expected_null_index() {
        let f13 = gf(13);
        for d in [1, 2, 3, 4, 6, 12] {
            let e = coset(f13, &f13.from_i64(2), d);
            assert_eq!(e.len(), d as usize);
            // x^d − a^d
            assert_eq!(max_null_index(&e).unwrap(), d - 1);
        }
    }

    #[test]
    fn odometers_cover_their_boxes() {
        let mut v = vec![0, 0];
        let mut seen = 1;
        while odometer(&mut v, |i| [1, 2][i]) {
            seen += 1;
        }
        assert_eq!(seen, 6);
        let mut v = vec![1, 1];
        let mut seen = 1;
        while advance_positive(&mut v, 3) {
            seen += 1;
        }
        assert_eq!(seen, 9);
    }

    #[test]
    fn fixed_criteria_pass() {
        for id in [1, 6] {
            let r = run_criterion(id, 0);
            assert!(r.passed, "{}", r.line());
        }
    }
}
