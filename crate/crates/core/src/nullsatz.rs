//! Hypothesis checkers for the structured nonvanishing theorems, zero
//! multiplicities, and an exhaustive witness search used as an oracle.
//!
//! Every checker validates its preconditions (λ-null edges, bounds on α,
//! α ∈ Supp(f)) and returns a [`NullCertificate`] recording, for each
//! `γ ∈ Supp(f) ∖ {α}`, the coordinate and the interval clause that covers
//! it. A certificate can be replayed against the raw inequalities with
//! [`NullCertificate::revalidate`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{GridInput, GridSpec, MultisetGridSpec, PuncturedGridSpec};
use crate::ideals::compositions;
use crate::lacunary::{is_null, LacunarityVector, VanishingEdge};
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::Scalar;

/// Order of vanishing at a point; the zero polynomial vanishes to every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(t) => write!(f, "{t}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(t) => s.serialize_u32(*t),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

fn check_point(f: &Polynomial, c: &[Scalar]) -> Result<()> {
    if c.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: c.len(),
        });
    }
    if c.iter().any(|a| a.field() != f.field()) {
        return Err(Error::MixedFields);
    }
    Ok(())
}

/// Largest `t` such that `c` is a t-fold zero of `f`: the least total degree
/// in `f(x + c)`.
pub fn tfold_multiplicity(f: &Polynomial, c: &[Scalar]) -> Result<Multiplicity> {
    check_point(f, c)?;
    let shifted = f.taylor_shift(c)?;
    Ok(match shifted.min_total_degree() {
        None => Multiplicity::Infinite,
        Some(t) => Multiplicity::Finite(t),
    })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Coefficient of `x^κ` in `f(x + c)`:
/// `Σ_γ c_γ ∏_i binom(γ_i, κ_i) c_i^{γ_i − κ_i}`.
pub fn shifted_coefficient(f: &Polynomial, c: &[Scalar], kappa: &[u32]) -> Scalar {
    let field = f.field();
    let mut acc = field.zero();
    for (gamma, coeff) in f.terms() {
        if gamma.entries().iter().zip(kappa).any(|(g, k)| g < k) {
            continue;
        }
        let mut term = coeff.clone();
        for i in 0..kappa.len() {
            let (g, k) = (gamma.get(i), kappa[i]);
            if g == k {
                continue;
            }
            term = &term * &(&field.from_bigint(&binomial(g, k)) * &c[i].pow(g - k));
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Whether `c` is a t-fold zero of `f`, checking only the coefficients of
/// total degree below `t`.
pub fn is_tfold_zero(f: &Polynomial, c: &[Scalar], t: u32) -> Result<bool> {
    check_point(f, c)?;
    for d in 0..t {
        for kappa in compositions(d, f.nvars()) {
            if !shifted_coefficient(f, c, &kappa).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `c` is a zero with multiplicity vector `m`, i.e. every monomial of
/// `f(x + c)` has some `κ_i ≥ m_i`.
pub fn has_mvec_zero(f: &Polynomial, c: &[Scalar], m: &[u32]) -> Result<bool> {
    check_point(f, c)?;
    if m.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: m.len(),
        });
    }
    if m.contains(&0) {
        return Ok(true);
    }
    let sizes: Vec<usize> = m.iter().map(|&k| k as usize).collect();
    let total: usize = sizes.iter().product();
    for idx in 0..total {
        let kappa: Vec<u32> = crate::grid::decode_index(idx, &sizes)
            .into_iter()
            .map(|k| k as u32)
            .collect();
        if !shifted_coefficient(f, c, &kappa).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which theorem a certificate is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremTag {
    Cnv,
    CnvMult,
    NicaMult,
    Ballcn2,
    Ballcn2cor,
    Multiset,
}

impl TheoremTag {
    pub fn name(&self) -> &'static str {
        match self {
            TheoremTag::Cnv => "cnv",
            TheoremTag::CnvMult => "cnv-mult",
            TheoremTag::NicaMult => "nica-mult",
            TheoremTag::Ballcn2 => "ballcn2",
            TheoremTag::Ballcn2cor => "ballcn2cor",
            TheoremTag::Multiset => "multiset",
        }
    }
}

impl FromStr for TheoremTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cnv" => TheoremTag::Cnv,
            "cnv-mult" => TheoremTag::CnvMult,
            "nica-mult" => TheoremTag::NicaMult,
            "ballcn2" | "punctured" => TheoremTag::Ballcn2,
            "ballcn2cor" | "punctured-degree" => TheoremTag::Ballcn2cor,
            "multiset" => TheoremTag::Multiset,
            other => return Err(Error::Invalid(format!("unknown theorem {other:?}"))),
        })
    }
}

/// Interval families accepted by [`check_cnv`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CnvMode {
    /// `[0, α_i−1] ∪ [α_i+1, |S_i|−1] ∪ [|S_i|, α_i+λ_i]`
    #[default]
    Aich3,
    /// `[0, α_i−1]`
    Lason,
    /// `[0, α_i−1] ∪ [α_i+1, |S_i|−1]`
    Schauz,
    /// `[0, α_i−1] ∪ [α_i+1, α_i+λ_i]`
    Nica,
}

impl CnvMode {
    pub const ALL: [CnvMode; 4] = [CnvMode::Aich3, CnvMode::Lason, CnvMode::Schauz, CnvMode::Nica];

    fn clauses(self) -> &'static [Clause] {
        match self {
            CnvMode::Aich3 => &[Clause::BelowAlpha, Clause::AboveAlphaBelowSize, Clause::SizeToLambda],
            CnvMode::Lason => &[Clause::BelowAlpha],
            CnvMode::Schauz => &[Clause::BelowAlpha, Clause::AboveAlphaBelowSize],
            CnvMode::Nica => &[Clause::BelowAlpha, Clause::AboveAlphaWithinLambda],
        }
    }
}

impl FromStr for CnvMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "aich3" | "full" => CnvMode::Aich3,
            "lason" => CnvMode::Lason,
            "schauz" => CnvMode::Schauz,
            "nica" => CnvMode::Nica,
            other => return Err(Error::Invalid(format!("unknown mode {other:?}"))),
        })
    }
}

/// A per-coordinate condition on `γ_i` (with `s_i` the edge size or weight,
/// `b_i` the puncture size).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Clause {
    /// `γ_i ∈ [0, α_i − 1]`
    BelowAlpha,
    /// `γ_i ∈ [α_i + 1, s_i − 1]`
    AboveAlphaBelowSize,
    /// `γ_i ∈ [s_i, α_i + λ_i]`
    SizeToLambda,
    /// `γ_i ∈ [α_i + 1, α_i + λ_i]`
    AboveAlphaWithinLambda,
    /// `γ_i ≠ α_i` and every β with `Σβ = t`, `β_i > 0` has some `j` with
    /// `γ_j < β_j s_j`.
    BetaCover,
    /// `γ_i ∈ [α_i + 1, s_i − 1]` and `s_i = b_i`.
    FullPuncture,
    /// `γ_i ∈ [α_i + 1, s_i − 1]` and `γ_j < s_j − b_j`.
    SmallCoordinate {
        #[serde(with = "one_based")]
        j: usize,
    },
}

/// Coordinates are 0-based in memory and 1-based in JSON.
mod one_based {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let k = u64::deserialize(d)?;
        k.checked_sub(1)
            .map(|k| k as usize)
            .ok_or_else(|| D::Error::custom("coordinates are 1-based"))
    }
}

/// One covered monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    pub gamma: ExponentVector,
    /// 0-based coordinate (1-based in JSON).
    #[serde(with = "one_based")]
    pub var: usize,
    pub clause: Clause,
}

/// Whole-instance conditions some theorems add to the per-monomial ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionKind {
    /// Every β with `Σβ = t` has some `i` with `α_i < β_i s_i`.
    CompositionCover,
    /// `Σα_i ≥ deg f − λ`.
    DegreeBound,
    /// `α_i < a_i` for all `i`.
    AlphaBelowOuter,
    /// `α_i < a_i − b_i` for some `i`.
    AlphaBelowDifference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: ConditionKind,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullCertificate {
    pub theorem: TheoremTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CnvMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    pub alpha: ExponentVector,
    pub lambda: Vec<u32>,
    /// `|S_i|`, `‖S_i‖` or `|X_i|`.
    pub sizes: Vec<u32>,
    /// `|Y_i|` for punctured grids.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub puncture: Option<Vec<u32>>,
    pub conditions: Vec<Condition>,
    pub justifications: Vec<Justification>,
    /// Monomials no clause covers.
    pub uncovered: Vec<ExponentVector>,
    pub accepted: bool,
    /// A point meeting the conclusion, when one was searched for.
    #[serde(default)]
    pub witness: Option<Vec<String>>,
}

struct ClauseData<'a> {
    alpha: &'a ExponentVector,
    lambda: &'a [u32],
    sizes: &'a [u32],
    puncture: Option<&'a [u32]>,
    t: Option<u32>,
}

fn in_interval(x: i64, lo: i64, hi: i64) -> bool {
    lo <= x && x <= hi
}

impl ClauseData<'_> {
    /// The raw inequality behind each clause.
    fn holds(&self, clause: Clause, gamma: &ExponentVector, i: usize) -> bool {
        let g = gamma.get(i) as i64;
        let a = self.alpha.get(i) as i64;
        let l = self.lambda[i] as i64;
        let s = self.sizes[i] as i64;
        match clause {
            Clause::BelowAlpha => in_interval(g, 0, a - 1),
            Clause::AboveAlphaBelowSize => in_interval(g, a + 1, s - 1),
            Clause::SizeToLambda => in_interval(g, s, a + l),
            Clause::AboveAlphaWithinLambda => in_interval(g, a + 1, a + l),
            Clause::BetaCover => {
                let Some(t) = self.t else { return false };
                g != a
                    && compositions(t, gamma.len())
                        .iter()
                        .filter(|beta| beta[i] > 0)
                        .all(|beta| {
                            (0..gamma.len()).any(|j| (gamma.get(j) as u64) < beta[j] as u64 * self.sizes[j] as u64)
                        })
            }
            Clause::FullPuncture => {
                let Some(b) = self.puncture else { return false };
                in_interval(g, a + 1, s - 1) && self.sizes[i] == b[i]
            }
            Clause::SmallCoordinate { j } => {
                let Some(b) = self.puncture else { return false };
                j < gamma.len()
                    && in_interval(g, a + 1, s - 1)
                    && (gamma.get(j) as i64) < self.sizes[j] as i64 - b[j] as i64
            }
        }
    }

    fn clause_list(&self, base: &[Clause]) -> Vec<Clause> {
        let mut out = base.to_vec();
        if base.contains(&Clause::FullPuncture) {
            out.extend((0..self.alpha.len()).map(|j| Clause::SmallCoordinate { j }));
        }
        out
    }

    fn cover(&self, f: &Polynomial, clauses: &[Clause]) -> (Vec<Justification>, Vec<ExponentVector>) {
        let clauses = self.clause_list(clauses);
        let mut just = Vec::new();
        let mut uncovered = Vec::new();
        for gamma in f.support().filter(|g| *g != self.alpha) {
            let hit = (0..gamma.len()).find_map(|i| {
                clauses
                    .iter()
                    .find(|&&c| self.holds(c, gamma, i))
                    .map(|&clause| (i, clause))
            });
            match hit {
                Some((var, clause)) => just.push(Justification {
                    gamma: gamma.clone(),
                    var,
                    clause,
                }),
                None => uncovered.push(gamma.clone()),
            }
        }
        (just, uncovered)
    }
}

fn betat_holds(alpha: &ExponentVector, sizes: &[u32], t: u32) -> std::result::Result<(), Vec<u32>> {
    for beta in compositions(t, alpha.len()) {
        let ok = (0..alpha.len()).any(|i| (alpha.get(i) as u64) < beta[i] as u64 * sizes[i] as u64);
        if !ok {
            return Err(beta);
        }
    }
    Ok(())
}

fn degree_bound_holds(f: &Polynomial, alpha: &ExponentVector, lambda: u32) -> bool {
    let deg = f.degree().finite().unwrap_or(0) as i64;
    alpha.total_degree() as i64 >= deg - lambda as i64
}

fn check_common(f: &Polynomial, alpha: &ExponentVector, lambda: &LacunarityVector) -> Result<()> {
    if alpha.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: alpha.len(),
        });
    }
    if lambda.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: lambda.len(),
        });
    }
    if !f.contains(alpha) {
        return Err(Error::AlphaNotInSupport);
    }
    Ok(())
}

fn check_null_edges<E: VanishingEdge>(edges: &[E], lambda: &LacunarityVector) -> Result<()> {
    for (i, e) in edges.iter().enumerate() {
        if !is_null(e, lambda.get(i))? {
            return Err(Error::EdgeNotNull {
                var: i + 1,
                lambda: lambda.get(i),
            });
        }
    }
    Ok(())
}

fn check_grid_ring(f: &Polynomial, field: crate::scalar::Field, n: usize) -> Result<()> {
    if f.field() != field {
        return Err(Error::MixedFields);
    }
    if f.nvars() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: f.nvars(),
        });
    }
    Ok(())
}

fn alpha_below(alpha: &ExponentVector, sizes: &[u32]) -> Result<()> {
    for (i, &s) in sizes.iter().enumerate() {
        if alpha.get(i) >= s {
            return Err(Error::AlphaTooLarge {
                var: i + 1,
                alpha: alpha.get(i),
                size: s as usize,
            });
        }
    }
    Ok(())
}

fn sizes_u32(sizes: &[usize]) -> Vec<u32> {
    sizes.iter().map(|&s| s as u32).collect()
}

/// Nonvanishing on a grid via per-monomial interval conditions.
pub fn check_cnv(
    f: &Polynomial,
    alpha: &ExponentVector,
    grid: &GridSpec,
    lambda: &LacunarityVector,
    mode: CnvMode,
) -> Result<NullCertificate> {
    check_grid_ring(f, grid.field(), grid.nvars())?;
    check_common(f, alpha, lambda)?;
    check_null_edges(grid.edges(), lambda)?;
    let sizes = sizes_u32(&grid.sizes());
    alpha_below(alpha, &sizes)?;
    let data = ClauseData {
        alpha,
        lambda: lambda.entries(),
        sizes: &sizes,
        puncture: None,
        t: None,
    };
    let (justifications, uncovered) = data.cover(f, mode.clauses());
    Ok(NullCertificate {
        theorem: TheoremTag::Cnv,
        mode: Some(mode),
        t: None,
        alpha: alpha.clone(),
        lambda: lambda.entries().to_vec(),
        sizes,
        puncture: None,
        conditions: vec![],
        accepted: uncovered.is_empty(),
        justifications,
        uncovered,
        witness: None,
    })
}

/// Existence of a point of the grid that is not a t-fold zero.
pub fn check_cnv_mult(
    f: &Polynomial,
    alpha: &ExponentVector,
    grid: &GridSpec,
    lambda: &LacunarityVector,
    t: u32,
) -> Result<NullCertificate> {
    if t == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    check_grid_ring(f, grid.field(), grid.nvars())?;
    check_common(f, alpha, lambda)?;
    check_null_edges(grid.edges(), lambda)?;
    let sizes = sizes_u32(&grid.sizes());
    betat_holds(alpha, &sizes, t).map_err(Error::BetatViolated)?;
    let data = ClauseData {
        alpha,
        lambda: lambda.entries(),
        sizes: &sizes,
        puncture: None,
        t: Some(t),
    };
    let (justifications, uncovered) = data.cover(
        f,
        &[Clause::BelowAlpha, Clause::AboveAlphaWithinLambda, Clause::BetaCover],
    );
    Ok(NullCertificate {
        theorem: TheoremTag::CnvMult,
        mode: None,
        t: Some(t),
        alpha: alpha.clone(),
        lambda: lambda.entries().to_vec(),
        sizes,
        puncture: None,
        conditions: vec![Condition {
            name: ConditionKind::CompositionCover,
            holds: true,
        }],
        accepted: uncovered.is_empty(),
        justifications,
        uncovered,
        witness: None,
    })
}

/// Degree form of [`check_cnv_mult`] with a uniform λ: `Σα_i ≥ deg f − λ`.
pub fn check_nica_mult(
    f: &Polynomial,
    alpha: &ExponentVector,
    grid: &GridSpec,
    lambda: u32,
    t: u32,
) -> Result<NullCertificate> {
    if t == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let lv = LacunarityVector::uniform(grid.nvars(), lambda);
    check_grid_ring(f, grid.field(), grid.nvars())?;
    check_common(f, alpha, &lv)?;
    check_null_edges(grid.edges(), &lv)?;
    let sizes = sizes_u32(&grid.sizes());
    betat_holds(alpha, &sizes, t).map_err(Error::BetatViolated)?;
    let degree_ok = degree_bound_holds(f, alpha, lambda);
    Ok(NullCertificate {
        theorem: TheoremTag::NicaMult,
        mode: None,
        t: Some(t),
        alpha: alpha.clone(),
        lambda: lv.entries().to_vec(),
        sizes,
        puncture: None,
        conditions: vec![
            Condition {
                name: ConditionKind::CompositionCover,
                holds: true,
            },
            Condition {
                name: ConditionKind::DegreeBound,
                holds: degree_ok,
            },
        ],
        justifications: vec![],
        uncovered: vec![],
        accepted: degree_ok,
        witness: None,
    })
}

/// Which hypothesis set the punctured checker uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PuncturedMode {
    /// Per-monomial clauses.
    #[default]
    Full,
    /// `Σα_i ≥ deg f − λ` with a uniform λ.
    Corollary,
}

impl FromStr for PuncturedMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full" => PuncturedMode::Full,
            "corollary" | "degree" => PuncturedMode::Corollary,
            other => return Err(Error::Invalid(format!("unknown punctured mode {other:?}"))),
        })
    }
}

/// Nonvanishing on a punctured grid `X ∖ Y`.
///
/// The per-monomial clause is required for `γ ∈ Mon(f) ∖ {x^α}`: no clause
/// can hold at `γ = α`, so quantifying over all of `Mon(f)` would make the
/// hypothesis unsatisfiable.
pub fn check_punctured(
    f: &Polynomial,
    alpha: &ExponentVector,
    p: &PuncturedGridSpec,
    lambda: &LacunarityVector,
    mode: PuncturedMode,
) -> Result<NullCertificate> {
    check_grid_ring(f, p.field(), p.nvars())?;
    check_common(f, alpha, lambda)?;
    if mode == PuncturedMode::Corollary && lambda.as_uniform().is_none() {
        return Err(Error::NonUniformLambda);
    }
    if p.is_empty() {
        return Err(Error::EmptyDomain);
    }
    check_null_edges(p.x().edges(), lambda)?;
    check_null_edges(p.y(), lambda)?;
    let a = sizes_u32(&p.a());
    let b = sizes_u32(&p.b());
    let al1 = (0..a.len()).all(|i| alpha.get(i) < a[i]);
    let al2 = (0..a.len()).any(|i| (alpha.get(i) as i64) < a[i] as i64 - b[i] as i64);
    let mut conditions = vec![
        Condition {
            name: ConditionKind::AlphaBelowOuter,
            holds: al1,
        },
        Condition {
            name: ConditionKind::AlphaBelowDifference,
            holds: al2,
        },
    ];
    let (theorem, justifications, uncovered) = match mode {
        PuncturedMode::Full => {
            let data = ClauseData {
                alpha,
                lambda: lambda.entries(),
                sizes: &a,
                puncture: Some(&b),
                t: None,
            };
            let (j, u) = data.cover(
                f,
                &[Clause::BelowAlpha, Clause::AboveAlphaWithinLambda, Clause::FullPuncture],
            );
            (TheoremTag::Ballcn2, j, u)
        }
        PuncturedMode::Corollary => {
            conditions.push(Condition {
                name: ConditionKind::DegreeBound,
                holds: degree_bound_holds(f, alpha, lambda.get(0)),
            });
            (TheoremTag::Ballcn2cor, vec![], vec![])
        }
    };
    let accepted = conditions.iter().all(|c| c.holds) && uncovered.is_empty();
    Ok(NullCertificate {
        theorem,
        mode: None,
        t: None,
        alpha: alpha.clone(),
        lambda: lambda.entries().to_vec(),
        sizes: a,
        puncture: Some(b),
        conditions,
        justifications,
        uncovered,
        accepted,
        witness: None,
    })
}

/// Non-vanishing on a multigrid (intervals use the weights `‖S_i‖`).
pub fn check_multiset(
    f: &Polynomial,
    alpha: &ExponentVector,
    s: &MultisetGridSpec,
    lambda: &LacunarityVector,
) -> Result<NullCertificate> {
    check_grid_ring(f, s.field(), s.nvars())?;
    check_common(f, alpha, lambda)?;
    check_null_edges(s.edges(), lambda)?;
    let sizes = s.weights();
    alpha_below(alpha, &sizes)?;
    let data = ClauseData {
        alpha,
        lambda: lambda.entries(),
        sizes: &sizes,
        puncture: None,
        t: None,
    };
    let (justifications, uncovered) = data.cover(f, CnvMode::Aich3.clauses());
    Ok(NullCertificate {
        theorem: TheoremTag::Multiset,
        mode: None,
        t: None,
        alpha: alpha.clone(),
        lambda: lambda.entries().to_vec(),
        sizes,
        puncture: None,
        conditions: vec![],
        accepted: uncovered.is_empty(),
        justifications,
        uncovered,
        witness: None,
    })
}

impl NullCertificate {
    fn base_clauses(&self) -> &'static [Clause] {
        match self.theorem {
            TheoremTag::Cnv => self.mode.unwrap_or_default().clauses(),
            TheoremTag::Multiset => CnvMode::Aich3.clauses(),
            TheoremTag::CnvMult => &[Clause::BelowAlpha, Clause::AboveAlphaWithinLambda, Clause::BetaCover],
            TheoremTag::Ballcn2 => &[Clause::BelowAlpha, Clause::AboveAlphaWithinLambda, Clause::FullPuncture],
            TheoremTag::NicaMult | TheoremTag::Ballcn2cor => &[],
        }
    }

    /// Replays the certificate against `f` using only the raw inequalities.
    /// True iff every recorded fact is correct and the verdict follows.
    pub fn revalidate(&self, f: &Polynomial) -> bool {
        let n = f.nvars();
        if self.alpha.len() != n || self.lambda.len() != n || self.sizes.len() != n {
            return false;
        }
        if !f.contains(&self.alpha) {
            return false;
        }
        let data = ClauseData {
            alpha: &self.alpha,
            lambda: &self.lambda,
            sizes: &self.sizes,
            puncture: self.puncture.as_deref(),
            t: self.t,
        };
        let allowed = data.clause_list(self.base_clauses());
        // recorded conditions
        for c in &self.conditions {
            let actual = match c.name {
                ConditionKind::CompositionCover => {
                    self.t.is_some_and(|t| betat_holds(&self.alpha, &self.sizes, t).is_ok())
                }
                ConditionKind::DegreeBound => degree_bound_holds(f, &self.alpha, self.lambda[0]),
                ConditionKind::AlphaBelowOuter => (0..n).all(|i| self.alpha.get(i) < self.sizes[i]),
                ConditionKind::AlphaBelowDifference => self
                    .puncture
                    .as_ref()
                    .is_some_and(|b| (0..n).any(|i| (self.alpha.get(i) as i64) < self.sizes[i] as i64 - b[i] as i64)),
            };
            if actual != c.holds {
                return false;
            }
        }
        // recorded justifications
        for j in &self.justifications {
            if j.var >= n || !allowed.contains(&j.clause) || !f.contains(&j.gamma) {
                return false;
            }
            if j.gamma == self.alpha || !data.holds(j.clause, &j.gamma, j.var) {
                return false;
            }
        }
        // coverage: with per-monomial clauses, every γ ≠ α is justified or
        // listed as uncovered, and an uncovered γ really has no clause
        if !allowed.is_empty() {
            for gamma in f.support().filter(|g| *g != &self.alpha) {
                let justified = self.justifications.iter().any(|j| &j.gamma == gamma);
                let listed = self.uncovered.contains(gamma);
                if justified == listed {
                    return false;
                }
                if listed && (0..n).any(|i| allowed.iter().any(|&c| data.holds(c, gamma, i))) {
                    return false;
                }
            }
        }
        let verdict = self.conditions.iter().all(|c| c.holds) && self.uncovered.is_empty();
        verdict == self.accepted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("certificate JSON: {e}")))
    }

    /// What a witness point must satisfy for this theorem's conclusion.
    pub fn criterion(&self) -> Criterion {
        match self.theorem {
            TheoremTag::CnvMult | TheoremTag::NicaMult => Criterion::NotTFold(self.t.unwrap_or(1)),
            TheoremTag::Multiset => Criterion::FailsMvec,
            _ => Criterion::Nonzero,
        }
    }
}

/// Runs the checker named by `theorem` on a grid file's contents. `mode` is
/// a [`CnvMode`] for `cnv` and a [`PuncturedMode`] for `ballcn2`; other
/// theorems ignore it. With `witness`, the domain is searched for a point
/// meeting the conclusion, and an accepted certificate without one is an
/// [`Error::InvariantViolated`]. The result has been revalidated.
#[allow(clippy::too_many_arguments)]
pub fn check_theorem(
    theorem: TheoremTag,
    mode: Option<&str>,
    f: &Polynomial,
    alpha: &ExponentVector,
    input: &GridInput,
    lambda: &LacunarityVector,
    t: u32,
    witness: bool,
) -> Result<NullCertificate> {
    let grid;
    let punctured;
    let multigrid;
    let (mut cert, domain) = match theorem {
        TheoremTag::Cnv | TheoremTag::CnvMult | TheoremTag::NicaMult => {
            grid = input.to_plain_grid()?;
            let cert = match theorem {
                TheoremTag::Cnv => {
                    let mode: CnvMode = mode.map(str::parse).transpose()?.unwrap_or_default();
                    check_cnv(f, alpha, &grid, lambda, mode)?
                }
                TheoremTag::CnvMult => check_cnv_mult(f, alpha, &grid, lambda, t)?,
                _ => check_nica_mult(f, alpha, &grid, lambda.as_uniform().ok_or(Error::NonUniformLambda)?, t)?,
            };
            (cert, Domain::Grid(&grid))
        }
        TheoremTag::Ballcn2 | TheoremTag::Ballcn2cor => {
            punctured = input.to_punctured()?;
            let mode = match (theorem, mode) {
                (TheoremTag::Ballcn2cor, _) => PuncturedMode::Corollary,
                (_, Some(m)) => m.parse()?,
                (_, None) => PuncturedMode::Full,
            };
            (
                check_punctured(f, alpha, &punctured, lambda, mode)?,
                Domain::Punctured(&punctured),
            )
        }
        TheoremTag::Multiset => {
            multigrid = input.to_multigrid()?;
            (
                check_multiset(f, alpha, &multigrid, lambda)?,
                Domain::Multigrid(&multigrid),
            )
        }
    };
    if witness {
        let found = find_witness(f, domain, cert.criterion())?;
        if cert.accepted && found.is_none() {
            return Err(Error::InvariantViolated(format!(
                "{} accepted but no point of the domain meets its conclusion",
                theorem.name()
            )));
        }
        cert.witness = found.map(|p| p.iter().map(ToString::to_string).collect());
    }
    if !cert.revalidate(f) {
        return Err(Error::InvariantViolated("certificate does not revalidate".into()));
    }
    Ok(cert)
}

/// A finite domain to scan.
#[derive(Clone, Copy, Debug)]
pub enum Domain<'a> {
    Grid(&'a GridSpec),
    Punctured(&'a PuncturedGridSpec),
    Multigrid(&'a MultisetGridSpec),
}

impl Domain<'_> {
    /// Number of candidate indices (for punctured grids: points of `X`).
    fn raw_len(&self) -> usize {
        match self {
            Domain::Grid(g) => g.len(),
            Domain::Punctured(p) => p.x().len(),
            Domain::Multigrid(m) => m.len(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Domain::Grid(g) => g.is_empty(),
            Domain::Punctured(p) => p.is_empty(),
            Domain::Multigrid(m) => m.is_empty(),
        }
    }

    fn nvars(&self) -> usize {
        match self {
            Domain::Grid(g) => g.nvars(),
            Domain::Punctured(p) => p.nvars(),
            Domain::Multigrid(m) => m.nvars(),
        }
    }

    /// The point at `index`, with its multiplicity vector on multigrids;
    /// `None` for punctured points in `Y`.
    fn candidate(&self, index: usize) -> Option<(Vec<Scalar>, Option<Vec<u32>>)> {
        match self {
            Domain::Grid(g) => Some((g.point(index), None)),
            Domain::Punctured(p) => {
                let pt = p.x().point(index);
                (!p.in_y(&pt)).then_some((pt, None))
            }
            Domain::Multigrid(m) => {
                let (pt, mult) = m.point(index);
                Some((pt, Some(mult)))
            }
        }
    }
}

/// What a witness point must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// `f(s) ≠ 0`.
    Nonzero,
    /// `s` is not a t-fold zero.
    NotTFold(u32),
    /// `s` is not a zero with multiplicity vector `S(s)` (multigrids only).
    FailsMvec,
}

fn meets(f: &Polynomial, point: &[Scalar], mult: Option<&[u32]>, criterion: Criterion) -> Result<bool> {
    Ok(match criterion {
        Criterion::Nonzero => !f.evaluate(point)?.is_zero(),
        Criterion::NotTFold(t) => !is_tfold_zero(f, point, t)?,
        Criterion::FailsMvec => {
            let m = mult.ok_or(Error::CriterionDomainMismatch(
                "multiplicity criterion needs a multigrid",
            ))?;
            !has_mvec_zero(f, point, m)?
        }
    })
}

fn scan(
    f: &Polynomial,
    domain: Domain<'_>,
    criterion: Criterion,
    range: std::ops::Range<usize>,
) -> Result<Option<usize>> {
    for index in range {
        if let Some((pt, mult)) = domain.candidate(index) {
            if meets(f, &pt, mult.as_deref(), criterion)? {
                return Ok(Some(index));
            }
        }
    }
    Ok(None)
}

/// Worker count from `NULLGRID_THREADS` (default 1).
pub fn configured_threads() -> usize {
    std::env::var("NULLGRID_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or(1)
}

/// The first point in enumeration order meeting `criterion`, using
/// [`configured_threads`] workers.
pub fn find_witness(f: &Polynomial, domain: Domain<'_>, criterion: Criterion) -> Result<Option<Vec<Scalar>>> {
    find_witness_with(f, domain, criterion, configured_threads())
}

/// [`find_witness`] with an explicit worker count. The index range is split
/// into contiguous chunks; the least hit of the earliest chunk wins, so the
/// answer does not depend on `threads`.
pub fn find_witness_with(
    f: &Polynomial,
    domain: Domain<'_>,
    criterion: Criterion,
    threads: usize,
) -> Result<Option<Vec<Scalar>>> {
    if f.nvars() != domain.nvars() {
        return Err(Error::ArityMismatch {
            expected: domain.nvars(),
            found: f.nvars(),
        });
    }
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if criterion == Criterion::FailsMvec && !matches!(domain, Domain::Multigrid(_)) {
        return Err(Error::CriterionDomainMismatch(
            "multiplicity criterion needs a multigrid",
        ));
    }
    if let Criterion::NotTFold(0) = criterion {
        return Err(Error::ZeroMultiplicity);
    }
    let total = domain.raw_len();
    let threads = threads.clamp(1, total.max(1));
    let hit = if threads == 1 {
        scan(f, domain, criterion, 0..total)?
    } else {
        let chunk = total.div_ceil(threads);
        let results: Vec<Result<Option<usize>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|k| {
                    let range = (k * chunk).min(total)..((k + 1) * chunk).min(total);
                    s.spawn(move || scan(f, domain, criterion, range))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("witness worker panicked"))
                .collect()
        });
        let mut best = None;
        for r in results {
            if let Some(i) = r? {
                best = Some(best.map_or(i, |b: usize| b.min(i)));
            }
        }
        best
    };
    Ok(hit.and_then(|i| domain.candidate(i)).map(|(pt, _)| pt))
}
