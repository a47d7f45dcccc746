//! λ-lacunary polynomials and λ-null edges.
//!
//! `g` is λ-lacunary when some `x^μ ∈ Mon(g)` satisfies, for every
//! `x^ν ∈ Mon(g)` and every `i`, either `ν_i < μ_i − λ_i` or `ν_i = μ_i`.
//! Such a μ is the ⊑-maximum of the support, hence the leading exponent
//! under every admissible order. An edge is λ-null when its monic
//! vanishing polynomial is λ-lacunary.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{EdgeSet, MultisetEdge};
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::{Field, Scalar};

/// `λ = (λ_1, …, λ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LacunarityVector(Vec<u32>);

impl LacunarityVector {
    pub fn new(entries: Vec<u32>) -> Self {
        LacunarityVector(entries)
    }

    pub fn uniform(n: usize, lambda: u32) -> Self {
        LacunarityVector(vec![lambda; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::uniform(n, 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// The common value when all entries agree.
    pub fn as_uniform(&self) -> Option<u32> {
        let first = *self.0.first()?;
        self.0.iter().all(|&l| l == first).then_some(first)
    }
}

impl From<Vec<u32>> for LacunarityVector {
    fn from(v: Vec<u32>) -> Self {
        LacunarityVector(v)
    }
}

/// Edges with a monic vanishing polynomial.
pub trait VanishingEdge {
    fn field(&self) -> Field;
    /// `(value, multiplicity)` pairs.
    fn roots(&self) -> Vec<(Scalar, u32)>;
}

impl VanishingEdge for EdgeSet {
    fn field(&self) -> Field {
        EdgeSet::field(self)
    }
    fn roots(&self) -> Vec<(Scalar, u32)> {
        self.elements().iter().map(|a| (a.clone(), 1)).collect()
    }
}

impl VanishingEdge for MultisetEdge {
    fn field(&self) -> Field {
        MultisetEdge::field(self)
    }
    fn roots(&self) -> Vec<(Scalar, u32)> {
        self.entries().to_vec()
    }
}

/// `∏ (x_var − a)^{m(a)}`; the empty product is 1.
pub(crate) fn edge_product<E: VanishingEdge + ?Sized>(edge: &E, nvars: usize, var: usize) -> Result<Polynomial> {
    if var >= nvars {
        return Err(Error::VariableOutOfRange { index: var + 1, nvars });
    }
    let field = edge.field();
    let x = Polynomial::variable(field, nvars, var);
    let mut acc = Polynomial::one(field, nvars);
    for (a, m) in edge.roots() {
        let factor = &x - &Polynomial::constant(field, nvars, a);
        acc = &acc * &factor.pow(m);
    }
    Ok(acc)
}

/// Monic vanishing polynomial of `edge` in variable `var` (0-based) of an
/// `nvars`-variable ring.
pub fn vanishing_poly<E: VanishingEdge + ?Sized>(edge: &E, nvars: usize, var: usize) -> Result<Polynomial> {
    if edge.roots().iter().all(|(_, m)| *m == 0) {
        return Err(Error::EmptyEdge);
    }
    edge_product(edge, nvars, var)
}

/// The dominating exponent μ when `g` is λ-lacunary.
pub fn lacunary_witness(g: &Polynomial, lambda: &LacunarityVector) -> Result<Option<ExponentVector>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lambda.len() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: g.nvars(),
            found: lambda.len(),
        });
    }
    // μ must dominate every ν componentwise, so it is the grlex maximum
    let mu = g.leading_exponent(crate::order::MonomialOrder::GrLex)?;
    let ok = g.support().all(|nu| {
        (0..g.nvars()).all(|i| {
            let (n, m, l) = (nu.get(i) as i64, mu.get(i) as i64, lambda.get(i) as i64);
            n == m || n < m - l
        })
    });
    Ok(ok.then_some(mu))
}

pub fn is_lacunary(g: &Polynomial, lambda: &LacunarityVector) -> Result<bool> {
    Ok(lacunary_witness(g, lambda)?.is_some())
}

/// Whether the edge is λ-null. An empty edge has vanishing polynomial 1
/// and is λ-null for every λ.
pub fn is_null<E: VanishingEdge + ?Sized>(edge: &E, lambda: u32) -> Result<bool> {
    let g = edge_product(edge, 1, 0)?;
    is_lacunary(&g, &LacunarityVector::new(vec![lambda]))
}

/// Largest λ such that the edge is λ-null, capped at the degree of its
/// vanishing polynomial.
///
/// For `x^d + c_k x^k + …` with `c_k ≠ 0` the answer is `d − k − 1`; when
/// there are no lower terms the polynomial is `x^d`, which is λ-lacunary for
/// every λ, and `d` is returned.
pub fn max_null_index<E: VanishingEdge + ?Sized>(edge: &E) -> Result<u32> {
    let g = vanishing_poly(edge, 1, 0)?;
    let d = g.degree().finite().expect("nonzero");
    let below = g.support().map(|e| e.get(0)).filter(|&k| k < d).max();
    Ok(match below {
        None => d,
        Some(k) => d - k - 1,
    })
}

/// A random λ-lacunary polynomial: a nonzero term at a random μ plus up to
/// `extra` terms whose exponents agree with μ or sit more than λ_i below it.
pub fn random_lacunary<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    lambda: &LacunarityVector,
    max_mu: u32,
    extra: usize,
) -> Polynomial {
    let n = lambda.len();
    let mu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_mu)).collect();
    let nonzero = |rng: &mut R| loop {
        let c = field.from_i64(rng.gen_range(-6..=6));
        if !c.is_zero() {
            break c;
        }
    };
    let mut terms = vec![(nonzero(rng), ExponentVector::from(mu.clone()))];
    for _ in 0..rng.gen_range(0..=extra) {
        let nu: Vec<u32> = (0..n)
            .map(|i| {
                let room = mu[i] as i64 - lambda.get(i) as i64;
                if room > 0 && rng.gen_bool(0.6) {
                    rng.gen_range(0..room as u32)
                } else {
                    mu[i]
                }
            })
            .collect();
        if nu != mu {
            terms.push((nonzero(rng), ExponentVector::from(nu)));
        }
    }
    Polynomial::from_terms(field, n, terms).expect("consistent ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::divide;
    use crate::order::MonomialOrder;
    use crate::parse::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lam(v: &[u32]) -> LacunarityVector {
        LacunarityVector::new(v.to_vec())
    }

    #[test]
    fn vanishing_polynomials() {
        let f2 = Field::prime(2).unwrap();
        let e = EdgeSet::from_i64(f2, &[0, 1]).unwrap();
        assert_eq!(vanishing_poly(&e, 1, 0).unwrap().to_string(), "x1^2 + x1");
        let q = Field::Rationals;
        let e = EdgeSet::from_i64(q, &[1, 2, -3]).unwrap();
        assert_eq!(
            vanishing_poly(&e, 1, 0).unwrap(),
            parse_polynomial("x1^3 - 7*x1 + 6", q, 1).unwrap()
        );
        let m = MultisetEdge::from_i64(q, &[(0, 2)]).unwrap();
        assert_eq!(vanishing_poly(&m, 1, 0).unwrap().to_string(), "x1^2");
        let empty = EdgeSet::new(q, vec![]).unwrap();
        assert_eq!(vanishing_poly(&empty, 1, 0), Err(Error::EmptyEdge));
        assert_eq!(vanishing_poly(&e, 2, 1).unwrap().to_string(), "x2^3 - 7*x2 + 6");
    }

    #[test]
    fn lacunarity_examples() {
        let q = Field::Rationals;
        let p = |s: &str, n| parse_polynomial(s, q, n).unwrap();
        assert!(is_lacunary(&p("x1^5 - 1", 1), &lam(&[4])).unwrap());
        assert!(!is_lacunary(&p("x1^5 - 1", 1), &lam(&[5])).unwrap());
        let cubic = p("x1^3 - 7*x1 + 6", 1);
        assert!(is_lacunary(&cubic, &lam(&[1])).unwrap());
        assert!(!is_lacunary(&cubic, &lam(&[2])).unwrap());
        let g = p("x1^2*x2^5 + x2^5", 2);
        assert_eq!(
            lacunary_witness(&g, &lam(&[1, 0])).unwrap(),
            Some(ExponentVector::new(&[2, 5]))
        );
        assert!(!is_lacunary(&g, &lam(&[2, 0])).unwrap());
        // no ⊑-maximum
        assert!(!is_lacunary(&p("x1^2 + x2^3", 2), &lam(&[0, 0])).unwrap());
        assert_eq!(
            is_lacunary(&Polynomial::zero(q, 1), &lam(&[0])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn null_indices() {
        let f11 = Field::prime(11).unwrap();
        let roots: Vec<i64> = (0..5).map(|k| 3i64.pow(k) % 11).collect();
        let mut sorted = roots.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3, 4, 5, 9]);
        let e = EdgeSet::from_i64(f11, &roots).unwrap();
        assert_eq!(max_null_index(&e).unwrap(), 4);
        let q = Field::Rationals;
        assert_eq!(max_null_index(&EdgeSet::from_i64(q, &[1, 2, -3]).unwrap()).unwrap(), 1);
        assert_eq!(max_null_index(&EdgeSet::from_i64(q, &[7]).unwrap()).unwrap(), 0);
        assert_eq!(max_null_index(&EdgeSet::from_i64(q, &[0]).unwrap()).unwrap(), 1);
        assert_eq!(
            max_null_index(&MultisetEdge::from_i64(q, &[(0, 3)]).unwrap()).unwrap(),
            3
        );
        assert!(is_null(&EdgeSet::new(q, vec![]).unwrap(), 9).unwrap());
    }

    #[test]
    fn null_index_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f13 = Field::prime(13).unwrap();
        for _ in 0..300 {
            let k = rng.gen_range(1..=6);
            let mut vals: Vec<i64> = (0..13).collect();
            for i in 0..k {
                let j = rng.gen_range(i..13);
                vals.swap(i, j);
            }
            let e = EdgeSet::from_i64(f13, &vals[..k]).unwrap();
            let top = max_null_index(&e).unwrap();
            for l in 0..=top {
                assert!(is_null(&e, l).unwrap());
            }
            if top < k as u32 {
                assert!(!is_null(&e, top + 1).unwrap());
            }
        }
    }

    #[test]
    fn lacunary_leading_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f7 = Field::prime(7).unwrap();
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let l = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..3)).collect());
            let g = random_lacunary(&mut rng, f7, &l, 6, 5);
            let mu = lacunary_witness(&g, &l).unwrap().expect("generator is lacunary");
            for o in MonomialOrder::ALL {
                assert_eq!(g.leading_exponent(o).unwrap(), mu);
            }
        }
    }

    #[test]
    fn products_and_quotients_stay_lacunary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for round in 0..300 {
            let field = Field::prime([5, 7, 11, 13][round % 4]).unwrap();
            let n = rng.gen_range(1..=3);
            let l = LacunarityVector::new((0..n).map(|_| rng.gen_range(0..3)).collect());
            let g = random_lacunary(&mut rng, field, &l, 5, 4);
            let h = random_lacunary(&mut rng, field, &l, 5, 4);
            let f = &g * &h;
            assert!(is_lacunary(&f, &l).unwrap(), "{g:?} * {h:?}");
            let t = divide(&f, std::slice::from_ref(&g), MonomialOrder::GrLex).unwrap();
            assert!(t.remainder.is_zero());
            let cof = &t.quotients()[0];
            assert_eq!(cof, &h);
            assert!(is_lacunary(cof, &l).unwrap());
        }
    }
}
