//! Finite point sets: grids `⨉ S_i`, punctured grids `X ∖ Y` and multigrids.
//!
//! Points are enumerated in edge order with the first coordinate most
//! significant, so point `k` of a grid is the mixed-radix expansion of `k`.
//!
//! JSON form (values are integers or `"a/b"` strings):
//!
//! ```text
//! {"field":{"kind":"gfp","p":11}, "X":[[1,3,4,5,9],[1,3,4,5,9]], "Y":[[],[]]}
//! {"field":{"kind":"q"}, "S":[[[0,2],[1,1]]]}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A finite set of distinct field elements, kept in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    field: Field,
    elements: Vec<Scalar>,
}

impl EdgeSet {
    /// Empty edges are allowed here; they are needed for `Y_i`.
    pub fn new(field: Field, elements: Vec<Scalar>) -> Result<Self> {
        for (k, a) in elements.iter().enumerate() {
            if a.field() != field {
                return Err(Error::MixedFields);
            }
            if elements[..k].contains(a) {
                return Err(Error::DuplicateElement(a.to_string()));
            }
        }
        Ok(EdgeSet { field, elements })
    }

    pub fn from_i64(field: Field, values: &[i64]) -> Result<Self> {
        Self::new(field, values.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        self.elements.contains(a)
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }
}

/// A multiset edge: distinct domain `U_i` with multiplicities `S_i(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetEdge {
    field: Field,
    entries: Vec<(Scalar, u32)>,
}

impl MultisetEdge {
    pub fn new(field: Field, entries: Vec<(Scalar, u32)>) -> Result<Self> {
        EdgeSet::new(field, entries.iter().map(|(u, _)| u.clone()).collect())?;
        Ok(MultisetEdge { field, entries })
    }

    pub fn from_i64(field: Field, entries: &[(i64, u32)]) -> Result<Self> {
        Self::new(field, entries.iter().map(|&(u, m)| (field.from_i64(u), m)).collect())
    }

    /// Multiplicity one everywhere.
    pub fn from_edge(edge: &EdgeSet) -> Self {
        MultisetEdge {
            field: edge.field,
            entries: edge.elements.iter().map(|a| (a.clone(), 1)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[(Scalar, u32)] {
        &self.entries
    }

    pub fn domain(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter().map(|(u, _)| u)
    }

    pub fn multiplicity(&self, u: &Scalar) -> u32 {
        self.entries.iter().find(|(v, _)| v == u).map_or(0, |(_, m)| *m)
    }

    /// `‖S_i‖ = Σ_u S_i(u)`.
    pub fn weight(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weight() == 0
    }
}

/// Mixed-radix decoding of `index` over `sizes`, first coordinate most
/// significant.
pub fn decode_index(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    out
}

fn product(sizes: impl Iterator<Item = usize>) -> usize {
    sizes.fold(1usize, |acc, s| acc.saturating_mul(s))
}

/// A grid `⨉ S_i` with nonempty edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    field: Field,
    edges: Vec<EdgeSet>,
}

impl GridSpec {
    pub fn new(field: Field, edges: Vec<EdgeSet>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        for e in &edges {
            if e.field != field {
                return Err(Error::MixedFields);
            }
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
        }
        Ok(GridSpec { field, edges })
    }

    pub fn from_i64(field: Field, edges: &[&[i64]]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|e| EdgeSet::from_i64(field, e))
            .collect::<Result<_>>()?;
        Self::new(field, edges)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeSet] {
        &self.edges
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.edges.iter().map(EdgeSet::len).collect()
    }

    /// Number of points (saturating).
    pub fn len(&self) -> usize {
        product(self.edges.iter().map(EdgeSet::len))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, index: usize) -> Vec<Scalar> {
        decode_index(index, &self.sizes())
            .into_iter()
            .zip(&self.edges)
            .map(|(k, e)| e.elements[k].clone())
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }

    pub fn contains(&self, point: &[Scalar]) -> bool {
        point.len() == self.nvars() && point.iter().zip(&self.edges).all(|(a, e)| e.contains(a))
    }
}

/// `X ∖ Y` with `Y_i ⊆ X_i`. `Y_i` may be empty, in which case `Y` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedGridSpec {
    x: GridSpec,
    y: Vec<EdgeSet>,
}

impl PuncturedGridSpec {
    pub fn new(x: GridSpec, y: Vec<EdgeSet>) -> Result<Self> {
        if y.len() != x.nvars() {
            return Err(Error::ArityMismatch {
                expected: x.nvars(),
                found: y.len(),
            });
        }
        for (i, (yi, xi)) in y.iter().zip(&x.edges).enumerate() {
            if yi.field != x.field {
                return Err(Error::MixedFields);
            }
            if !yi.is_subset_of(xi) {
                return Err(Error::PunctureNotContained { var: i + 1 });
            }
        }
        Ok(PuncturedGridSpec { x, y })
    }

    pub fn from_i64(field: Field, x: &[&[i64]], y: &[&[i64]]) -> Result<Self> {
        let xg = GridSpec::from_i64(field, x)?;
        let y = y.iter().map(|e| EdgeSet::from_i64(field, e)).collect::<Result<_>>()?;
        Self::new(xg, y)
    }

    pub fn field(&self) -> Field {
        self.x.field
    }

    pub fn nvars(&self) -> usize {
        self.x.nvars()
    }

    pub fn x(&self) -> &GridSpec {
        &self.x
    }

    pub fn y(&self) -> &[EdgeSet] {
        &self.y
    }

    /// `a_i = |X_i|`.
    pub fn a(&self) -> Vec<usize> {
        self.x.sizes()
    }

    /// `b_i = |Y_i|`.
    pub fn b(&self) -> Vec<usize> {
        self.y.iter().map(EdgeSet::len).collect()
    }

    pub fn in_y(&self, point: &[Scalar]) -> bool {
        point.iter().zip(&self.y).all(|(a, e)| e.contains(a))
    }

    /// `|X| − |Y|`.
    pub fn len(&self) -> usize {
        self.x.len() - product(self.y.iter().map(EdgeSet::len))
    }

    /// True iff `X = Y`.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points of `X ∖ Y` in the enumeration order of `X`.
    pub fn points(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        self.x.points().filter(move |p| !self.in_y(p))
    }

    pub fn contains(&self, point: &[Scalar]) -> bool {
        self.x.contains(point) && !self.in_y(point)
    }
}

/// A multigrid `⨉ S_i` of multiset edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetGridSpec {
    field: Field,
    edges: Vec<MultisetEdge>,
}

impl MultisetGridSpec {
    pub fn new(field: Field, edges: Vec<MultisetEdge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        for e in &edges {
            if e.field != field {
                return Err(Error::MixedFields);
            }
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
        }
        Ok(MultisetGridSpec { field, edges })
    }

    pub fn from_grid(grid: &GridSpec) -> Self {
        MultisetGridSpec {
            field: grid.field,
            edges: grid.edges.iter().map(MultisetEdge::from_edge).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[MultisetEdge] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<u32> {
        self.edges.iter().map(MultisetEdge::weight).collect()
    }

    /// Number of domain points `∏ |U_i|`.
    pub fn len(&self) -> usize {
        product(self.edges.iter().map(|e| e.entries.len()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Domain point `k` together with its multiplicity vector `S(u)`.
    pub fn point(&self, index: usize) -> (Vec<Scalar>, Vec<u32>) {
        let sizes: Vec<usize> = self.edges.iter().map(|e| e.entries.len()).collect();
        decode_index(index, &sizes)
            .into_iter()
            .zip(&self.edges)
            .map(|(k, e)| e.entries[k].clone())
            .unzip()
    }

    pub fn points(&self) -> impl Iterator<Item = (Vec<Scalar>, Vec<u32>)> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }
}

/// Any of the three point-set shapes, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridInput {
    Grid(GridSpec),
    Punctured(PuncturedGridSpec),
    Multigrid(MultisetGridSpec),
}

#[derive(Serialize, Deserialize)]
struct GridDocument {
    field: Field,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    x: Option<Vec<Vec<Value>>>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<Vec<Value>>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    s: Option<Vec<Vec<(Value, u32)>>>,
}

fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::Invalid(format!("expected a number or string, got {other}"))),
    }
}

fn scalar_to_json(a: &Scalar) -> Value {
    let text = a.to_string();
    match text.parse::<i64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(text),
    }
}

fn edge_from_json(field: Field, values: &[Value]) -> Result<EdgeSet> {
    EdgeSet::new(
        field,
        values
            .iter()
            .map(|v| scalar_from_json(field, v))
            .collect::<Result<_>>()?,
    )
}

impl GridInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GridDocument = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("grid JSON: {e}")))?;
        let field = doc.field.validate()?;
        match (doc.x, doc.y, doc.s) {
            (Some(x), y, None) => {
                let edges = x.iter().map(|e| edge_from_json(field, e)).collect::<Result<Vec<_>>>()?;
                let grid = GridSpec::new(field, edges)?;
                match y {
                    None => Ok(GridInput::Grid(grid)),
                    Some(y) => {
                        let y = y.iter().map(|e| edge_from_json(field, e)).collect::<Result<_>>()?;
                        Ok(GridInput::Punctured(PuncturedGridSpec::new(grid, y)?))
                    }
                }
            }
            (None, None, Some(s)) => {
                let edges = s
                    .iter()
                    .map(|e| {
                        let entries = e
                            .iter()
                            .map(|(v, m)| Ok((scalar_from_json(field, v)?, *m)))
                            .collect::<Result<_>>()?;
                        MultisetEdge::new(field, entries)
                    })
                    .collect::<Result<_>>()?;
                Ok(GridInput::Multigrid(MultisetGridSpec::new(field, edges)?))
            }
            _ => Err(Error::Invalid(
                "grid JSON needs \"X\" (optionally with \"Y\") or \"S\"".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let edge = |e: &EdgeSet| e.elements.iter().map(scalar_to_json).collect::<Vec<_>>();
        let doc = match self {
            GridInput::Grid(g) => GridDocument {
                field: g.field,
                x: Some(g.edges.iter().map(edge).collect()),
                y: None,
                s: None,
            },
            GridInput::Punctured(p) => GridDocument {
                field: p.field(),
                x: Some(p.x.edges.iter().map(edge).collect()),
                y: Some(p.y.iter().map(edge).collect()),
                s: None,
            },
            GridInput::Multigrid(m) => GridDocument {
                field: m.field,
                x: None,
                y: None,
                s: Some(
                    m.edges
                        .iter()
                        .map(|e| e.entries.iter().map(|(u, k)| (scalar_to_json(u), *k)).collect())
                        .collect(),
                ),
            },
        };
        serde_json::to_string(&doc).expect("grid documents serialize")
    }

    pub fn field(&self) -> Field {
        match self {
            GridInput::Grid(g) => g.field(),
            GridInput::Punctured(p) => p.field(),
            GridInput::Multigrid(m) => m.field(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            GridInput::Grid(g) => g.nvars(),
            GridInput::Punctured(p) => p.nvars(),
            GridInput::Multigrid(m) => m.nvars(),
        }
    }

    /// The input as a punctured grid; a plain grid gets empty punctures.
    pub fn to_punctured(&self) -> Result<PuncturedGridSpec> {
        match self {
            GridInput::Grid(g) => {
                let empty = g
                    .edges
                    .iter()
                    .map(|_| EdgeSet {
                        field: g.field,
                        elements: Vec::new(),
                    })
                    .collect();
                PuncturedGridSpec::new(g.clone(), empty)
            }
            GridInput::Punctured(p) => Ok(p.clone()),
            GridInput::Multigrid(_) => Err(Error::Invalid("expected X (and optionally Y), found S".into())),
        }
    }

    /// `X` alone, also accepted when every puncture is empty.
    pub fn to_plain_grid(&self) -> Result<GridSpec> {
        match self {
            GridInput::Grid(g) => Ok(g.clone()),
            GridInput::Punctured(p) if p.y.iter().all(EdgeSet::is_empty) => Ok(p.x.clone()),
            GridInput::Punctured(_) => Err(Error::Invalid("expected a grid without punctures".into())),
            GridInput::Multigrid(_) => Err(Error::Invalid("expected X, found S".into())),
        }
    }

    /// The input as a multigrid; a plain grid gets multiplicity one everywhere.
    pub fn to_multigrid(&self) -> Result<MultisetGridSpec> {
        match self {
            GridInput::Multigrid(m) => Ok(m.clone()),
            _ => Ok(MultisetGridSpec::from_grid(&self.to_plain_grid()?)),
        }
    }

    /// The outer grid `X`; punctures are ignored and multigrids are flattened
    /// to their domains.
    pub fn outer_grid(&self) -> GridSpec {
        match self {
            GridInput::Grid(g) => g.clone(),
            GridInput::Punctured(p) => p.x.clone(),
            GridInput::Multigrid(m) => GridSpec {
                field: m.field,
                edges: m
                    .edges
                    .iter()
                    .map(|e| EdgeSet {
                        field: m.field,
                        elements: e.domain().cloned().collect(),
                    })
                    .collect(),
            },
        }
    }
}
