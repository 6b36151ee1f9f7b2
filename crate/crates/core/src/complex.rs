//! Anti-Vietoris-Rips (AVR) and transport anti-Vietoris-Rips (TAVR)
//! complexes, their anti-filtrations, and independence complexes.
//!
//! Scale convention: a simplex is present at scale `r` when its value is
//! `>= r` (up to the threshold slack), so complexes shrink as `r` grows.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::clique::for_each_clique;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::FiniteMetricSpace;
use crate::scalar::{at_least, Scalar};

/// Default maximum simplex dimension.
pub const DEFAULT_DIM_CAP: usize = 8;

/// Which construction produced a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Avr,
    Tavr,
    Independence,
    Custom,
}

/// A simplex with its filtration value.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex<T> {
    pub vertices: Vec<usize>,
    pub value: T,
}

impl<T> Simplex<T> {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplicial complex with per-simplex scale values, stored in canonical
/// order: decreasing value, then increasing cardinality, then lexicographic.
#[derive(Clone, Debug)]
pub struct FilteredComplex<T: Scalar> {
    n_vertices: usize,
    dim_cap: usize,
    flavor: Flavor,
    simplices: Vec<Simplex<T>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Canonical comparison used for all complexes.
pub fn canonical_cmp<T: Scalar>(a: &Simplex<T>, b: &Simplex<T>) -> Ordering {
    b.value
        .partial_cmp(&a.value)
        .unwrap_or(Ordering::Equal)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

impl<T: Scalar> FilteredComplex<T> {
    fn assemble(n_vertices: usize, dim_cap: usize, flavor: Flavor, mut simplices: Vec<Simplex<T>>) -> Self {
        simplices.sort_by(canonical_cmp);
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.clone(), i))
            .collect();
        Self { n_vertices, dim_cap, flavor, simplices, index }
    }

    /// Builds a complex from explicit simplices, checking indices, the
    /// dimension cap, face closure and monotonicity of values.
    pub fn from_simplices(
        n_vertices: usize,
        dim_cap: usize,
        flavor: Flavor,
        simplices: Vec<(Vec<usize>, T)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::with_capacity(simplices.len());
        for (mut v, value) in simplices {
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                return Err(Error::EmptySubset);
            }
            if let Some(&index) = v.iter().find(|&&i| i >= n_vertices) {
                return Err(Error::IndexOutOfRange { index, len: n_vertices });
            }
            if v.len() > dim_cap + 1 {
                return Err(Error::InvalidParameter(format!(
                    "simplex of dimension {} exceeds cap {dim_cap}",
                    v.len() - 1
                )));
            }
            if value.is_nan() {
                return Err(Error::InvalidParameter("NaN filtration value".into()));
            }
            if seen.insert(v.clone()) {
                list.push(Simplex { vertices: v, value });
            }
        }
        let c = Self::assemble(n_vertices, dim_cap, flavor, list);
        c.validate()?;
        Ok(c)
    }

    /// Downward closure of `maximal`, every simplex at value `+inf`.
    pub fn from_maximal_simplices(n_vertices: usize, dim_cap: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all = BTreeSet::new();
        for m in maximal {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            if m.len() > dim_cap + 1 {
                return Err(Error::InvalidParameter("maximal simplex exceeds dimension cap".into()));
            }
            for mask in 1u64..(1 << m.len()) {
                all.insert(
                    m.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect::<Vec<_>>(),
                );
            }
        }
        Self::from_simplices(
            n_vertices,
            dim_cap,
            Flavor::Custom,
            all.into_iter().map(|s| (s, T::infinity())).collect(),
        )
    }

    /// Checks face closure and that every face precedes its cofaces.
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.simplices.iter().enumerate() {
            if i > 0 && canonical_cmp(&self.simplices[i - 1], s) == Ordering::Greater {
                return Err(Error::InvalidFiltrationOrder { index: i });
            }
            if s.vertices.len() < 2 {
                continue;
            }
            for face in facets(&s.vertices) {
                match self.index.get(&face) {
                    None => return Err(Error::NotFaceClosed { index: i }),
                    Some(&j) if j >= i || self.simplices[j].value < s.value => {
                        return Err(Error::InvalidFiltrationOrder { index: i })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex<T>] {
        &self.simplices
    }

    /// Position of a sorted vertex list in canonical order.
    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        v.dedup();
        self.index.contains_key(&v)
    }

    /// Largest simplex dimension present.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Number of simplices in each dimension `0..=dimension`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// Sorted vertex lists, for set comparisons.
    pub fn simplex_set(&self) -> BTreeSet<Vec<usize>> {
        self.simplices.iter().map(|s| s.vertices.clone()).collect()
    }

    /// Subcomplex of simplices with value `>= r`.
    pub fn slice(&self, r: T) -> FilteredComplex<T> {
        let kept = self
            .simplices
            .iter()
            .filter(|s| at_least(s.value, r))
            .cloned()
            .collect();
        Self::assemble(self.n_vertices, self.dim_cap, self.flavor, kept)
    }

    /// Copy with simplices listed in a different order; used to exercise
    /// order validation.
    pub fn with_order(&self, order: &[usize]) -> Result<FilteredComplex<T>> {
        if order.len() != self.len() {
            return Err(Error::InvalidParameter("order length mismatch".into()));
        }
        let simplices: Vec<Simplex<T>> = order.iter().map(|&i| self.simplices[i].clone()).collect();
        let index = simplices.iter().enumerate().map(|(i, s)| (s.vertices.clone(), i)).collect();
        Ok(Self { simplices, index, ..self.clone() })
    }
}

/// The codimension-one faces of a sorted simplex.
pub fn facets(vertices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..vertices.len()).map(move |skip| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Graph with `u ~ v` iff `d(u, v) >= r`.
pub fn far_graph<T: Scalar>(space: &FiniteMetricSpace<T>, r: T) -> Graph {
    space.threshold_graph(r, true)
}

/// Graph with `u ~ v` iff `d(u, v) < r`; the complement of [`far_graph`].
pub fn near_graph<T: Scalar>(space: &FiniteMetricSpace<T>, r: T) -> Graph {
    space.threshold_graph(r, false)
}

/// `AVR(X; r)`: the clique complex of the far graph, each simplex valued by
/// its spread.
pub fn avr_complex<T: Scalar>(space: &FiniteMetricSpace<T>, r: T, dim_cap: usize) -> FilteredComplex<T> {
    let g = far_graph(space, r);
    let mut out = Vec::new();
    for_each_clique(&g, dim_cap + 1, |c| {
        out.push(Simplex { vertices: c.to_vec(), value: space.spread_unchecked(c) });
    });
    FilteredComplex::assemble(space.len(), dim_cap, Flavor::Avr, out)
}

/// Bottleneck of the minimum spanning tree of `subset`: the largest scale at
/// which `subset` splits into two nonempty parts with all cross distances at
/// least that scale.
pub fn bipartition_value<T: Scalar>(space: &FiniteMetricSpace<T>, subset: &[usize]) -> T {
    let k = subset.len();
    if k < 2 {
        return T::infinity();
    }
    let mut in_tree = vec![false; k];
    let mut best = vec![T::infinity(); k];
    in_tree[0] = true;
    for j in 1..k {
        best[j] = space.d(subset[0], subset[j]);
    }
    let mut bottleneck = T::neg_infinity();
    for _ in 1..k {
        let (j, w) = (0..k)
            .filter(|&j| !in_tree[j])
            .map(|j| (j, best[j]))
            .fold((usize::MAX, T::infinity()), |a, b| if b.1 < a.1 || a.0 == usize::MAX { b } else { a });
        in_tree[j] = true;
        bottleneck = bottleneck.max(w);
        for l in 0..k {
            if !in_tree[l] {
                best[l] = best[l].min(space.d(subset[j], subset[l]));
            }
        }
    }
    bottleneck
}

/// Largest scale at which some point outside `subset` is far from all of it,
/// which makes `subset` a face of a two-cluster simplex.
fn witness_value<T: Scalar>(space: &FiniteMetricSpace<T>, subset: &[usize]) -> T {
    (0..space.len())
        .filter(|y| !subset.contains(y))
        .map(|y| subset.iter().map(|&s| space.d(s, y)).fold(T::infinity(), T::min))
        .fold(T::neg_infinity(), T::max)
}

/// TAVR value of a simplex: the largest `r` at which it belongs to
/// `TAVR(X; r)`; `+inf` for vertices.
pub fn tavr_value<T: Scalar>(space: &FiniteMetricSpace<T>, subset: &[usize]) -> Result<T> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    space.check_indices(subset)?;
    Ok(tavr_value_unchecked(space, subset))
}

fn tavr_value_unchecked<T: Scalar>(space: &FiniteMetricSpace<T>, subset: &[usize]) -> T {
    if subset.len() == 1 {
        return T::infinity();
    }
    bipartition_value(space, subset).max(witness_value(space, subset))
}

/// Enumerates increasing vertex lists accepted by a face-monotone predicate.
fn enumerate_monotone<T: Scalar, F: Fn(&[usize]) -> Option<T>>(
    n: usize,
    max_size: usize,
    value: F,
) -> Vec<Simplex<T>> {
    fn rec<T: Scalar, F: Fn(&[usize]) -> Option<T>>(
        n: usize,
        max_size: usize,
        value: &F,
        stack: &mut Vec<usize>,
        out: &mut Vec<Simplex<T>>,
    ) {
        let start = stack.last().map_or(0, |&v| v + 1);
        for v in start..n {
            stack.push(v);
            if let Some(val) = value(stack) {
                out.push(Simplex { vertices: stack.clone(), value: val });
                if stack.len() < max_size {
                    rec(n, max_size, value, stack, out);
                }
            }
            stack.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_size, &value, &mut Vec::new(), &mut out);
    out
}

/// `TAVR(X; r)` truncated at `dim_cap`: simplices splitting into two far
/// clusters, together with all their faces.
pub fn tavr_complex<T: Scalar>(space: &FiniteMetricSpace<T>, r: T, dim_cap: usize) -> FilteredComplex<T> {
    let out = enumerate_monotone(space.len(), dim_cap + 1, |s| {
        let v = tavr_value_unchecked(space, s);
        at_least(v, r).then_some(v)
    });
    FilteredComplex::assemble(space.len(), dim_cap, Flavor::Tavr, out)
}

/// Every simplex that appears at some scale `r > 0`, with its value.
pub fn anti_filtration<T: Scalar>(
    space: &FiniteMetricSpace<T>,
    dim_cap: usize,
    flavor: Flavor,
) -> Result<FilteredComplex<T>> {
    let out = match flavor {
        Flavor::Avr => {
            let mut positive = Graph::new(space.len());
            for u in 0..space.len() {
                for v in u + 1..space.len() {
                    if space.d(u, v) > T::zero() {
                        positive.insert_unchecked(u, v);
                    }
                }
            }
            let mut out = Vec::new();
            for_each_clique(&positive, dim_cap + 1, |c| {
                out.push(Simplex { vertices: c.to_vec(), value: space.spread_unchecked(c) });
            });
            out
        }
        Flavor::Tavr => enumerate_monotone(space.len(), dim_cap + 1, |s| {
            let v = tavr_value_unchecked(space, s);
            (v > T::zero()).then_some(v)
        }),
        other => {
            return Err(Error::InvalidParameter(format!("no anti-filtration for flavor {other:?}")))
        }
    };
    Ok(FilteredComplex::assemble(space.len(), dim_cap, flavor, out))
}

/// Independence complex of a graph (cliques of the complement), valued `+inf`.
pub fn independence_complex<T: Scalar>(graph: &Graph, dim_cap: usize) -> FilteredComplex<T> {
    let comp = graph.complement();
    let mut out = Vec::new();
    for_each_clique(&comp, dim_cap + 1, |c| {
        out.push(Simplex { vertices: c.to_vec(), value: T::infinity() });
    });
    FilteredComplex::assemble(graph.len(), dim_cap, Flavor::Independence, out)
}

/// Lowest vertex `v` such that joining `v` to any simplex (within the
/// dimension cap) stays in the complex.
pub fn is_cone<T: Scalar>(complex: &FilteredComplex<T>) -> Option<usize> {
    let verts: BTreeSet<usize> = complex
        .simplices()
        .iter()
        .filter(|s| s.vertices.len() == 1)
        .map(|s| s.vertices[0])
        .collect();
    verts.into_iter().find(|&v| {
        complex.simplices().iter().all(|s| {
            if s.vertices.contains(&v) || s.vertices.len() > complex.dim_cap() {
                return true;
            }
            let mut joined = s.vertices.clone();
            joined.push(v);
            joined.sort_unstable();
            complex.index_of(&joined).is_some()
        })
    })
}

/// Alternating count of simplices by dimension.
pub fn euler_characteristic<T: Scalar>(complex: &FilteredComplex<T>) -> i64 {
    if complex.dimension() == Some(complex.dim_cap()) {
        log::warn!("complex reaches its dimension cap; Euler characteristic may be truncated");
    }
    complex
        .simplices()
        .iter()
        .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
        .sum()
}
