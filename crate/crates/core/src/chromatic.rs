//! Borsuk graphs, colorings and graph homomorphisms.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::clique::maximum_clique;
use crate::complex::far_graph;
use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::metric::{simplex_constants, FiniteMetricSpace};
use crate::scalar::{at_least, Scalar};
use crate::vector::dot;

/// Default vertex limit for [`exact_chromatic`].
pub const DEFAULT_CHROMATIC_LIMIT: usize = 40;

/// Vertex order for [`greedy_coloring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyOrder {
    Natural,
    DegreeDescending,
}

/// Borsuk graph of a sample: points adjacent iff at distance `>= alpha`.
pub fn borsuk_graph<T: Scalar>(space: &FiniteMetricSpace<T>, alpha: T) -> Graph {
    far_graph(space, alpha)
}

/// Number of distinct colors (`max + 1`).
pub fn color_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&c| c + 1)
}

/// Monochromatic edges of a coloring.
pub fn coloring_violations(graph: &Graph, colors: &[usize]) -> Result<Vec<(usize, usize)>> {
    if colors.len() != graph.len() {
        return Err(Error::PartialColoring { found: colors.len(), expected: graph.len() });
    }
    Ok(graph.edges().into_iter().filter(|&(u, v)| colors[u] == colors[v]).collect())
}

/// `true` iff no edge is monochromatic.
pub fn verify_coloring(graph: &Graph, colors: &[usize]) -> Result<bool> {
    Ok(coloring_violations(graph, colors)?.is_empty())
}

/// First-fit coloring in the given order.
pub fn greedy_coloring(graph: &Graph, order: GreedyOrder) -> Vec<usize> {
    let n = graph.len();
    let mut verts: Vec<usize> = (0..n).collect();
    if order == GreedyOrder::DegreeDescending {
        verts.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    }
    let mut colors = vec![usize::MAX; n];
    for v in verts {
        let used: Vec<usize> = graph.neighbors(v).iter().map(|u| colors[u]).filter(|&c| c != usize::MAX).collect();
        colors[v] = (0..).find(|c| !used.contains(c)).expect("unbounded");
    }
    colors
}

/// Chromatic number with an optimal coloring, by clique lower bound,
/// greedy upper bound and saturation-ordered backtracking.
pub fn exact_chromatic(graph: &Graph, limit: usize) -> Result<(usize, Vec<usize>)> {
    let n = graph.len();
    if n > limit {
        return Err(Error::SizeLimitExceeded { size: n, limit });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let lower = maximum_clique(graph).len();
    let mut best = greedy_coloring(graph, GreedyOrder::DegreeDescending);
    let mut upper = color_count(&best);
    for k in lower..upper {
        if let Some(c) = k_coloring(graph, k) {
            best = c;
            upper = k;
            break;
        }
    }
    Ok((upper, best))
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(graph: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = graph.len();
    let mut colors = vec![usize::MAX; n];
    fn rec(g: &Graph, k: usize, colors: &mut [usize], done: usize, used: usize) -> bool {
        let n = g.len();
        if done == n {
            return true;
        }
        let mut pick = None;
        let mut best = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let mut seen = 0u64;
            let mut sat = 0;
            for u in g.neighbors(v).iter() {
                let c = colors[u];
                if c != usize::MAX && c < 64 && seen >> c & 1 == 0 {
                    seen |= 1 << c;
                    sat += 1;
                }
            }
            let key = (sat, g.degree(v));
            if pick.is_none() || key > best {
                pick = Some(v);
                best = key;
            }
        }
        let v = pick.expect("uncolored vertex");
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|u| colors[u] != c) {
                colors[v] = c;
                if rec(g, k, colors, done + 1, used.max(c + 1)) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    rec(graph, k, &mut colors, 0, 0).then_some(colors)
}

/// Vertices of a regular `(n+1)`-simplex inscribed in `S^n`, built from the
/// Helmert basis of the hyperplane `sum x = 0` in `R^{n+2}`.
pub fn regular_simplex<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let m = n + 2;
    let scale = (T::from_usize_lossy(m) / T::from_usize_lossy(m - 1)).sqrt();
    (0..m)
        .map(|i| {
            (1..m)
                .map(|k| {
                    let kk = T::from_usize_lossy(k);
                    let norm = (kk * (kk + T::one())).sqrt();
                    let v = match i.cmp(&k) {
                        std::cmp::Ordering::Less => T::one(),
                        std::cmp::Ordering::Equal => -kk,
                        std::cmp::Ordering::Greater => T::zero(),
                    };
                    scale * v / norm
                })
                .collect()
        })
        .collect()
}

/// Color of a unit vector: the facet of the regular simplex whose centroid
/// direction has the largest inner product with it (facet `j` is opposite
/// vertex `j`). Ties go to the lower index.
pub fn face_color<T: Scalar>(vertices: &[Vec<T>], x: &[T]) -> usize {
    let mut best = 0;
    let mut best_ip = T::neg_infinity();
    for (j, v) in vertices.iter().enumerate() {
        let ip = -dot(v, x);
        if ip > best_ip {
            best_ip = ip;
            best = j;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceColoringReport {
    pub colors: Vec<usize>,
    pub num_colors: usize,
    pub proper: bool,
    pub violations: usize,
    pub alpha: f64,
    pub s_n: f64,
}

/// Colors a sphere sample by simplex facets and checks properness on the
/// Borsuk graph at `alpha`; properness is guaranteed for `alpha > s_n`.
pub fn simplex_face_coloring<T: Scalar>(space: &FiniteMetricSpace<T>, alpha: T) -> Result<FaceColoringReport> {
    let pts = space.ambient().ok_or(Error::NoAmbient)?;
    let n = pts.first().map_or(1, |p| p.len().saturating_sub(1)).max(1);
    let verts = regular_simplex::<T>(n);
    let colors: Vec<usize> = pts.iter().map(|p| face_color(&verts, p)).collect();
    let g = borsuk_graph(space, alpha);
    let violations = coloring_violations(&g, &colors)?.len();
    Ok(FaceColoringReport {
        num_colors: {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        },
        colors,
        proper: violations == 0,
        violations,
        alpha: alpha.to_f64_lossy(),
        s_n: simplex_constants::<f64>(n)?.s_n,
    })
}

/// Circular `r`-coloring check: adjacent vertices get angles at circular
/// distance `>= 2 pi / r`.
pub fn circular_coloring_check<T: Scalar>(graph: &Graph, angles: &[T], r_circ: T) -> Result<bool> {
    if angles.len() != graph.len() {
        return Err(Error::PartialColoring { found: angles.len(), expected: graph.len() });
    }
    let tau = T::TAU();
    let need = tau / r_circ;
    Ok(graph.edges().into_iter().all(|(u, v)| {
        let d = (angles[u] - angles[v]).abs() % tau;
        at_least(d.min(tau - d), need)
    }))
}

/// `K_n -> Bor(S^1; 2 pi / n)`: vertex `k` goes to angle `2 pi k / n`.
pub fn kn_to_borsuk<T: Scalar>(n: usize) -> Vec<T> {
    (0..n).map(|k| T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(n)).collect()
}

/// `Bor(S^1; 2 pi / n) -> K_n`: the bin `[2 pi k / n, 2 pi (k+1) / n)` of an
/// angle; bin edges are snapped within the threshold slack.
pub fn borsuk_to_kn<T: Scalar>(angle: T, n: usize) -> usize {
    let tau = T::TAU();
    let a = ((angle % tau) + tau) % tau;
    let x = a * T::from_usize_lossy(n) / tau;
    let near = x.round();
    let k = if (x - near).abs() <= T::threshold_tol() { near } else { x.floor() };
    k.to_usize().unwrap_or(0) % n.max(1)
}

/// `true` iff `f` maps every edge of `g` to an edge of `h`.
pub fn verify_homomorphism(g: &Graph, h: &Graph, f: &[usize]) -> Result<bool> {
    if f.len() != g.len() || f.iter().any(|&t| t >= h.len()) {
        return Err(Error::PartialMap { found: f.len(), expected: g.len() });
    }
    Ok(g.edges().into_iter().all(|(u, v)| h.has_edge(f[u], f[v])))
}

/// Backtracking search for a homomorphism `g -> h` with forward checking.
///
/// `Ok(Some(map))` when one is found, `Ok(None)` when the search space is
/// exhausted, `Err(Timeout)` when the budget runs out first.
pub fn graph_homomorphism_search(g: &Graph, h: &Graph, budget: Duration) -> Result<Option<Vec<usize>>> {
    let start = Instant::now();
    let (n, m) = (g.len(), h.len());
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if m == 0 {
        return Ok(None);
    }
    let mut non_isolated = BitSet::new(m);
    for a in 0..m {
        if h.degree(a) > 0 {
            non_isolated.insert(a);
        }
    }
    let domains: Vec<BitSet> = (0..n)
        .map(|u| if g.degree(u) > 0 { non_isolated.clone() } else { BitSet::full(m) })
        .collect();
    let mut assign = vec![usize::MAX; n];
    let mut nodes = 0u64;
    match search(g, h, domains, &mut assign, &start, budget, &mut nodes) {
        Some(true) => Ok(Some(assign)),
        Some(false) => Ok(None),
        None => Err(Error::Timeout),
    }
}

fn search(
    g: &Graph,
    h: &Graph,
    domains: Vec<BitSet>,
    assign: &mut Vec<usize>,
    start: &Instant,
    budget: Duration,
    nodes: &mut u64,
) -> Option<bool> {
    *nodes += 1;
    if nodes.is_multiple_of(1024) && start.elapsed() > budget {
        return None;
    }
    let pick = (0..g.len())
        .filter(|&u| assign[u] == usize::MAX)
        .min_by_key(|&u| (domains[u].count(), std::cmp::Reverse(g.degree(u))));
    let Some(u) = pick else { return Some(true) };
    for a in domains[u].iter().collect::<Vec<_>>() {
        let mut next = domains.clone();
        next[u] = BitSet::new(h.len());
        next[u].insert(a);
        let mut dead = false;
        for v in g.neighbors(u).iter() {
            if assign[v] == usize::MAX {
                next[v].intersect_with(h.neighbors(a));
                if next[v].is_empty() {
                    dead = true;
                    break;
                }
            }
        }
        if dead {
            continue;
        }
        assign[u] = a;
        match search(g, h, next, assign, start, budget, nodes) {
            Some(true) => return Some(true),
            None => {
                assign[u] = usize::MAX;
                return None;
            }
            Some(false) => {}
        }
        assign[u] = usize::MAX;
    }
    Some(false)
}
