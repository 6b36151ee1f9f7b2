//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use antirips::graph::Graph;
use antirips::metric::{sample_sphere, FiniteMetricSpace, SamplingMethod};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-12;

pub fn far(d: f64, r: f64) -> bool {
    d >= r - TOL
}

/// Random metric spaces of a few flavours: Euclidean clouds, sphere samples
/// and graph metrics, at most `max_n` points.
pub fn random_space(rng: &mut ChaCha8Rng, max_n: usize) -> FiniteMetricSpace<f64> {
    let n = rng.gen_range(2..=max_n);
    match rng.gen_range(0..4) {
        0 => {
            let d = rng.gen_range(1..=3);
            let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            FiniteMetricSpace::from_euclidean_points(&pts).unwrap()
        }
        1 => sample_sphere(rng.gen_range(1..=3), n, SamplingMethod::UniformRandom, rng.gen()).unwrap(),
        2 => sample_sphere(1, n, SamplingMethod::Evenly, 0).unwrap(),
        _ => antirips::metric::graph_metric(&random_connected_graph(rng, n)).unwrap(),
    }
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = order[rng.gen_range(0..i)];
        g.add_edge(order[i], j).unwrap();
    }
    let p = rng.gen_range(0.0..0.5);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A scale drawn from the pairwise distances: an exact distance or a midpoint.
pub fn random_scale(rng: &mut ChaCha8Rng, space: &FiniteMetricSpace<f64>) -> f64 {
    let mut ds: Vec<f64> = (0..space.len())
        .flat_map(|i| (i + 1..space.len()).map(move |j| (i, j)))
        .map(|(i, j)| space.d(i, j))
        .filter(|&d| d > 0.0)
        .collect();
    ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ds.dedup();
    if ds.is_empty() {
        return 1.0;
    }
    let k = rng.gen_range(0..ds.len());
    match rng.gen_range(0..3) {
        0 => ds[k],
        1 if k + 1 < ds.len() => 0.5 * (ds[k] + ds[k + 1]),
        _ => ds[k] * rng.gen_range(0.5..1.2),
    }
}

/// All subsets (as sorted lists, size at most `cap + 1`) satisfying `pred`.
pub fn subsets_where<F: Fn(&[usize]) -> bool>(n: usize, cap: usize, pred: F) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > cap + 1 {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if pred(&s) {
            out.insert(s);
        }
    }
    out
}

/// All pairs of `s` are at distance `>= r`.
pub fn pairwise_far(space: &FiniteMetricSpace<f64>, s: &[usize], r: f64) -> bool {
    s.iter().enumerate().all(|(a, &i)| s[a + 1..].iter().all(|&j| far(space.d(i, j), r)))
}

/// Largest subset of `space` with all pairs `>= r`, by exhaustive search.
pub fn exhaustive_packing(space: &FiniteMetricSpace<f64>, r: f64) -> usize {
    let n = space.len();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if pairwise_far(space, &s, r) {
            best = size;
        }
    }
    best
}

/// Smallest `k <= max_k` admitting a proper coloring, by enumerating all
/// `k^n` assignments.
pub fn brute_force_chromatic(g: &Graph, max_k: usize) -> Option<usize> {
    let n = g.len();
    let edges = g.edges();
    (1..=max_k).find(|&k| {
        let mut colors = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    })
}

/// Minimum transport cost by enumerating basic feasible solutions: spanning
/// trees of the complete bipartite support graph, solved by leaf peeling.
pub fn transport_by_vertex_enumeration(a: &[f64], b: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (a.len(), b.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let total = cells.len();
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..total).filter(|&c| mask >> c & 1 == 1).map(|c| cells[c]).collect();
        if let Some(flow) = tree_flow(a, b, &chosen) {
            if flow.iter().all(|&f| f >= -1e-14) {
                let c: f64 = chosen.iter().zip(&flow).map(|(&(i, j), &f)| f * cost[i][j]).sum();
                best = best.min(c);
            }
        }
    }
    best
}

fn tree_flow(a: &[f64], b: &[f64], edges: &[(usize, usize)]) -> Option<Vec<f64>> {
    let (m, n) = (a.len(), b.len());
    let mut ra = a.to_vec();
    let mut rb = b.to_vec();
    let mut flow = vec![f64::NAN; edges.len()];
    let mut alive = vec![true; edges.len()];
    for _ in 0..edges.len() {
        let mut deg = vec![0usize; m + n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            if alive[e] {
                deg[i] += 1;
                deg[m + j] += 1;
            }
        }
        let (e, leaf_row) = edges.iter().enumerate().filter(|&(e, _)| alive[e]).find_map(|(e, &(i, j))| {
            if deg[i] == 1 {
                Some((e, true))
            } else if deg[m + j] == 1 {
                Some((e, false))
            } else {
                None
            }
        })?;
        let (i, j) = edges[e];
        let f = if leaf_row { ra[i] } else { rb[j] };
        flow[e] = f;
        ra[i] -= f;
        rb[j] -= f;
        alive[e] = false;
    }
    Some(flow)
}

/// Random probability vector of length `k`.
pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / s).collect();
    let head: f64 = w[..k - 1].iter().sum();
    w[k - 1] = 1.0 - head;
    w
}

/// Uniform random unit vector in `R^dim`.
pub fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Unit vector at geodesic distance `theta` from `x`, in a random direction.
pub fn point_at_distance(rng: &mut ChaCha8Rng, x: &[f64], theta: f64) -> Vec<f64> {
    let e = loop {
        let v = random_unit(rng, x.len());
        let c: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
        let r: Vec<f64> = v.iter().zip(x).map(|(a, b)| a - c * b).collect();
        let n = r.iter().map(|t| t * t).sum::<f64>().sqrt();
        if n > 1e-3 {
            break r.iter().map(|t| t / n).collect::<Vec<f64>>();
        }
    };
    x.iter().zip(&e).map(|(a, b)| a * theta.cos() + b * theta.sin()).collect()
}
