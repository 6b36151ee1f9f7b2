//! Discrete probability measures and exact 1-Wasserstein transport.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::scalar::Scalar;

/// Probability measure on indices of a finite metric space.
///
/// Support indices are sorted and distinct, weights are positive and sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure<T> {
    support: Vec<usize>,
    weights: Vec<T>,
}

/// Checks and cleans a weight vector: non-negative, finite, summing to one.
/// Zero weights are reported by position so callers can drop them.
pub(crate) fn check_weights<T: Scalar>(weights: &[T]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidMeasure("empty support".into()));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < T::zero()) {
        return Err(Error::InvalidMeasure(format!("weight {w} is negative or not finite")));
    }
    let total: T = weights.iter().copied().sum();
    if (total - T::one()).abs() > T::threshold_tol() * T::from_usize_lossy(weights.len().max(1)) {
        return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
    }
    Ok(())
}

impl<T: Scalar> DiscreteMeasure<T> {
    /// Merges repeated indices and drops zero weights.
    pub fn new(support: Vec<usize>, weights: Vec<T>) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::InvalidMeasure("support and weights differ in length".into()));
        }
        check_weights(&weights)?;
        let mut merged: BTreeMap<usize, T> = BTreeMap::new();
        for (i, w) in support.into_iter().zip(weights) {
            *merged.entry(i).or_insert_with(T::zero) += w;
        }
        let (support, weights) = merged.into_iter().filter(|&(_, w)| w > T::weight_tol()).unzip();
        Ok(Self { support, weights })
    }

    pub fn dirac(i: usize) -> Self {
        Self { support: vec![i], weights: vec![T::one()] }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Sparse coupling between two finite supports; entries are `(row, col, mass)`
/// with `row` indexing the source support and `col` the target support.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportPlan<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> TransportPlan<T> {
    /// Plan from a dense matrix, keeping positive entries.
    pub fn from_dense(m: &[Vec<T>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let entries = m
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .filter(|&(_, _, v)| v > T::zero())
            .collect();
        Self { rows, cols, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.cols]; self.rows];
        for &(i, j, v) in &self.entries {
            m[i][j] += v;
        }
        m
    }

    pub fn mass(&self) -> T {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn row_sums(&self) -> Vec<T> {
        let mut s = vec![T::zero(); self.rows];
        for &(i, _, v) in &self.entries {
            s[i] += v;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<T> {
        let mut s = vec![T::zero(); self.cols];
        for &(_, j, v) in &self.entries {
            s[j] += v;
        }
        s
    }
}

/// Exact optimum of a transport problem.
#[derive(Clone, Debug, PartialEq)]
pub struct W1Result<T> {
    pub value: T,
    pub plan: TransportPlan<T>,
}

/// Cost matrix between the supports of `mu` and `nu`.
pub fn cost_matrix<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    space: &FiniteMetricSpace<T>,
) -> Result<Vec<Vec<T>>> {
    for &i in mu.support().iter().chain(nu.support()) {
        if i >= space.len() {
            return Err(Error::MetricMismatch(format!(
                "support index {i} outside a space of {} points",
                space.len()
            )));
        }
    }
    Ok(mu
        .support()
        .iter()
        .map(|&i| nu.support().iter().map(|&j| space.d(i, j)).collect())
        .collect())
}

/// `sum plan[i][j] * cost[i][j]`.
pub fn plan_cost<T: Scalar>(plan: &TransportPlan<T>, cost: &[Vec<T>]) -> T {
    plan.entries.iter().map(|&(i, j, v)| v * cost[i][j]).sum()
}

/// `W_1(mu, nu)` on a finite metric space. The problem is always solved in a
/// canonical orientation so that the value is exactly symmetric.
pub fn w1_distance<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    space: &FiniteMetricSpace<T>,
) -> Result<W1Result<T>> {
    let key = |m: &DiscreteMeasure<T>| -> Vec<(usize, u64)> {
        m.support().iter().zip(m.weights()).map(|(&i, w)| (i, w.to_f64_lossy().to_bits())).collect()
    };
    if key(mu) > key(nu) {
        return Ok(transposed(w1_distance(nu, mu, space)?));
    }
    let cost = cost_matrix(mu, nu, space)?;
    solve_transport(mu.weights(), nu.weights(), &cost)
}

/// Swaps the roles of source and target.
pub(crate) fn transposed<T: Scalar>(r: W1Result<T>) -> W1Result<T> {
    let mut entries: Vec<(usize, usize, T)> = r.plan.entries.iter().map(|&(i, j, v)| (j, i, v)).collect();
    entries.sort_by_key(|e| (e.0, e.1));
    W1Result { value: r.value, plan: TransportPlan { rows: r.plan.cols, cols: r.plan.rows, entries } }
}

struct Arc<T> {
    to: usize,
    cap: T,
    cost: T,
}

/// Exact transport between weight vectors `a` and `b` under `cost`, by
/// successive shortest augmenting paths.
pub fn solve_transport<T: Scalar>(a: &[T], b: &[T], cost: &[Vec<T>]) -> Result<W1Result<T>> {
    let (m, n) = (a.len(), b.len());
    if cost.len() != m || cost.iter().any(|r| r.len() != n) {
        return Err(Error::MetricMismatch("cost matrix shape does not match the supports".into()));
    }
    let src = m + n;
    let sink = src + 1;
    let nodes = sink + 1;
    let mut arcs: Vec<Arc<T>> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut add = |arcs: &mut Vec<Arc<T>>, u: usize, v: usize, cap: T, c: T| {
        out[u].push(arcs.len());
        arcs.push(Arc { to: v, cap, cost: c });
        out[v].push(arcs.len());
        arcs.push(Arc { to: u, cap: T::zero(), cost: -c });
    };
    for (i, &w) in a.iter().enumerate() {
        add(&mut arcs, src, i, w, T::zero());
    }
    let mut cell = vec![vec![0usize; n]; m];
    for i in 0..m {
        for j in 0..n {
            cell[i][j] = arcs.len();
            add(&mut arcs, i, m + j, T::infinity(), cost[i][j]);
        }
    }
    for (j, &w) in b.iter().enumerate() {
        add(&mut arcs, m + j, sink, w, T::zero());
    }

    let eps = T::epsilon() * T::lit(16.0);
    let target = a.iter().copied().sum::<T>().min(b.iter().copied().sum());
    let mut flow = T::zero();
    let max_rounds = 4 * (m + n + 2) * (m * n + 2);
    for _ in 0..max_rounds {
        if flow >= target - eps {
            break;
        }
        let mut dist = vec![T::infinity(); nodes];
        let mut via: Vec<Option<usize>> = vec![None; nodes];
        dist[src] = T::zero();
        for _ in 0..nodes {
            let mut changed = false;
            for u in 0..nodes {
                if dist[u] == T::infinity() {
                    continue;
                }
                for &e in &out[u] {
                    let arc = &arcs[e];
                    if arc.cap > eps && dist[u] + arc.cost < dist[arc.to] - eps {
                        dist[arc.to] = dist[u] + arc.cost;
                        via[arc.to] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if via[sink].is_none() {
            break;
        }
        let mut push = target - flow;
        let mut v = sink;
        while let Some(e) = via[v] {
            push = push.min(arcs[e].cap);
            v = arcs[e ^ 1].to;
        }
        let mut v = sink;
        while let Some(e) = via[v] {
            arcs[e].cap -= push;
            arcs[e ^ 1].cap += push;
            v = arcs[e ^ 1].to;
        }
        flow += push;
    }
    if flow < target - T::threshold_tol() {
        return Err(Error::FlowDidNotConverge);
    }
    let mut entries = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let v = arcs[cell[i][j] ^ 1].cap;
            if v > eps {
                entries.push((i, j, v));
            }
        }
    }
    let plan = TransportPlan { rows: m, cols: n, entries };
    Ok(W1Result { value: plan_cost(&plan, cost), plan })
}

/// Completes a partial plan to a coupling of `a` and `b` by adding the
/// normalized product of the marginal deficits.
pub fn extend_partial_plan<T: Scalar>(plan: &TransportPlan<T>, a: &[T], b: &[T]) -> Result<TransportPlan<T>> {
    if plan.rows != a.len() || plan.cols != b.len() {
        return Err(Error::MetricMismatch("plan shape does not match the marginals".into()));
    }
    if plan.entries.iter().any(|e| e.2 < T::zero()) {
        return Err(Error::InvalidMeasure("plan has negative entries".into()));
    }
    let tol = T::threshold_tol();
    let residual = |sums: Vec<T>, target: &[T], side: &'static str| -> Result<Vec<T>> {
        sums.iter()
            .zip(target)
            .enumerate()
            .map(|(index, (&s, &t))| {
                if s > t + tol {
                    Err(Error::NotPartialPlan { side, index })
                } else {
                    Ok((t - s).max(T::zero()))
                }
            })
            .collect()
    };
    let ra = residual(plan.row_sums(), a, "source")?;
    let rb = residual(plan.col_sums(), b, "target")?;
    let deficit = T::one() - plan.mass();
    let mut dense = plan.to_dense();
    if deficit > T::weight_tol() {
        for (i, &x) in ra.iter().enumerate() {
            for (j, &y) in rb.iter().enumerate() {
                dense[i][j] += x * y / deficit;
            }
        }
    }
    Ok(TransportPlan::from_dense(&dense))
}

/// Upper bound `cost(plan) + (1 - mass) * diam` on the cost of the extension.
pub fn extension_cost_bound<T: Scalar>(plan: &TransportPlan<T>, cost: &[Vec<T>], diam: T) -> T {
    plan_cost(plan, cost) + (T::one() - plan.mass()) * diam
}
