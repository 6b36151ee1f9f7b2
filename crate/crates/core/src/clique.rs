//! Clique enumeration and maximum-clique search on bitset graphs.

use crate::graph::{BitSet, Graph};

/// Visits every clique with at most `max_size` vertices, each exactly once,
/// as an increasing vertex list; the empty clique is skipped.
pub fn for_each_clique<F: FnMut(&[usize])>(g: &Graph, max_size: usize, mut visit: F) {
    let n = g.len();
    let mut stack = Vec::with_capacity(max_size);
    for v in 0..n {
        stack.push(v);
        visit(&stack);
        if max_size > 1 {
            let mut cand = g.neighbors(v).clone();
            for u in 0..=v {
                cand.remove(u);
            }
            extend(g, &mut stack, &cand, max_size, &mut visit);
        }
        stack.pop();
    }
}

fn extend<F: FnMut(&[usize])>(
    g: &Graph,
    stack: &mut Vec<usize>,
    cand: &BitSet,
    max_size: usize,
    visit: &mut F,
) {
    for v in cand.iter() {
        stack.push(v);
        visit(stack);
        if stack.len() < max_size {
            let mut next = cand.intersection(g.neighbors(v));
            for u in cand.iter().take_while(|&u| u <= v) {
                next.remove(u);
            }
            if !next.is_empty() {
                extend(g, stack, &next, max_size, visit);
            }
        }
        stack.pop();
    }
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
///
/// Returns the lexicographically first maximum clique found in the search
/// order, sorted increasingly.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let n = g.len();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(g, &mut current, order, &mut best);
    best.sort_unstable();
    best
}

fn expand(g: &Graph, current: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    let (order, bounds) = color_sort(g, &cand);
    for idx in (0..order.len()).rev() {
        if current.len() + bounds[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        current.push(v);
        let next: Vec<usize> = order[..idx]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(v, u))
            .collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best);
        }
        current.pop();
    }
}

/// Greedy sequential coloring of the candidate list; returns the vertices in
/// color order and, per position, the number of colors used so far.
fn color_sort(g: &Graph, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes
            .iter_mut()
            .find(|c| c.iter().all(|&u| !g.has_edge(u, v)))
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    for (k, c) in classes.into_iter().enumerate() {
        for v in c {
            order.push(v);
            bounds.push(k + 1);
        }
    }
    (order, bounds)
}
