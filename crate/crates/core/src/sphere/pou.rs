use std::collections::BTreeMap;

use crate::complex::bipartition_value;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::scalar::{at_least, Scalar};
use crate::transport::DiscreteMeasure;

/// Image of a two-cluster measure under the partition-of-unity map.
#[derive(Clone, Debug, PartialEq)]
pub struct PouImage<T> {
    /// Measure supported on net points (indices into the ambient space).
    pub measure: DiscreteMeasure<T>,
    /// Net points fed by the first and second input cluster.
    pub clusters: (Vec<usize>, Vec<usize>),
}

/// Pushes `mu` onto the net `net` with hat functions of radius `eps / 2`:
/// `delta_y -> sum_x rho_x(y) delta_x`.
///
/// Requires `mu` to split into clusters at least `r + eps` apart; the image
/// then splits into clusters at least `r` apart.
pub fn pou_map<T: Scalar>(
    space: &FiniteMetricSpace<T>,
    net: &[usize],
    mu: &DiscreteMeasure<T>,
    r: T,
    eps: T,
) -> Result<PouImage<T>> {
    space.check_indices(net)?;
    if mu.support().iter().any(|&i| i >= space.len()) {
        return Err(Error::MetricMismatch("measure support outside the space".into()));
    }
    let radius = eps / T::lit(2.0);
    let hats = |y: usize| -> Result<Vec<(usize, T)>> {
        let g: Vec<(usize, T)> = net
            .iter()
            .map(|&x| (x, radius - space.d(x, y)))
            .filter(|&(_, v)| v > T::zero())
            .collect();
        let total: T = g.iter().map(|p| p.1).sum();
        if g.is_empty() {
            return Err(Error::NotANet { point: y });
        }
        Ok(g.into_iter().map(|(x, v)| (x, v / total)).collect())
    };
    for y in 0..space.len() {
        hats(y)?;
    }
    let support = mu.support();
    let (side_a, side_b): (Vec<usize>, Vec<usize>) = if support.len() == 1 {
        (vec![0], Vec::new())
    } else {
        let split = bipartition_value(space, support);
        if !at_least(split, r + eps) {
            return Err(Error::SpreadTooSmall { spread: split.to_f64_lossy(), required: (r + eps).to_f64_lossy() });
        }
        let sub = space.subspace(support)?;
        let near = crate::complex::near_graph(&sub, r + eps);
        let comps = near.components();
        (comps[0].clone(), comps[1..].iter().flatten().copied().collect())
    };
    let mut mass: BTreeMap<usize, T> = BTreeMap::new();
    let mut feeds = [Vec::new(), Vec::new()];
    for (side, positions) in [&side_a, &side_b].into_iter().enumerate() {
        for &p in positions {
            for (x, w) in hats(support[p])? {
                *mass.entry(x).or_insert_with(T::zero) += mu.weights()[p] * w;
                feeds[side].push(x);
            }
        }
    }
    for f in &mut feeds {
        f.sort_unstable();
        f.dedup();
    }
    for &a in &feeds[0] {
        for &b in &feeds[1] {
            if !at_least(space.d(a, b), r) {
                return Err(Error::BoundViolated("image clusters closer than r".into()));
            }
        }
    }
    let (s, w): (Vec<usize>, Vec<T>) = mass.into_iter().unzip();
    let [a, b] = feeds;
    Ok(PouImage { measure: DiscreteMeasure::new(s, w)?, clusters: (a, b) })
}
