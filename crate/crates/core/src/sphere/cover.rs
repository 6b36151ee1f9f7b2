use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::check_far_scale;

/// Circular distance between angles.
fn circ<T: Scalar>(a: T, b: T) -> T {
    let tau = T::TAU();
    let d = (a - b).abs() % tau;
    d.min(tau - d)
}

/// Open arcs `(c_j - w, c_j + w)` with equally spaced centers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcCover<T> {
    pub centers: Vec<T>,
    pub half_width: T,
}

impl<T: Scalar> ArcCover<T> {
    /// Fewest equally spaced arcs of half-width `3/4` of the spacing whose
    /// diameters stay below `max_diam`; every point lies in one or two arcs.
    pub fn with_max_diameter(max_diam: T) -> Self {
        let tau = T::TAU();
        let mut m = 3usize;
        while T::lit(1.5) * tau / T::from_usize_lossy(m) >= max_diam {
            m += 1;
        }
        let spacing = tau / T::from_usize_lossy(m);
        Self {
            centers: (0..m).map(|j| spacing * T::from_usize_lossy(j)).collect(),
            half_width: T::lit(0.75) * spacing,
        }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Hat partition of unity at angle `theta`, as `(arc, weight)` pairs.
    pub fn partition(&self, theta: T) -> Vec<(usize, T)> {
        let g: Vec<(usize, T)> = self
            .centers
            .iter()
            .enumerate()
            .map(|(j, &c)| (j, self.half_width - circ(theta, c)))
            .filter(|&(_, v)| v > T::zero())
            .collect();
        let total: T = g.iter().map(|p| p.1).sum();
        g.into_iter().map(|(j, v)| (j, v / total)).collect()
    }

    /// Arcs containing `theta`.
    pub fn arcs_at(&self, theta: T) -> Vec<usize> {
        self.partition(theta).into_iter().map(|p| p.0).collect()
    }
}

/// Parameters of the covering-dimension experiment on `S^1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverDimConfig<T> {
    pub r: T,
    pub eps: T,
    /// Base angles of the test grid.
    pub angle_steps: usize,
    /// Separations in `[r, pi]`.
    pub gap_steps: usize,
    /// Weight splits in `(0, 1)`.
    pub weight_steps: usize,
    /// Resolution of the subdivision defining the cover of the nerve.
    pub subdivision: Option<usize>,
}

impl<T: Scalar> CoverDimConfig<T> {
    pub fn new(r: T, eps: T) -> Self {
        Self { r, eps, angle_steps: 25, gap_steps: 20, weight_steps: 20, subdivision: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverDimReport {
    pub r: f64,
    pub eps: f64,
    pub packing_number: usize,
    pub arcs: usize,
    pub arc_diameter: f64,
    pub arc_multiplicity: usize,
    /// Dimension of the complex of co-chargeable arc sets.
    pub nerve_dim: usize,
    pub nerve_f_vector: Vec<usize>,
    pub subdivision: usize,
    /// Upper bound on the `l1` diameter of the pulled-back cover sets' images.
    pub star_diameter_bound: f64,
    pub test_measures: usize,
    pub max_multiplicity: usize,
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    pub multiplicity_bound: usize,
    /// Test measures whose image left the nerve or lost mass.
    pub failures: usize,
}

/// Open-star vertices of the Freudenthal subdivision of resolution `q` that
/// contain the point with barycentric coordinates `w` (sorted by vertex).
fn star_vertices<T: Scalar>(w: &[(usize, T)], q: usize) -> Vec<Vec<(usize, u32)>> {
    let d = w.len() - 1;
    let qf = T::from_usize_lossy(q);
    let mut y = vec![T::zero(); d + 1];
    let mut acc = T::zero();
    for i in (1..=d).rev() {
        acc += w[i].1;
        y[i] = qf * acc;
    }
    let base: Vec<i64> = y.iter().map(|v| v.floor().to_i64().unwrap_or(0)).collect();
    let frac: Vec<T> = y.iter().zip(&base).map(|(&v, &b)| v - T::from_i64(b).unwrap_or(T::zero())).collect();
    let mut order: Vec<usize> = (1..=d).collect();
    order.sort_by(|&a, &b| frac[b].partial_cmp(&frac[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut prev = T::one();
    for &i in &order {
        coeffs.push(prev - frac[i]);
        prev = frac[i];
    }
    coeffs.push(prev);
    let mut yk = base.clone();
    yk[0] = q as i64;
    let mut out = Vec::new();
    let tiny = T::weight_tol();
    for (k, &c) in coeffs.iter().enumerate() {
        if k > 0 {
            yk[order[k - 1]] += 1;
        }
        if c > tiny {
            let mut z = Vec::new();
            for i in 0..=d {
                let next = if i < d { yk[i + 1] } else { 0 };
                let zi = yk[i] - next;
                if zi != 0 {
                    z.push((w[i].0, zi as u32));
                }
            }
            out.push(z);
        }
    }
    out
}

/// Open arcs `(lo, hi)` on the circle as `(center, half_length)`.
#[derive(Clone, Copy)]
struct Region<T> {
    center: T,
    half: T,
}

/// Whether some `a` in `p` and `b` in `q` have `d(a, b) >= r`.
fn regions_feasible<T: Scalar>(p: Region<T>, q: Region<T>, r: T) -> bool {
    let gap = circ(p.center, q.center);
    let antipodal = T::PI() - gap < p.half + q.half;
    antipodal || gap + p.half + q.half > r
}

/// Runs the covering-dimension experiment for `AVR^m(S^1; r)` with
/// `2 pi / 3 < r < pi`: arc cover, nerve of co-chargeable arcs, the map into
/// the nerve and the multiplicity of the pulled-back subdivision cover.
pub fn cover_dim_experiment<T: Scalar>(cfg: &CoverDimConfig<T>) -> Result<CoverDimReport> {
    let (r, eps) = (cfg.r, cfg.eps);
    check_far_scale(r)?;
    if !(eps > T::zero() && eps < r) {
        return Err(Error::InvalidParameter("eps must lie in (0, r)".into()));
    }
    let p = 2usize;
    let cover = ArcCover::with_max_diameter(eps / T::lit(2.0));
    let m = cover.len();
    let spacing = T::TAU() / T::from_usize_lossy(m);
    let w = cover.half_width;

    let mut regions: Vec<(Region<T>, Vec<usize>)> = Vec::new();
    for j in 0..m {
        regions.push((Region { center: cover.centers[j], half: w }, vec![j]));
        let k = (j + 1) % m;
        let mut pair = vec![j, k];
        pair.sort_unstable();
        regions.push((Region { center: cover.centers[j] + spacing / T::lit(2.0), half: w - spacing / T::lit(2.0) }, pair));
    }
    let mut maximal: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (a, (ra, sa)) in regions.iter().enumerate() {
        maximal.insert(sa.clone());
        for (rb, sb) in &regions[a + 1..] {
            if regions_feasible(*ra, *rb, r) {
                let mut s: Vec<usize> = sa.iter().chain(sb).copied().collect();
                s.sort_unstable();
                s.dedup();
                maximal.insert(s);
            }
        }
    }
    let nerve_dim = maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0);
    let nerve = crate::complex::FilteredComplex::<T>::from_maximal_simplices(m, nerve_dim + 1, &maximal.iter().cloned().collect::<Vec<_>>())?;

    let eps_prime = eps / (T::lit(2.0) * T::PI());
    let q = cfg.subdivision.unwrap_or_else(|| {
        let den = (T::lit(2.0) * T::from_usize_lossy(nerve_dim + 1) / eps_prime).ceil();
        den.to_usize().unwrap_or(1) + 1
    });

    let mut measures: Vec<Vec<(T, T)>> = Vec::new();
    let step = T::TAU() / T::from_usize_lossy(cfg.angle_steps.max(1));
    for a in 0..cfg.angle_steps {
        let base = step * T::from_usize_lossy(a) + T::lit(1e-3);
        measures.push(vec![(base, T::one())]);
        for g in 0..cfg.gap_steps {
            let frac = if cfg.gap_steps > 1 {
                T::from_usize_lossy(g) / T::from_usize_lossy(cfg.gap_steps - 1)
            } else {
                T::zero()
            };
            let gap = r + (T::PI() - r) * frac;
            for l in 0..cfg.weight_steps {
                let lam = (T::from_usize_lossy(l) + T::lit(0.5)) / T::from_usize_lossy(cfg.weight_steps);
                measures.push(vec![(base, lam), (base + gap, T::one() - lam)]);
            }
        }
    }

    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut failures = 0;
    let mut arc_multiplicity = 0;
    for mu in &measures {
        let mut h: BTreeMap<usize, T> = BTreeMap::new();
        for &(theta, weight) in mu {
            let part = cover.partition(theta);
            arc_multiplicity = arc_multiplicity.max(part.len());
            for (j, v) in part {
                *h.entry(j).or_insert_with(T::zero) += weight * v;
            }
        }
        let coords: Vec<(usize, T)> = h.into_iter().filter(|p| p.1 > T::zero()).collect();
        let total: T = coords.iter().map(|p| p.1).sum();
        let face: Vec<usize> = coords.iter().map(|p| p.0).collect();
        if (total - T::one()).abs() > T::loose_tol() || nerve.index_of(&face).is_none() {
            failures += 1;
            continue;
        }
        let mult = star_vertices(&coords, q).len();
        *hist.entry(mult).or_insert(0) += 1;
    }
    Ok(CoverDimReport {
        r: r.to_f64_lossy(),
        eps: eps.to_f64_lossy(),
        packing_number: p,
        arcs: m,
        arc_diameter: (T::lit(2.0) * w).to_f64_lossy(),
        arc_multiplicity,
        nerve_dim,
        nerve_f_vector: nerve.f_vector(),
        subdivision: q,
        star_diameter_bound: 2.0 * (nerve_dim + 1) as f64 / q as f64,
        test_measures: measures.len(),
        max_multiplicity: hist.keys().copied().max().unwrap_or(0),
        multiplicity_histogram: hist,
        multiplicity_bound: 2 * p,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_cover_shape() {
        let c = ArcCover::<f64>::with_max_diameter(0.15);
        assert!(2.0 * c.half_width < 0.15);
        for k in 0..5000 {
            let t = k as f64 * std::f64::consts::TAU / 5000.0;
            let part = c.partition(t);
            assert!((1..=2).contains(&part.len()));
            assert!((part.iter().map(|p| p.1).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn freudenthal_star_of_vertex_and_barycenter() {
        assert_eq!(star_vertices(&[(4, 1.0f64)], 10), vec![vec![(4, 10)]]);
        let third = 1.0f64 / 3.0;
        let stars = star_vertices(&[(0, third), (1, third), (2, third)], 3);
        assert_eq!(stars, vec![vec![(0, 1), (1, 1), (2, 1)]]);
        let generic = star_vertices(&[(0, 0.5), (2, 0.3), (5, 0.2)], 7);
        assert_eq!(generic.len(), 3);
        for z in generic {
            assert_eq!(z.iter().map(|p| p.1).sum::<u32>(), 7);
        }
    }

    #[test]
    fn small_experiment_respects_bounds() {
        let cfg = CoverDimConfig { angle_steps: 6, gap_steps: 4, weight_steps: 4, ..CoverDimConfig::new(2.5f64, 0.3) };
        let rep = cover_dim_experiment(&cfg).unwrap();
        assert_eq!(rep.failures, 0);
        assert!(rep.nerve_dim <= 3);
        assert!(rep.max_multiplicity <= 4);
        assert_eq!(rep.arc_multiplicity, 2);
    }
}
